"""Builds a 29,576-row bid/ask quote fixture shaped like the reference
hour x weekday cross-tabulation (5 May 2000 - 15 June 2000), then tallies it
independently with a csv/datetime group-by.

Writes tests/data/table1_quotes.csv and tests/data/table1_tallies.json.
"""
import csv
import datetime as dt
import json
import random
from collections import Counter
from pathlib import Path

# hour -> (Mon, Tue, Wed, Thu, Fri, Sun)
TABLE = [
    (187, 229, 190, 160, 75, 0), (246, 177, 228, 190, 72, 40), (178, 121, 161, 140, 95, 12),
    (157, 64, 79, 52, 38, 0), (158, 129, 136, 85, 61, 0), (176, 198, 212, 174, 98, 0),
    (344, 441, 484, 423, 288, 0), (356, 441, 442, 333, 264, 0), (335, 340, 357, 331, 263, 0),
    (273, 365, 292, 232, 244, 0), (253, 373, 339, 232, 222, 0), (257, 419, 398, 345, 327, 0),
    (393, 566, 572, 474, 481, 0), (389, 547, 549, 458, 437, 0), (420, 483, 522, 593, 1117, 0),
    (354, 445, 469, 304, 461, 0), (323, 359, 286, 249, 290, 0), (176, 212, 225, 143, 199, 0),
    (87, 127, 115, 72, 109, 0), (74, 74, 61, 44, 37, 20), (40, 42, 55, 33, 22, 25),
    (72, 84, 73, 34, 3, 64), (118, 118, 108, 73, 0, 74), (195, 314, 141, 128, 0, 113),
]
ISO_DAYS = (1, 2, 3, 4, 5, 7)
FIRST = dt.datetime(2000, 5, 5, 9, 49, 11)
LAST = dt.datetime(2000, 6, 15, 0, 56, 6)


def main():
    root = Path(__file__).resolve().parents[1] / "data"
    root.mkdir(exist_ok=True)
    rng = random.Random(20000505)
    days = [FIRST.date() + dt.timedelta(days=i) for i in range((LAST.date() - FIRST.date()).days + 1)]

    stamps = [FIRST, LAST]
    for hour, row in enumerate(TABLE):
        for iso, count in zip(ISO_DAYS, row):
            if (hour, iso) == (9, 5) or (hour, iso) == (0, 4):
                count -= 1  # endpoints already placed
            # Keep inner quotes strictly inside the sample span.
            pool = [d for d in days if d.isoweekday() == iso and d not in (FIRST.date(), LAST.date())]
            for _ in range(count):
                d = rng.choice(pool)
                stamps.append(dt.datetime(d.year, d.month, d.day, hour, rng.randrange(60), rng.randrange(60)))
    stamps.sort()

    mid = 0.5812
    with open(root / "table1_quotes.csv", "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["timestamp", "bid", "ask"])
        for t in stamps:
            mid *= 1.0 + rng.gauss(0.0, 2e-4)
            out.writerow([t.strftime("%Y-%m-%dT%H:%M:%SZ"), f"{mid - 0.00025:.5f}", f"{mid + 0.00025:.5f}"])

    # Independent tally straight from the written file.
    cells, weekdays, dates, rows = Counter(), Counter(), set(), 0
    with open(root / "table1_quotes.csv") as fh:
        for rec in csv.DictReader(fh):
            t = dt.datetime.strptime(rec["timestamp"], "%Y-%m-%dT%H:%M:%SZ")
            rows += 1
            cells[(t.hour, t.isoweekday())] += 1
            weekdays[t.isoweekday()] += 1
            dates.add(t.date())
    tallies = {
        "rows": rows,
        "calendar_days": len(dates),
        "weekday_totals": {str(k): weekdays[k] for k in range(1, 8)},
        "hour_totals": [sum(cells[(h, d)] for d in range(1, 8)) for h in range(24)],
        "first": FIRST.strftime("%Y-%m-%dT%H:%M:%SZ"),
        "last": LAST.strftime("%Y-%m-%dT%H:%M:%SZ"),
    }
    (root / "table1_tallies.json").write_text(json.dumps(tallies, indent=2) + "\n")
    print(json.dumps(tallies))


if __name__ == "__main__":
    main()
