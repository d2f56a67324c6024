#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hurst/timestamp.hpp"

namespace hurst {

/// One time-stamped dealer quote. Exactly one of `price` or (`bid`, `ask`)
/// is populated; `mid` is always set.
struct QuoteTick {
    Instant timestamp;
    std::optional<double> bid;
    std::optional<double> ask;
    std::optional<double> price;
    double mid = 0.0;
    double day_fraction = 0.0;
    int weekday = 1;  // 1 = Monday .. 7 = Sunday
    int hour = 0;

    friend bool operator==(const QuoteTick&, const QuoteTick&) = default;
};

/// Builds a tick from a single price, deriving the calendar fields.
QuoteTick make_tick(Instant t, double price);
/// Builds a tick from a bid/ask pair; mid is their arithmetic mean.
QuoteTick make_tick(Instant t, double bid, double ask);

enum class TimestampLayout { Iso8601, DayOffset };

/// How simultaneous (same-second) quotes are resolved.
enum class TiePolicy {
    KeepOrder,     // keep file order; the zero gap is flagged downstream
    DropLater,     // keep only the first quote of each same-second run
    AveragePrice,  // merge the run into one tick with averaged prices
};

struct FormatConfig {
    char delimiter = ',';
    std::string timestamp_column = "timestamp";
    TimestampLayout layout = TimestampLayout::Iso8601;
    /// Day zero for the "D:HH:MM:SS" layout.
    Instant day_offset_origin{};
    /// Set for single-price files; otherwise bid/ask columns are used.
    std::optional<std::string> price_column;
    std::string bid_column = "bid";
    std::string ask_column = "ask";
    /// Rows with ask < bid - spread_tolerance are rejected.
    double spread_tolerance = 0.0;
    TiePolicy tie_policy = TiePolicy::KeepOrder;
    /// ISO weekdays (1..7) to drop entirely; empty keeps everything.
    std::set<int> excluded_weekdays;
};

/// Immutable, chronologically ordered quotes.
class QuoteSeries {
public:
    QuoteSeries() = default;
    /// Throws if timestamps decrease.
    QuoteSeries(std::vector<QuoteTick> ticks, std::string source_label);

    const std::vector<QuoteTick>& ticks() const noexcept { return ticks_; }
    std::size_t size() const noexcept { return ticks_.size(); }
    bool empty() const noexcept { return ticks_.empty(); }
    const QuoteTick& operator[](std::size_t i) const { return ticks_[i]; }
    const std::string& source_label() const noexcept { return source_label_; }
    Instant first() const;
    Instant last() const;

private:
    std::vector<QuoteTick> ticks_;
    std::string source_label_;
};

struct RejectedRow {
    std::size_t line = 0;  // 1-based, header is line 1
    std::string raw;
    std::string reason;
};

struct IngestResult {
    QuoteSeries series;
    std::vector<RejectedRow> rejects;
    std::size_t tie_runs_resolved = 0;
    std::size_t excluded_by_weekday = 0;
};

IngestResult parse_quote_stream(std::istream& in, const FormatConfig& config,
                                std::string source_label = "stream");
IngestResult parse_quote_file(const std::string& path, const FormatConfig& config);

/// Formats one tick as a data row in the column order the config expects
/// (timestamp, then price or bid, ask).
std::string format_tick_row(const QuoteTick& tick, const FormatConfig& config);
std::string format_header(const FormatConfig& config);

struct QuoteGap {
    double seconds = 0.0;
    int hour = 0;     // hour of the later quote
    int weekday = 1;  // weekday of the later quote
    bool zero = false;
};

/// Length size()-1; each gap attributed to the later quote.
std::vector<QuoteGap> inter_quote_gaps(const QuoteSeries& series);

struct ArrivalStats {
    int hour = 0;
    std::int64_t count = 0;      // quotes landing in this hour
    std::int64_t gap_count = 0;  // gaps attributed to this hour
    std::optional<double> mean_gap_minutes;
    /// Sample std of gaps over their mean; empty when gap_count < 2 or mean is 0.
    std::optional<double> cv_gap;
};

struct Crosstab {
    /// counts[hour][weekday - 1]
    std::array<std::array<std::int64_t, 7>, 24> counts{};
    std::array<ArrivalStats, 24> arrival{};
    std::int64_t total = 0;

    std::int64_t hour_total(int hour) const;
    std::int64_t weekday_total(int weekday) const;
};

Crosstab crosstab_by_hour_weekday(const QuoteSeries& series);

}  // namespace hurst
