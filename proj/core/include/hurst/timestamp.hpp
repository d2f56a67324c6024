#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hurst {

/// A GMT instant at one-second resolution, counted from 1970-01-01T00:00:00Z.
struct Instant {
    std::int64_t seconds = 0;

    friend constexpr auto operator<=>(Instant, Instant) = default;
};

inline constexpr std::int64_t kSecondsPerDay = 86'400;
inline constexpr std::int64_t kSecondsPerHour = 3'600;

/// Accepts "YYYY-MM-DDTHH:MM:SS" with an optional trailing "Z"; a space may
/// replace the "T".
std::optional<Instant> parse_iso8601(std::string_view text);

/// Accepts "D:HH:MM:SS" where D is a non-negative day offset from `origin`.
std::optional<Instant> parse_day_offset(std::string_view text, Instant origin);

/// Parses a bare "YYYY-MM-DD" date as midnight GMT.
std::optional<Instant> parse_date(std::string_view text);

std::string format_iso8601(Instant t);
std::string format_day_offset(Instant t, Instant origin);

/// Seconds since midnight GMT divided by 86400, in [0, 1).
double to_day_fraction(Instant t) noexcept;

/// Hour of day, 0..23.
int hour_of(Instant t) noexcept;

/// ISO weekday, 1 = Monday .. 7 = Sunday.
int weekday_of(Instant t) noexcept;

/// Days since the epoch (floor), for calendar-day grouping.
std::int64_t day_number(Instant t) noexcept;

}  // namespace hurst
