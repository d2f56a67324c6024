#include "hurst/timestamp.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace hurst {
namespace {

bool parse_uint(std::string_view text, int& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size() && out >= 0;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t seconds_of_day(Instant t) noexcept {
    return t.seconds - floor_div(t.seconds, kSecondsPerDay) * kSecondsPerDay;
}

std::optional<std::int64_t> parse_clock(std::string_view text) {
    // HH:MM:SS
    if (text.size() != 8 || text[2] != ':' || text[5] != ':') return std::nullopt;
    int h = 0, m = 0, s = 0;
    if (!parse_uint(text.substr(0, 2), h) || !parse_uint(text.substr(3, 2), m) ||
        !parse_uint(text.substr(6, 2), s))
        return std::nullopt;
    if (h > 23 || m > 59 || s > 59) return std::nullopt;
    return h * kSecondsPerHour + m * 60 + s;
}

}  // namespace

std::optional<Instant> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, mo = 0, d = 0;
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), mo) ||
        !parse_uint(text.substr(8, 2), d))
        return std::nullopt;
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    const sys_days days{ymd};
    return Instant{static_cast<std::int64_t>(days.time_since_epoch().count()) * kSecondsPerDay};
}

std::optional<Instant> parse_iso8601(std::string_view text) {
    if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) text.remove_suffix(1);
    if (text.size() != 19 || (text[10] != 'T' && text[10] != ' ')) return std::nullopt;
    const auto date = parse_date(text.substr(0, 10));
    const auto clock = parse_clock(text.substr(11));
    if (!date || !clock) return std::nullopt;
    return Instant{date->seconds + *clock};
}

std::optional<Instant> parse_day_offset(std::string_view text, Instant origin) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    int days = 0;
    if (!parse_uint(text.substr(0, colon), days)) return std::nullopt;
    const auto clock = parse_clock(text.substr(colon + 1));
    if (!clock) return std::nullopt;
    return Instant{origin.seconds + days * kSecondsPerDay + *clock};
}

std::string format_iso8601(Instant t) {
    using namespace std::chrono;
    const std::int64_t days = floor_div(t.seconds, kSecondsPerDay);
    const std::int64_t sod = t.seconds - days * kSecondsPerDay;
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long long>(sod / 3600), static_cast<long long>((sod / 60) % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

std::string format_day_offset(Instant t, Instant origin) {
    const std::int64_t delta = t.seconds - origin.seconds;
    const std::int64_t days = floor_div(delta, kSecondsPerDay);
    const std::int64_t sod = delta - days * kSecondsPerDay;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%lld:%02lld:%02lld:%02lld", static_cast<long long>(days),
                  static_cast<long long>(sod / 3600), static_cast<long long>((sod / 60) % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

double to_day_fraction(Instant t) noexcept {
    return static_cast<double>(seconds_of_day(t)) / static_cast<double>(kSecondsPerDay);
}

int hour_of(Instant t) noexcept { return static_cast<int>(seconds_of_day(t) / kSecondsPerHour); }

int weekday_of(Instant t) noexcept {
    using namespace std::chrono;
    const sys_days d{days{day_number(t)}};
    return static_cast<int>(weekday{d}.iso_encoding());
}

std::int64_t day_number(Instant t) noexcept { return floor_div(t.seconds, kSecondsPerDay); }

}  // namespace hurst
