#include "hurst/quote_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <span>
#include <string_view>

#include "hurst/error.hpp"

namespace hurst {
namespace {

constexpr const char* kModule = "quote_ingest";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void fill_calendar(QuoteTick& tick) {
    tick.day_fraction = to_day_fraction(tick.timestamp);
    tick.hour = hour_of(tick.timestamp);
    tick.weekday = weekday_of(tick.timestamp);
}

std::size_t column_index(const std::vector<std::string_view>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), std::string_view(name));
    if (it == header.end()) throw_data(kModule, "missing column '" + name + "' in header");
    return static_cast<std::size_t>(it - header.begin());
}

QuoteTick average_run(std::span<const QuoteTick> run) {
    const auto avg = [&](auto member) {
        double sum = 0.0;
        for (const auto& t : run) sum += *(t.*member);
        return sum / static_cast<double>(run.size());
    };
    const QuoteTick& head = run.front();
    if (head.price) return make_tick(head.timestamp, avg(&QuoteTick::price));
    return make_tick(head.timestamp, avg(&QuoteTick::bid), avg(&QuoteTick::ask));
}

std::vector<QuoteTick> resolve_ties(std::vector<QuoteTick> ticks, TiePolicy policy, std::size_t& runs) {
    runs = 0;
    if (policy == TiePolicy::KeepOrder) {
        for (std::size_t i = 1; i < ticks.size(); ++i)
            if (ticks[i].timestamp == ticks[i - 1].timestamp) ++runs;
        return ticks;
    }
    std::vector<QuoteTick> out;
    out.reserve(ticks.size());
    std::size_t i = 0;
    while (i < ticks.size()) {
        std::size_t j = i + 1;
        while (j < ticks.size() && ticks[j].timestamp == ticks[i].timestamp) ++j;
        if (j - i > 1) ++runs;
        if (policy == TiePolicy::DropLater || j - i == 1) {
            out.push_back(ticks[i]);
        } else {
            out.push_back(average_run(std::span<const QuoteTick>(ticks).subspan(i, j - i)));
        }
        i = j;
    }
    return out;
}

}  // namespace

QuoteTick make_tick(Instant t, double price) {
    QuoteTick tick;
    tick.timestamp = t;
    tick.price = price;
    tick.mid = price;
    fill_calendar(tick);
    return tick;
}

QuoteTick make_tick(Instant t, double bid, double ask) {
    QuoteTick tick;
    tick.timestamp = t;
    tick.bid = bid;
    tick.ask = ask;
    tick.mid = (bid + ask) / 2.0;
    fill_calendar(tick);
    return tick;
}

QuoteSeries::QuoteSeries(std::vector<QuoteTick> ticks, std::string source_label)
    : ticks_(std::move(ticks)), source_label_(std::move(source_label)) {
    for (std::size_t i = 1; i < ticks_.size(); ++i) {
        if (ticks_[i].timestamp < ticks_[i - 1].timestamp)
            throw_internal(kModule, "quote series timestamps must be non-decreasing");
    }
}

Instant QuoteSeries::first() const {
    if (ticks_.empty()) throw_data(kModule, "empty quote series");
    return ticks_.front().timestamp;
}

Instant QuoteSeries::last() const {
    if (ticks_.empty()) throw_data(kModule, "empty quote series");
    return ticks_.back().timestamp;
}

IngestResult parse_quote_stream(std::istream& in, const FormatConfig& config, std::string source_label) {
    std::string line;
    IngestResult result;
    if (!std::getline(in, line)) throw_data(kModule, "fewer than 2 valid rows");

    const auto header = split(line, config.delimiter);
    const std::size_t ts_col = column_index(header, config.timestamp_column);
    const bool single = config.price_column.has_value();
    const std::size_t price_col = single ? column_index(header, *config.price_column) : 0;
    const std::size_t bid_col = single ? 0 : column_index(header, config.bid_column);
    const std::size_t ask_col = single ? 0 : column_index(header, config.ask_column);
    const std::size_t needed = std::max({ts_col, price_col, bid_col, ask_col}) + 1;

    std::vector<QuoteTick> ticks;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto reject = [&](std::string reason) {
            result.rejects.push_back({line_no, line, std::move(reason)});
        };
        const auto fields = split(line, config.delimiter);
        if (fields.size() < needed) {
            reject("too few fields");
            continue;
        }
        const auto ts = config.layout == TimestampLayout::Iso8601
                            ? parse_iso8601(fields[ts_col])
                            : parse_day_offset(fields[ts_col], config.day_offset_origin);
        if (!ts) {
            reject("unparseable timestamp");
            continue;
        }
        QuoteTick tick;
        if (single) {
            const auto p = parse_double(fields[price_col]);
            if (!p) { reject("unparseable price"); continue; }
            if (*p <= 0.0) { reject("non-positive price"); continue; }
            tick = make_tick(*ts, *p);
        } else {
            const auto b = parse_double(fields[bid_col]);
            const auto a = parse_double(fields[ask_col]);
            if (!b || !a) { reject("unparseable price"); continue; }
            if (*b <= 0.0 || *a <= 0.0) { reject("non-positive price"); continue; }
            if (*a < *b - config.spread_tolerance) { reject("ask below bid"); continue; }
            tick = make_tick(*ts, *b, *a);
        }
        if (config.excluded_weekdays.contains(tick.weekday)) {
            ++result.excluded_by_weekday;
            continue;
        }
        ticks.push_back(tick);
    }
    if (in.bad()) throw_data(kModule, "read error in " + source_label);

    std::stable_sort(ticks.begin(), ticks.end(),
                     [](const QuoteTick& a, const QuoteTick& b) { return a.timestamp < b.timestamp; });
    ticks = resolve_ties(std::move(ticks), config.tie_policy, result.tie_runs_resolved);
    if (ticks.size() < 2) throw_data(kModule, "fewer than 2 valid rows");
    result.series = QuoteSeries(std::move(ticks), std::move(source_label));
    return result;
}

IngestResult parse_quote_file(const std::string& path, const FormatConfig& config) {
    std::ifstream in(path);
    if (!in) throw_data(kModule, "cannot open '" + path + "'");
    return parse_quote_stream(in, config, path);
}

std::string format_header(const FormatConfig& config) {
    std::string out = config.timestamp_column;
    out += config.delimiter;
    if (config.price_column) {
        out += *config.price_column;
    } else {
        out += config.bid_column;
        out += config.delimiter;
        out += config.ask_column;
    }
    return out;
}

std::string format_tick_row(const QuoteTick& tick, const FormatConfig& config) {
    std::string out = config.layout == TimestampLayout::Iso8601
                          ? format_iso8601(tick.timestamp)
                          : format_day_offset(tick.timestamp, config.day_offset_origin);
    out += config.delimiter;
    if (tick.price) {
        out += format_double(*tick.price);
    } else {
        out += format_double(tick.bid.value_or(0.0));
        out += config.delimiter;
        out += format_double(tick.ask.value_or(0.0));
    }
    return out;
}

std::vector<QuoteGap> inter_quote_gaps(const QuoteSeries& series) {
    std::vector<QuoteGap> gaps;
    if (series.size() < 2) return gaps;
    gaps.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        const auto& later = series[i];
        const auto delta = later.timestamp.seconds - series[i - 1].timestamp.seconds;
        gaps.push_back({static_cast<double>(delta), later.hour, later.weekday, delta == 0});
    }
    return gaps;
}

std::int64_t Crosstab::hour_total(int hour) const {
    std::int64_t sum = 0;
    for (auto c : counts.at(static_cast<std::size_t>(hour))) sum += c;
    return sum;
}

std::int64_t Crosstab::weekday_total(int weekday) const {
    std::int64_t sum = 0;
    for (const auto& row : counts) sum += row.at(static_cast<std::size_t>(weekday - 1));
    return sum;
}

Crosstab crosstab_by_hour_weekday(const QuoteSeries& series) {
    Crosstab table;
    for (const auto& tick : series.ticks()) {
        ++table.counts[static_cast<std::size_t>(tick.hour)][static_cast<std::size_t>(tick.weekday - 1)];
        ++table.total;
    }

    std::array<std::vector<double>, 24> by_hour;
    for (const auto& gap : inter_quote_gaps(series)) by_hour[static_cast<std::size_t>(gap.hour)].push_back(gap.seconds);

    for (int h = 0; h < 24; ++h) {
        auto& stats = table.arrival[static_cast<std::size_t>(h)];
        const auto& gaps = by_hour[static_cast<std::size_t>(h)];
        stats.hour = h;
        stats.count = table.hour_total(h);
        stats.gap_count = static_cast<std::int64_t>(gaps.size());
        if (gaps.empty()) continue;
        double sum = 0.0;
        for (double g : gaps) sum += g;
        const double mean = sum / static_cast<double>(gaps.size());
        stats.mean_gap_minutes = mean / 60.0;
        if (gaps.size() < 2 || mean <= 0.0) continue;
        double ss = 0.0;
        for (double g : gaps) ss += (g - mean) * (g - mean);
        stats.cv_gap = std::sqrt(ss / static_cast<double>(gaps.size() - 1)) / mean;
    }
    return table;
}

}  // namespace hurst
