#include "hurst/returns_engine.hpp"

#include "hurst/error.hpp"

namespace hurst {
namespace {
constexpr const char* kModule = "returns_engine";
}

std::vector<double> ReturnSeries::values() const {
    std::vector<double> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.ar);
    return out;
}

std::vector<Instant> ReturnSeries::timestamps() const {
    std::vector<Instant> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.timestamp);
    return out;
}

std::vector<int> ReturnSeries::hours() const {
    std::vector<int> out;
    out.reserve(observations.size());
    for (const auto& o : observations) out.push_back(o.hour);
    return out;
}

ReturnSeries adjusted_returns(const QuoteSeries& series, const ReturnsConfig& config) {
    if (series.size() < 2) throw_data(kModule, "series shorter than 2");
    if (!(config.scale_seconds > 0.0)) throw_usage(kModule, "scale_seconds must be positive");
    if (!(config.log_base > 0.0) || config.log_base == 1.0) throw_usage(kModule, "invalid log base");

    const double log_base = config.log_base == std::exp(1.0) ? 1.0 : std::log(config.log_base);
    ReturnSeries out;
    out.config = config;
    out.diagnostics.valid_quotes = series.size();
    out.observations.reserve(series.size() - 1);

    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        const QuoteTick& a = series[i];
        const QuoteTick& b = series[i + 1];
        if (!(a.mid > 0.0) || !(b.mid > 0.0)) throw_data(kModule, "non-positive price encountered");
        const auto tau = static_cast<double>(b.timestamp.seconds - a.timestamp.seconds);
        if (tau <= 0.0) {
            ++out.diagnostics.excluded_zero_gap;
            continue;
        }
        if (config.max_gap_seconds && tau > *config.max_gap_seconds) {
            ++out.diagnostics.excluded_over_cutoff;
            continue;
        }
        double logdiff = (std::log(a.mid) - std::log(b.mid)) / log_base;
        if (config.sign == ReturnSign::Forward) logdiff = -logdiff;
        out.observations.push_back({logdiff * (config.scale_seconds / tau), tau, logdiff, b.timestamp,
                                    b.hour, b.weekday});
    }
    return out;
}

ReturnSeries returns_from_values(std::span<const double> values, std::span<const Instant> timestamps,
                                 std::span<const double> tau_seconds) {
    if (values.size() != timestamps.size())
        throw_usage(kModule, "values and timestamps differ in length");
    if (!tau_seconds.empty() && tau_seconds.size() != values.size())
        throw_usage(kModule, "values and tau_seconds differ in length");
    ReturnSeries out;
    out.diagnostics.valid_quotes = values.size() + 1;
    out.observations.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double tau = 1.0;
        if (!tau_seconds.empty()) {
            tau = tau_seconds[i];
        } else if (i > 0) {
            tau = static_cast<double>(timestamps[i].seconds - timestamps[i - 1].seconds);
        } else if (values.size() > 1) {
            tau = static_cast<double>(timestamps[1].seconds - timestamps[0].seconds);
        }
        out.observations.push_back({values[i], tau, values[i], timestamps[i], hour_of(timestamps[i]),
                                    weekday_of(timestamps[i])});
    }
    return out;
}

std::array<HourlyReturnRow, 24> hourly_return_summary(const ReturnSeries& returns) {
    std::array<HourlyReturnRow, 24> rows{};
    std::array<double, 24> sums{};
    for (int h = 0; h < 24; ++h) rows[static_cast<std::size_t>(h)].hour = h;
    for (const auto& o : returns.observations) {
        auto& row = rows[static_cast<std::size_t>(o.hour)];
        ++row.count;
        sums[static_cast<std::size_t>(o.hour)] += o.ar;
    }
    for (auto& row : rows) {
        if (row.count > 0) row.mean = sums[static_cast<std::size_t>(row.hour)] / static_cast<double>(row.count);
    }
    std::array<double, 24> ss{};
    for (const auto& o : returns.observations) {
        const auto h = static_cast<std::size_t>(o.hour);
        const double d = o.ar - *rows[h].mean;
        ss[h] += d * d;
    }
    for (auto& row : rows) {
        if (row.count >= 2)
            row.std_dev = std::sqrt(ss[static_cast<std::size_t>(row.hour)] / static_cast<double>(row.count - 1));
    }
    return rows;
}

}  // namespace hurst
