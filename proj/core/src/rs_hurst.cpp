#include "hurst/rs_hurst.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hurst/error.hpp"

namespace hurst {
namespace {

constexpr const char* kModule = "rs_hurst";

int anchored_hour(std::span<const Instant> timestamps, std::size_t start, std::size_t n, WindowAnchor anchor) {
    if (timestamps.empty()) return 0;
    return hour_of(timestamps[anchor == WindowAnchor::End ? start + n - 1 : start]);
}

}  // namespace

RescaledRange rescaled_range(std::span<const double> window, SigmaDivisor divisor) {
    const std::size_t n = window.size();
    if (n < 2) throw_usage(kModule, "window length must be at least 2");

    RescaledRange out;
    const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
    if (*lo == *hi) {
        out.degenerate = true;
        return out;
    }

    double sum = 0.0;
    for (double x : window) sum += x;
    const double mean = sum / static_cast<double>(n);

    double partial = 0.0;
    double max_partial = -INFINITY;
    double min_partial = INFINITY;
    double ss = 0.0;
    for (double x : window) {
        const double d = x - mean;
        partial += d;
        max_partial = std::max(max_partial, partial);
        min_partial = std::min(min_partial, partial);
        ss += d * d;
    }
    const double denom = divisor == SigmaDivisor::Population ? static_cast<double>(n) : static_cast<double>(n - 1);
    out.range = max_partial - min_partial;
    out.sigma = std::sqrt(ss / denom);
    if (out.sigma == 0.0) {
        out.degenerate = true;
        return out;
    }
    out.rs = out.range / out.sigma;
    return out;
}

double LocalHurstStream::mean_h() const {
    if (windows.empty()) throw_data(kModule, "stream has no non-degenerate windows");
    double sum = 0.0;
    for (const auto& w : windows) sum += w.h;
    return sum / static_cast<double>(windows.size());
}

LocalHurstStream local_hurst_stream(std::span<const double> values, std::size_t n,
                                    std::span<const Instant> timestamps, const LocalHurstOptions& options) {
    if (n < 2) throw_usage(kModule, "window size n must be at least 2");
    if (values.size() < n)
        throw_data(kModule, "series length " + std::to_string(values.size()) + " is shorter than n = " +
                                std::to_string(n));
    if (!timestamps.empty() && timestamps.size() != values.size())
        throw_usage(kModule, "timestamps and values differ in length");

    LocalHurstStream stream;
    stream.n = n;
    const std::size_t positions = values.size() - n + 1;
    stream.windows.reserve(positions);
    const double log_n = std::log(static_cast<double>(n));

    for (std::size_t start = 0; start < positions; ++start) {
        const auto rr = rescaled_range(values.subspan(start, n), options.divisor);
        if (rr.degenerate) {
            ++stream.skipped;
            continue;
        }
        LocalHurstWindow w;
        w.start_index = start;
        w.n = n;
        w.range_r = rr.range;
        w.sigma = rr.sigma;
        w.rs = rr.rs;
        w.h = std::log(rr.rs) / log_n;
        if (!timestamps.empty()) {
            w.end_timestamp = timestamps[start + n - 1];
            w.hour = anchored_hour(timestamps, start, n, options.anchor);
        }
        stream.windows.push_back(w);
    }
    return stream;
}

std::vector<int> window_hour_tags(std::span<const Instant> timestamps, std::size_t n, WindowAnchor anchor) {
    if (n < 1 || timestamps.size() < n) return {};
    std::vector<int> tags(timestamps.size() - n + 1);
    for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = anchored_hour(timestamps, i, n, anchor);
    return tags;
}

LocalHurstMeans local_hurst_means(std::span<const double> values, std::size_t n, std::span<const int> window_hours,
                                  SigmaDivisor divisor) {
    if (n < 2) throw_usage(kModule, "window size n must be at least 2");
    if (values.size() < n) throw_data(kModule, "series shorter than window size");
    const std::size_t positions = values.size() - n + 1;
    if (!window_hours.empty() && window_hours.size() != positions)
        throw_usage(kModule, "window_hours must have N - n + 1 entries");

    LocalHurstMeans acc;
    const double log_n = std::log(static_cast<double>(n));
    for (std::size_t start = 0; start < positions; ++start) {
        const auto rr = rescaled_range(values.subspan(start, n), divisor);
        if (rr.degenerate) {
            ++acc.skipped;
            continue;
        }
        const double h = std::log(rr.rs) / log_n;
        acc.sum_h += h;
        ++acc.count;
        if (!window_hours.empty()) {
            const auto hr = static_cast<std::size_t>(window_hours[start]);
            acc.hour_sum[hr] += h;
            ++acc.hour_count[hr];
        }
    }
    return acc;
}

std::vector<LogComponents> decomposition_components(const LocalHurstStream& stream, double log_base) {
    if (!(log_base > 0.0) || log_base == 1.0) throw_usage(kModule, "invalid log base");
    const double ln_base = std::log(log_base);
    std::vector<LogComponents> out;
    out.reserve(stream.windows.size());
    for (const auto& w : stream.windows)
        out.push_back({std::log(w.range_r) / ln_base, std::log(w.sigma) / ln_base});
    return out;
}

double reconstruct_h(double log_range, double log_sigma, std::size_t n, double log_base) {
    return (log_range - log_sigma) / (std::log(static_cast<double>(n)) / std::log(log_base));
}

GlobalHurstFit fit_log_log(std::span<const ScalePoint> points) {
    std::set<double> distinct;
    for (const auto& p : points) {
        if (!(p.n > 0.0) || !(p.mean_rs > 0.0)) throw_data(kModule, "scale points must be positive");
        distinct.insert(p.n);
    }
    if (distinct.size() < 3) throw_usage(kModule, "global Hurst fit needs at least 3 distinct lengths");

    const auto m = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& p : points) {
        sx += std::log(p.n);
        sy += std::log(p.mean_rs);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        const double dx = std::log(p.n) - mx;
        const double dy = std::log(p.mean_rs) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    GlobalHurstFit fit;
    fit.exponent_h = sxy / sxx;
    fit.intercept = my - fit.exponent_h * mx;
    fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    fit.points.assign(points.begin(), points.end());
    return fit;
}

std::vector<std::size_t> default_block_lengths(std::size_t series_length) {
    std::vector<std::size_t> lengths;
    for (std::size_t n = 64; n <= series_length / 4; n *= 2) lengths.push_back(n);
    return lengths;
}

GlobalHurstFit global_hurst(std::span<const double> values, std::span<const std::size_t> lengths,
                            SigmaDivisor divisor) {
    const std::size_t total = values.size();
    std::vector<ScalePoint> points;
    for (std::size_t n : lengths) {
        if (n < 2 || n > total / 2)
            throw_usage(kModule, "block length " + std::to_string(n) + " outside [2, N/2]");
        const std::size_t blocks = total / n;
        double sum = 0.0;
        std::size_t used = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const auto rr = rescaled_range(values.subspan(b * n, n), divisor);
            if (rr.degenerate) continue;
            sum += rr.rs;
            ++used;
        }
        if (used == 0) throw_data(kModule, "all blocks degenerate at n = " + std::to_string(n));
        points.push_back({static_cast<double>(n), sum / static_cast<double>(used)});
    }
    return fit_log_log(points);
}

AutocorrelationDiagnostic autocorrelation(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (n < 2 || 2 * max_lag >= n) throw_usage(kModule, "max_lag must be below N/2");
    double sum = 0.0;
    for (double x : values) sum += x;
    const double mean = sum / static_cast<double>(n);
    double denom = 0.0;
    for (double x : values) denom += (x - mean) * (x - mean);
    if (denom == 0.0) throw_data(kModule, "autocorrelation of a constant series is undefined");

    AutocorrelationDiagnostic out;
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) num += (values[t] - mean) * (values[t + k] - mean);
        out.lags.push_back(k);
        out.rho.push_back(k == 0 ? 1.0 : num / denom);
    }
    return out;
}

}  // namespace hurst
