#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hurst/timestamp.hpp"

namespace hurst {

/// Divisor used for the window standard deviation.
enum class SigmaDivisor {
    Population,  // 1/n
    Sample,      // 1/(n-1), for sensitivity checks
};

/// Which observation of a window supplies its timestamp and hour tag.
enum class WindowAnchor { End, Start };

struct RescaledRange {
    double range = 0.0;
    double sigma = 0.0;
    double rs = 0.0;  // meaningful only when !degenerate
    bool degenerate = false;
};

/// Classical rescaled adjusted range of one window. The range is the max
/// minus the min of the partial sums of deviations from the window mean,
/// over k = 1..n. A constant window is flagged degenerate and no division
/// is performed. Throws if the window has fewer than 2 values.
RescaledRange rescaled_range(std::span<const double> window,
                             SigmaDivisor divisor = SigmaDivisor::Population);

struct LocalHurstWindow {
    std::size_t start_index = 0;
    Instant end_timestamp;
    std::size_t n = 0;
    double range_r = 0.0;
    double sigma = 0.0;
    double rs = 0.0;
    double h = 0.0;
    int hour = 0;
};

struct LocalHurstStream {
    std::vector<LocalHurstWindow> windows;
    std::size_t n = 0;
    std::size_t skipped = 0;
    /// N - n + 1 == windows.size() + skipped
    std::size_t positions() const noexcept { return windows.size() + skipped; }
    double mean_h() const;
};

struct LocalHurstOptions {
    SigmaDivisor divisor = SigmaDivisor::Population;
    WindowAnchor anchor = WindowAnchor::End;
};

/// Evaluates every one of the N - n + 1 overlapping windows. `timestamps`
/// may be empty, in which case windows carry a zero instant and hour 0;
/// otherwise it must match `values` in length.
LocalHurstStream local_hurst_stream(std::span<const double> values, std::size_t n,
                                    std::span<const Instant> timestamps = {},
                                    const LocalHurstOptions& options = {});

/// Per-stream aggregates without materialising windows; used by the
/// bootstrap inner loop. `window_hours[i]` is the hour tag of the window
/// starting at i.
struct LocalHurstMeans {
    double sum_h = 0.0;
    std::size_t count = 0;
    std::size_t skipped = 0;
    std::array<double, 24> hour_sum{};
    std::array<std::size_t, 24> hour_count{};
};

LocalHurstMeans local_hurst_means(std::span<const double> values, std::size_t n,
                                  std::span<const int> window_hours,
                                  SigmaDivisor divisor = SigmaDivisor::Population);

/// Hour tag for every window start position of length-n windows.
std::vector<int> window_hour_tags(std::span<const Instant> timestamps, std::size_t n,
                                  WindowAnchor anchor = WindowAnchor::End);

struct LogComponents {
    double log_range = 0.0;
    double log_sigma = 0.0;
};

/// log R and log sigma per window in the requested base.
std::vector<LogComponents> decomposition_components(const LocalHurstStream& stream, double log_base);

/// (log R - log sigma) / log n, all logs in `log_base`.
double reconstruct_h(double log_range, double log_sigma, std::size_t n, double log_base);

struct ScalePoint {
    double n = 0.0;
    double mean_rs = 0.0;
};

struct GlobalHurstFit {
    double exponent_h = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<ScalePoint> points;
};

/// OLS of ln(mean_rs) on ln(n). Needs at least 3 distinct n.
GlobalHurstFit fit_log_log(std::span<const ScalePoint> points);

/// Block lengths 64, 128, ... up to N/4.
std::vector<std::size_t> default_block_lengths(std::size_t series_length);

/// Mean (R/sigma)_n over floor(N/n) non-overlapping blocks for each n,
/// then a log-log OLS fit.
GlobalHurstFit global_hurst(std::span<const double> values, std::span<const std::size_t> lengths,
                            SigmaDivisor divisor = SigmaDivisor::Population);

struct AutocorrelationDiagnostic {
    std::vector<std::size_t> lags;  // 0..max_lag
    std::vector<double> rho;
};

/// Sample autocorrelation r(k) = sum (x_t - m)(x_{t+k} - m) / sum (x_t - m)^2.
AutocorrelationDiagnostic autocorrelation(std::span<const double> values, std::size_t max_lag);

}  // namespace hurst
