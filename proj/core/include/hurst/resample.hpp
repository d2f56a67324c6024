#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hurst/rs_hurst.hpp"
#include "hurst/timestamp.hpp"

namespace hurst {

/// Seed for bootstrap iteration `index`, derived from the master seed alone
/// so workers never share generator state.
std::uint64_t iteration_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Uniform random permutation (Fisher-Yates) of the values. Positions, and
/// therefore any timestamps attached to them, are unchanged.
std::vector<double> scramble(std::span<const double> values, std::uint64_t seed);

struct BootstrapConfig {
    std::size_t iterations = 1000;
    std::vector<std::size_t> window_sizes{10, 20};
    std::uint64_t master_seed = 20000505;
    double confidence = 0.95;
    unsigned workers = 1;
    LocalHurstOptions window_options{};
    /// Keep iteration means in the summary for audit dumps.
    bool keep_iteration_means = true;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

struct HourBootstrap {
    std::optional<double> mean;
    std::optional<double> std_dev;
    std::size_t iterations_with_data = 0;
};

struct BootstrapSummary {
    std::size_t n = 0;
    std::size_t iterations = 0;
    std::uint64_t master_seed = 0;
    double confidence = 0.95;
    /// Mean over iterations of each iteration's mean local h.
    double mean_h = 0.0;
    /// Sample std of the iteration means; empty when iterations < 2.
    std::optional<double> std_h;
    std::array<HourBootstrap, 24> per_hour{};
    /// mean_h +- z * std_h; the default interval.
    Interval ci_normal;
    /// Empirical quantiles of the iteration means.
    Interval ci_percentile;
    std::vector<double> iteration_means;
};

/// Scramble-and-recompute bootstrap of the local Hurst mean, one summary per
/// configured window size, in the configured order. Every output bit is
/// determined by (values, timestamps, config) regardless of `workers`.
std::vector<BootstrapSummary> bootstrap_local_hurst(std::span<const double> values,
                                                    std::span<const Instant> timestamps,
                                                    const BootstrapConfig& config);

struct ZTestResult {
    std::size_t n = 0;
    double observed_mean = 0.0;
    double expected = 0.0;
    double std_used = 0.0;
    std::size_t sample_count = 0;
    double z = 0.0;
    double p_two_sided = 1.0;
    double significance = 0.05;
    bool reject = false;
};

/// z = (observed - expected) / (std / sqrt(count)).
ZTestResult z_test(double observed_mean, double expected, double std_used, std::size_t sample_count,
                   double significance = 0.05);

/// Observed stream against its bootstrap null: uses the bootstrap std and
/// the stream's non-degenerate window count.
ZTestResult z_test(const LocalHurstStream& observed, const BootstrapSummary& summary,
                   double significance = 0.05);

}  // namespace hurst
