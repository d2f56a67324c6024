#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hurst/rs_hurst.hpp"

namespace hurst {

struct HourlyBundle {
    int hour = 0;
    std::vector<double> values;
    std::size_t count() const noexcept { return values.size(); }
};

using HourlyBundles = std::array<HourlyBundle, 24>;

/// Partitions values by their hour tag (0..23). Throws on an out-of-range tag.
HourlyBundles bundle_by_hour(std::span<const double> values, std::span<const int> hours);

struct AnovaResult {
    double f_stat = 0.0;
    std::size_t df_between = 0;
    std::size_t df_within = 0;
    double p_value = 1.0;
    double ss_between = 0.0;
    double ss_within = 0.0;
    std::vector<double> group_means;  // non-empty groups only, in input order
};

/// One-way ANOVA over the non-empty groups.
AnovaResult anova_oneway(std::span<const std::vector<double>> groups);
AnovaResult anova_oneway(const HourlyBundles& bundles);

struct KruskalWallisResult {
    double h_stat = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;
    bool tie_correction_applied = false;
    /// All observations identical: H is reported as 0.
    bool undefined = false;
};

/// Rank-based test with average ranks for ties and the usual tie
/// correction; H is referred to chi-square with k - 1 degrees.
KruskalWallisResult kruskal_wallis(std::span<const std::vector<double>> groups);
KruskalWallisResult kruskal_wallis(const HourlyBundles& bundles);

/// Percent-change convention for the hour-over-hour columns.
enum class PercentChangeMode {
    /// Range changes on log R for both window sizes; sigma changes on raw
    /// sigma for the smaller window and on log sigma for the larger one.
    /// This matches the reference decomposition table column for column.
    Paper,
    /// Every change computed on log values.
    Consistent,
};

struct WindowMeans {
    double mean_range = 0.0;
    double mean_sigma = 0.0;
    std::size_t windows = 0;
};

struct WindowColumns {
    double mean_range = 0.0;
    double log_range = 0.0;  // base 10
    double mean_sigma = 0.0;
    double log_sigma = 0.0;  // base 10
    double h = 0.0;          // (log R - log sigma) / log10 n
};

struct HourlyDecompositionRow {
    int hour = 0;
    bool empty = false;  // either window size has no windows in this hour
    WindowColumns small;
    WindowColumns large;
    // Hour-over-hour percent changes; empty at hour 0 or after an empty hour.
    std::optional<double> dr_small;
    std::optional<double> dsigma_small;
    std::optional<double> dr_large;
    std::optional<double> dsigma_large;
    // Percent change of log R (log sigma) from the small to the large window.
    std::optional<double> dr_cross;
    std::optional<double> dsigma_cross;
};

struct ColumnAnova {
    double f_stat = 0.0;
    double p_value = 1.0;
};

struct DecompositionTable {
    std::size_t n_small = 10;
    std::size_t n_large = 20;
    PercentChangeMode mode = PercentChangeMode::Paper;
    std::array<HourlyDecompositionRow, 24> rows{};
    // ANOVA of window-level R and sigma across hours.
    std::optional<ColumnAnova> range_small_anova;
    std::optional<ColumnAnova> sigma_small_anova;
    std::optional<ColumnAnova> range_large_anova;
    std::optional<ColumnAnova> sigma_large_anova;
};

/// Builds the rows from per-hour mean R and sigma. Hours with
/// `windows == 0` in either input are flagged empty.
DecompositionTable decomposition_rows(const std::array<WindowMeans, 24>& small,
                                      const std::array<WindowMeans, 24>& large, std::size_t n_small,
                                      std::size_t n_large, PercentChangeMode mode);

/// Per-hour mean R and sigma of a stream, by window hour tag.
std::array<WindowMeans, 24> hourly_window_means(const LocalHurstStream& stream);

/// Full table from two streams over the same return series; adds the
/// per-column ANOVA footer.
DecompositionTable decomposition_table(const LocalHurstStream& small, const LocalHurstStream& large,
                                       PercentChangeMode mode = PercentChangeMode::Paper);

/// 100 * (current - previous) / previous
double percent_change(double previous, double current);

}  // namespace hurst
