#include "hurst/session_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hurst/distributions.hpp"
#include "hurst/error.hpp"

namespace hurst {
namespace {

constexpr const char* kModule = "session_stats";

std::vector<std::vector<double>> to_groups(const HourlyBundles& bundles) {
    std::vector<std::vector<double>> groups;
    groups.reserve(bundles.size());
    for (const auto& b : bundles) groups.push_back(b.values);
    return groups;
}

std::optional<ColumnAnova> column_anova(const LocalHurstStream& stream, double LocalHurstWindow::*field) {
    std::vector<std::vector<double>> groups(24);
    for (const auto& w : stream.windows) groups[static_cast<std::size_t>(w.hour)].push_back(w.*field);
    try {
        const auto r = anova_oneway(groups);
        return ColumnAnova{r.f_stat, r.p_value};
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

HourlyBundles bundle_by_hour(std::span<const double> values, std::span<const int> hours) {
    if (values.size() != hours.size()) throw_usage(kModule, "values and hour tags differ in length");
    HourlyBundles bundles{};
    for (int h = 0; h < 24; ++h) bundles[static_cast<std::size_t>(h)].hour = h;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (hours[i] < 0 || hours[i] > 23) throw_data(kModule, "hour tag out of range");
        bundles[static_cast<std::size_t>(hours[i])].values.push_back(values[i]);
    }
    return bundles;
}

AnovaResult anova_oneway(std::span<const std::vector<double>> groups) {
    std::size_t k = 0, total = 0;
    double grand_sum = 0.0;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        ++k;
        total += g.size();
        for (double x : g) grand_sum += x;
    }
    if (k < 2) throw_data(kModule, "ANOVA needs at least 2 non-empty groups");
    if (total <= k) throw_data(kModule, "ANOVA needs more observations than groups");
    const double grand_mean = grand_sum / static_cast<double>(total);

    AnovaResult r;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
        r.group_means.push_back(mean);
        r.ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
        for (double x : g) r.ss_within += (x - mean) * (x - mean);
    }
    if (r.ss_within == 0.0 && r.ss_between == 0.0)
        throw_data(kModule, "ANOVA undefined: every observation is identical");
    r.df_between = k - 1;
    r.df_within = total - k;
    const double msb = r.ss_between / static_cast<double>(r.df_between);
    const double msw = r.ss_within / static_cast<double>(r.df_within);
    r.f_stat = msw == 0.0 ? INFINITY : msb / msw;
    r.p_value = dist::f_upper_tail(r.f_stat, static_cast<double>(r.df_between), static_cast<double>(r.df_within));
    return r;
}

AnovaResult anova_oneway(const HourlyBundles& bundles) {
    const auto groups = to_groups(bundles);
    return anova_oneway(groups);
}

KruskalWallisResult kruskal_wallis(std::span<const std::vector<double>> groups) {
    struct Item {
        double value;
        std::size_t group;
    };
    std::vector<Item> items;
    std::size_t k = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty()) continue;
        ++k;
        for (double x : groups[g]) items.push_back({x, g});
    }
    if (k < 2) throw_data(kModule, "Kruskal-Wallis needs at least 2 non-empty groups");

    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value < b.value; });
    const auto total = static_cast<double>(items.size());
    std::vector<double> rank_sum(groups.size(), 0.0);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < items.size();) {
        std::size_t j = i + 1;
        while (j < items.size() && items[j].value == items[i].value) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        for (std::size_t m = i; m < j; ++m) rank_sum[items[m].group] += avg_rank;
        i = j;
    }

    KruskalWallisResult r;
    r.df = k - 1;
    const double correction = 1.0 - tie_term / (total * total * total - total);
    if (correction <= 0.0) {
        r.undefined = true;
        return r;
    }
    double acc = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty()) continue;
        const auto ng = static_cast<double>(groups[g].size());
        const double mean_rank = rank_sum[g] / ng;
        acc += ng * (mean_rank - (total + 1.0) / 2.0) * (mean_rank - (total + 1.0) / 2.0);
    }
    r.h_stat = 12.0 / (total * (total + 1.0)) * acc;
    if (tie_term > 0.0) {
        r.h_stat /= correction;
        r.tie_correction_applied = true;
    }
    r.p_value = dist::chi_squared_upper_tail(r.h_stat, static_cast<double>(r.df));
    return r;
}

KruskalWallisResult kruskal_wallis(const HourlyBundles& bundles) {
    const auto groups = to_groups(bundles);
    return kruskal_wallis(groups);
}

double percent_change(double previous, double current) { return (current - previous) / previous * 100.0; }

std::array<WindowMeans, 24> hourly_window_means(const LocalHurstStream& stream) {
    std::array<WindowMeans, 24> out{};
    for (const auto& w : stream.windows) {
        auto& slot = out[static_cast<std::size_t>(w.hour)];
        slot.mean_range += w.range_r;
        slot.mean_sigma += w.sigma;
        ++slot.windows;
    }
    for (auto& slot : out) {
        if (slot.windows == 0) continue;
        slot.mean_range /= static_cast<double>(slot.windows);
        slot.mean_sigma /= static_cast<double>(slot.windows);
    }
    return out;
}

DecompositionTable decomposition_rows(const std::array<WindowMeans, 24>& small,
                                      const std::array<WindowMeans, 24>& large, std::size_t n_small,
                                      std::size_t n_large, PercentChangeMode mode) {
    if (n_small < 2 || n_large < 2) throw_usage(kModule, "window sizes must be at least 2");
    DecompositionTable table;
    table.n_small = n_small;
    table.n_large = n_large;
    table.mode = mode;

    const auto columns = [](const WindowMeans& m, std::size_t n) {
        WindowColumns c;
        c.mean_range = m.mean_range;
        c.mean_sigma = m.mean_sigma;
        c.log_range = std::log10(m.mean_range);
        c.log_sigma = std::log10(m.mean_sigma);
        c.h = (c.log_range - c.log_sigma) / std::log10(static_cast<double>(n));
        return c;
    };

    for (std::size_t h = 0; h < 24; ++h) {
        auto& row = table.rows[h];
        row.hour = static_cast<int>(h);
        row.empty = small[h].windows == 0 || large[h].windows == 0;
        if (row.empty) continue;
        row.small = columns(small[h], n_small);
        row.large = columns(large[h], n_large);
        row.dr_cross = percent_change(row.small.log_range, row.large.log_range);
        row.dsigma_cross = percent_change(row.small.log_sigma, row.large.log_sigma);
        if (h == 0 || table.rows[h - 1].empty) continue;

        const auto& prev = table.rows[h - 1];
        row.dr_small = percent_change(prev.small.log_range, row.small.log_range);
        row.dr_large = percent_change(prev.large.log_range, row.large.log_range);
        row.dsigma_large = percent_change(prev.large.log_sigma, row.large.log_sigma);
        row.dsigma_small = mode == PercentChangeMode::Paper
                               ? percent_change(prev.small.mean_sigma, row.small.mean_sigma)
                               : percent_change(prev.small.log_sigma, row.small.log_sigma);
    }
    return table;
}

DecompositionTable decomposition_table(const LocalHurstStream& small, const LocalHurstStream& large,
                                       PercentChangeMode mode) {
    auto table = decomposition_rows(hourly_window_means(small), hourly_window_means(large), small.n, large.n, mode);
    table.range_small_anova = column_anova(small, &LocalHurstWindow::range_r);
    table.sigma_small_anova = column_anova(small, &LocalHurstWindow::sigma);
    table.range_large_anova = column_anova(large, &LocalHurstWindow::range_r);
    table.sigma_large_anova = column_anova(large, &LocalHurstWindow::sigma);
    return table;
}

}  // namespace hurst
