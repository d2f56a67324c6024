#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hurst/error.hpp"
#include "hurst/session_stats.hpp"
#include "reference_decomposition.hpp"

using namespace hurst;
using hurst::testdata::kReferenceDecomposition;

namespace {

std::pair<std::array<WindowMeans, 24>, std::array<WindowMeans, 24>> reference_means() {
    std::array<WindowMeans, 24> small{}, large{};
    for (const auto& row : kReferenceDecomposition) {
        const auto h = static_cast<std::size_t>(row.hour);
        small[h] = {row.range10, row.sigma10, 100};
        large[h] = {row.range20, row.sigma20, 100};
    }
    return {small, large};
}

}  // namespace

TEST(Anova, TwoGroupHandValue) {
    const std::vector<std::vector<double>> g{{1, 2}, {3, 4}};
    const auto r = anova_oneway(g);
    EXPECT_DOUBLE_EQ(r.f_stat, 8.0);
    EXPECT_EQ(r.df_between, 1u);
    EXPECT_EQ(r.df_within, 2u);
    EXPECT_DOUBLE_EQ(r.ss_between, 4.0);
    EXPECT_DOUBLE_EQ(r.ss_within, 1.0);
    EXPECT_NEAR(r.p_value, 0.105573, 1e-6);
}

TEST(Anova, SkipsEmptyGroups) {
    const std::vector<std::vector<double>> g{{1, 2}, {}, {3, 4}};
    const auto r = anova_oneway(g);
    EXPECT_DOUBLE_EQ(r.f_stat, 8.0);
    EXPECT_EQ(r.group_means.size(), 2u);
}

TEST(Anova, IdenticalGroupsGiveZeroF) {
    const std::vector<std::vector<double>> g{{1, 2, 3}, {1, 2, 3}, {3, 2, 1}};
    const auto r = anova_oneway(g);
    EXPECT_EQ(r.f_stat, 0.0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(Anova, AllConstantIsAnError) {
    const std::vector<std::vector<double>> g{{1, 1}, {1, 1}};
    EXPECT_THROW(anova_oneway(g), Error);
    const std::vector<std::vector<double>> single{{1, 2, 3}};
    EXPECT_THROW(anova_oneway(single), Error);
}

TEST(Anova, NullPValuesRoughlyUniform) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d;
    int below = 0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::vector<double>> g(5, std::vector<double>(20));
        for (auto& grp : g)
            for (auto& x : grp) x = d(rng);
        if (anova_oneway(g).p_value < 0.05) ++below;
    }
    EXPECT_NEAR(below / static_cast<double>(trials), 0.05, 0.035);
}

TEST(KruskalWallis, TwoGroupHandValue) {
    const std::vector<std::vector<double>> g{{1, 2}, {3, 4}};
    const auto r = kruskal_wallis(g);
    EXPECT_NEAR(r.h_stat, 2.4, 1e-12);
    EXPECT_EQ(r.df, 1u);
    EXPECT_NEAR(r.p_value, 0.121335, 1e-6);
    EXPECT_FALSE(r.tie_correction_applied);
}

TEST(KruskalWallis, TwentyFourGroups) {
    std::vector<std::vector<double>> g(24);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> d;
    for (auto& grp : g)
        for (int i = 0; i < 10; ++i) grp.push_back(d(rng));
    EXPECT_EQ(kruskal_wallis(g).df, 23u);
}

TEST(KruskalWallis, MonotoneTransformInvariance) {
    std::vector<std::vector<double>> g(6), t(6);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> d;
    for (std::size_t k = 0; k < 6; ++k)
        for (int i = 0; i < 15; ++i) {
            const double x = d(rng) + 0.2 * static_cast<double>(k);
            g[k].push_back(x);
            t[k].push_back(std::exp(3.0 * x) + 7.0);
        }
    EXPECT_NEAR(kruskal_wallis(g).h_stat, kruskal_wallis(t).h_stat, 1e-10);
}

TEST(KruskalWallis, TieCorrection) {
    const std::vector<std::vector<double>> g{{1, 1, 2}, {2, 3, 3}};
    const auto r = kruskal_wallis(g);
    EXPECT_TRUE(r.tie_correction_applied);
    // Ranks: 1.5 1.5 3.5 | 3.5 5.5 5.5; H = 2.333.../(1 - 18/210)
    EXPECT_NEAR(r.h_stat, (12.0 / 42.0 * (6.5 * 6.5 / 3 + 14.5 * 14.5 / 3) - 21.0) / (1.0 - 18.0 / 210.0), 1e-12);
}

TEST(KruskalWallis, AllIdenticalIsUndefined) {
    const std::vector<std::vector<double>> g{{2, 2}, {2, 2}};
    const auto r = kruskal_wallis(g);
    EXPECT_TRUE(r.undefined);
    EXPECT_EQ(r.h_stat, 0.0);
}

TEST(BundleByHour, Partitions) {
    const std::vector<double> v{1, 2, 3, 4};
    const std::vector<int> h{0, 23, 0, 5};
    const auto b = bundle_by_hour(v, h);
    EXPECT_EQ(b[0].count(), 2u);
    EXPECT_EQ(b[23].values, std::vector<double>{2});
    const std::vector<int> bad{0, 24, 0, 5};
    EXPECT_THROW(bundle_by_hour(v, bad), Error);
}

TEST(PercentChange, Definition) {
    EXPECT_DOUBLE_EQ(percent_change(2.0, 3.0), 50.0);
    EXPECT_DOUBLE_EQ(percent_change(4.0, 1.0), -75.0);
}

TEST(Decomposition, ReferenceHValuesFromLogs) {
    for (const auto& row : kReferenceDecomposition) {
        EXPECT_NEAR((row.log_range10 - row.log_sigma10) / std::log10(10.0), row.h10, 0.001) << row.hour;
        EXPECT_NEAR((row.log_range20 - row.log_sigma20) / std::log10(20.0), row.h20, 0.001) << row.hour;
    }
}

TEST(Decomposition, PaperModeMatchesReferencePercentColumns) {
    const auto [small, large] = reference_means();
    const auto t = decomposition_rows(small, large, 10, 20, PercentChangeMode::Paper);
    EXPECT_NEAR(*t.rows[1].dr_small, -31.03, 0.05);
    EXPECT_NEAR(*t.rows[1].dsigma_small, -88.20, 0.05);
    EXPECT_NEAR(*t.rows[0].dr_cross, 10.94, 0.05);
    EXPECT_NEAR(*t.rows[0].dsigma_cross, 6.57, 0.05);
    EXPECT_FALSE(t.rows[0].dr_small);
    EXPECT_FALSE(t.rows[0].dsigma_large);
    for (std::size_t h = 1; h < 24; ++h) {
        const auto& p = kReferenceDecomposition[h];
        const auto& r = t.rows[h];
        // Relative tolerance covers the rounding of the reference inputs.
        const auto close = [](double a, double b) { return std::abs(a - b) <= 0.01 + 0.002 * std::abs(b); };
        EXPECT_TRUE(close(*r.dr_small, *p.dr10)) << h << ": " << *r.dr_small << " vs " << *p.dr10;
        EXPECT_TRUE(close(*r.dsigma_small, *p.dsigma10)) << h << ": " << *r.dsigma_small << " vs " << *p.dsigma10;
        EXPECT_TRUE(close(*r.dr_large, *p.dr20)) << h << ": " << *r.dr_large << " vs " << *p.dr20;
        EXPECT_TRUE(close(*r.dsigma_large, *p.dsigma20)) << h << ": " << *r.dsigma_large << " vs " << *p.dsigma20;
        EXPECT_TRUE(close(*r.dr_cross, p.dr_cross)) << h;
        EXPECT_TRUE(close(*r.dsigma_cross, p.dsigma_cross)) << h;
    }
}

TEST(Decomposition, ConsistentModeDiffersOnlyInSmallSigmaChange) {
    const auto [small, large] = reference_means();
    const auto a = decomposition_rows(small, large, 10, 20, PercentChangeMode::Paper);
    const auto b = decomposition_rows(small, large, 10, 20, PercentChangeMode::Consistent);
    for (std::size_t h = 1; h < 24; ++h) {
        EXPECT_EQ(a.rows[h].dr_small, b.rows[h].dr_small);
        EXPECT_EQ(a.rows[h].dsigma_large, b.rows[h].dsigma_large);
        EXPECT_EQ(a.rows[h].small.h, b.rows[h].small.h);
        EXPECT_DOUBLE_EQ(*b.rows[h].dsigma_small,
                         percent_change(std::log10(small[h - 1].mean_sigma), std::log10(small[h].mean_sigma)));
    }
    EXPECT_NE(a.rows[1].dsigma_small, b.rows[1].dsigma_small);
}

TEST(Decomposition, EmptyHourBlanksFollowingChange) {
    auto [small, large] = reference_means();
    small[5].windows = 0;
    const auto t = decomposition_rows(small, large, 10, 20, PercentChangeMode::Paper);
    EXPECT_TRUE(t.rows[5].empty);
    EXPECT_FALSE(t.rows[5].dr_cross);
    EXPECT_FALSE(t.rows[6].dr_small);
    EXPECT_TRUE(t.rows[6].dr_cross);
    EXPECT_TRUE(t.rows[7].dr_small);
}

TEST(Decomposition, FromStreamsAddsAnovaFooter) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> d;
    std::vector<double> v(5000);
    std::vector<Instant> ts(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = d(rng);
        ts[i] = Instant{957'139'200 + 60 * static_cast<std::int64_t>(i)};
    }
    const auto s10 = local_hurst_stream(v, 10, ts);
    const auto s20 = local_hurst_stream(v, 20, ts);
    const auto t = decomposition_table(s10, s20);
    ASSERT_TRUE(t.range_small_anova);
    ASSERT_TRUE(t.sigma_large_anova);
    EXPECT_GE(t.range_small_anova->p_value, 0.0);
    EXPECT_LE(t.range_small_anova->p_value, 1.0);
    for (const auto& row : t.rows) {
        EXPECT_FALSE(row.empty);
        EXPECT_NEAR(row.small.h, (row.small.log_range - row.small.log_sigma), 1e-12);
    }
}
