#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hurst/error.hpp"
#include "hurst/returns_engine.hpp"

using namespace hurst;

namespace {

QuoteSeries series_of(std::initializer_list<std::pair<std::int64_t, double>> rows) {
    std::vector<QuoteTick> ticks;
    for (auto [offset, price] : rows) ticks.push_back(make_tick(Instant{957'139'200 + offset}, price));
    return QuoteSeries(std::move(ticks), "t");
}

}  // namespace

TEST(ReturnsEngine, SixMinuteGapGivesPlainLogReturn) {
    const auto s = series_of({{0, 1.00}, {360, 1.01}});
    const auto r = adjusted_returns(s);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r.observations[0].ar, -0.00995033, 1e-8);
    EXPECT_DOUBLE_EQ(r.observations[0].ar, std::log(1.00) - std::log(1.01));
    EXPECT_EQ(r.observations[0].tau_seconds, 360.0);
}

TEST(ReturnsEngine, TwelveMinuteGapHalvesTheReturn) {
    const auto s = series_of({{0, 1.00}, {720, 1.01}});
    EXPECT_NEAR(adjusted_returns(s).observations[0].ar, -0.004975165, 1e-9);
}

TEST(ReturnsEngine, ForwardSignFlips) {
    const auto s = series_of({{0, 1.00}, {360, 1.01}, {400, 0.99}});
    ReturnsConfig fwd;
    fwd.sign = ReturnSign::Forward;
    const auto a = adjusted_returns(s);
    const auto b = adjusted_returns(s, fwd);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.observations[i].ar, -b.observations[i].ar);
}

TEST(ReturnsEngine, EqualPricesGiveZero) {
    const auto r = adjusted_returns(series_of({{0, 0.58}, {17, 0.58}}));
    EXPECT_EQ(r.observations[0].ar, 0.0);
}

TEST(ReturnsEngine, ZeroGapsAreExcludedAndCounted) {
    const auto r = adjusted_returns(series_of({{0, 1.0}, {5, 1.1}, {5, 1.2}, {9, 1.3}}));
    EXPECT_EQ(r.size(), 2u);
    EXPECT_EQ(r.diagnostics.excluded_zero_gap, 1u);
    EXPECT_EQ(r.diagnostics.valid_quotes, 4u);
    for (const auto& o : r.observations) EXPECT_TRUE(std::isfinite(o.ar));
}

TEST(ReturnsEngine, GapCutoffExcludesLongGaps) {
    ReturnsConfig cfg;
    cfg.max_gap_seconds = 3600.0;
    const auto r = adjusted_returns(series_of({{0, 1.0}, {60, 1.1}, {200'000, 1.2}, {200'060, 1.3}}), cfg);
    EXPECT_EQ(r.size(), 2u);
    EXPECT_EQ(r.diagnostics.excluded_over_cutoff, 1u);
}

TEST(ReturnsEngine, LabelledByLaterQuote) {
    const auto r = adjusted_returns(series_of({{3599, 1.0}, {3601, 1.1}}));
    EXPECT_EQ(r.observations[0].hour, 1);
    EXPECT_EQ(r.observations[0].timestamp.seconds, 957'139'200 + 3601);
}

TEST(ReturnsEngine, ShortSeriesIsAnError) {
    EXPECT_THROW(adjusted_returns(QuoteSeries{}), Error);
}

TEST(ReturnsEngine, LogBaseScalesUniformly) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> px(0.5, 0.7);
    std::vector<QuoteTick> ticks;
    for (int i = 0; i < 100; ++i) ticks.push_back(make_tick(Instant{957'139'200 + 7 * i}, px(rng)));
    const QuoteSeries s(std::move(ticks), "b");
    ReturnsConfig ten;
    ten.log_base = 10.0;
    const auto a = adjusted_returns(s);
    const auto b = adjusted_returns(s, ten);
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_NEAR(a.observations[i].ar / std::log(10.0), b.observations[i].ar, 1e-15);
}

TEST(ReturnsEngine, TelescopingSum) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> px(0.5, 0.7);
    std::uniform_int_distribution<int> gap(1, 600);
    std::vector<QuoteTick> ticks;
    std::int64_t t = 957'139'200;
    for (int i = 0; i < 1000; ++i) {
        t += gap(rng);
        ticks.push_back(make_tick(Instant{t}, px(rng)));
    }
    const QuoteSeries s(std::move(ticks), "tele");
    const auto r = adjusted_returns(s);
    double sum = 0.0;
    for (const auto& o : r.observations) sum += o.ar * o.tau_seconds / 360.0;
    EXPECT_NEAR(sum, std::log(s[0].mid) - std::log(s[s.size() - 1].mid), 1e-12);
}

TEST(ReturnsEngine, HourlySummaryUsesSampleStd) {
    std::vector<double> v{1.0, 2.0, 3.0, 10.0};
    const Instant t0{957'139'200};
    std::vector<Instant> ts{t0, Instant{t0.seconds + 1}, Instant{t0.seconds + 2}, Instant{t0.seconds + 3600}};
    const auto rows = hourly_return_summary(returns_from_values(v, ts));
    EXPECT_EQ(rows[0].count, 3u);
    EXPECT_DOUBLE_EQ(*rows[0].mean, 2.0);
    EXPECT_DOUBLE_EQ(*rows[0].std_dev, 1.0);
    EXPECT_EQ(rows[1].count, 1u);
    EXPECT_FALSE(rows[1].std_dev);
    EXPECT_FALSE(rows[2].mean);
}

TEST(ReturnsEngine, ReturnsFromValuesLengthMismatch) {
    std::vector<double> v{1.0, 2.0};
    std::vector<Instant> ts{Instant{0}};
    EXPECT_THROW(returns_from_values(v, ts), Error);
}
