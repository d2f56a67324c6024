#include <benchmark/benchmark.h>

#include <random>

#include "hurst/resample.hpp"
#include "hurst/rs_hurst.hpp"
#include "hurst/synthetic.hpp"

namespace {

std::vector<double> noise(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> d;
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

void BM_RescaledRange(benchmark::State& state) {
    const auto v = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hurst::rescaled_range(v));
}
BENCHMARK(BM_RescaledRange)->Arg(10)->Arg(20)->Arg(1024);

void BM_LocalHurstStream(benchmark::State& state) {
    const auto v = noise(30000);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hurst::local_hurst_stream(v, n));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_LocalHurstStream)->Arg(10)->Arg(20);

// One scramble plus both window sizes: the unit of bootstrap work.
void BM_BootstrapIteration(benchmark::State& state) {
    const auto s = hurst::gen_gaussian_iid(30000, 2);
    const auto tags10 = hurst::window_hour_tags(s.timestamps, 10);
    const auto tags20 = hurst::window_hour_tags(s.timestamps, 20);
    std::uint64_t i = 0;
    for (auto _ : state) {
        const auto x = hurst::scramble(s.values, hurst::iteration_seed(7, i++));
        benchmark::DoNotOptimize(hurst::local_hurst_means(x, 10, tags10));
        benchmark::DoNotOptimize(hurst::local_hurst_means(x, 20, tags20));
    }
}
BENCHMARK(BM_BootstrapIteration);

void BM_GenFgn(benchmark::State& state) {
    hurst::FgnSpec spec;
    spec.hurst_h = 0.7;
    spec.length = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        ++spec.seed;
        benchmark::DoNotOptimize(hurst::gen_fgn(spec));
    }
}
BENCHMARK(BM_GenFgn)->Arg(1 << 12)->Arg(1 << 14)->Arg(1 << 16);

void BM_GenFgnHosking(benchmark::State& state) {
    hurst::FgnSpec spec;
    spec.hurst_h = 0.7;
    spec.length = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hurst::gen_fgn(spec, hurst::FgnMethod::Hosking));
}
BENCHMARK(BM_GenFgnHosking)->Arg(1 << 10)->Arg(1 << 12);

}  // namespace
BENCHMARK_MAIN();
