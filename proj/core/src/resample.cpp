#include "hurst/resample.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "hurst/distributions.hpp"
#include "hurst/error.hpp"

namespace hurst {
namespace {

constexpr const char* kModule = "resample";

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct IterationRecord {
    double mean = 0.0;
    std::array<double, 24> hour_mean{};
    std::array<bool, 24> hour_present{};
};

std::pair<double, std::optional<double>> mean_and_std(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, std::nullopt};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

double quantile(std::vector<double> sorted, double p) {
    std::sort(sorted.begin(), sorted.end());
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::uint64_t iteration_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

std::vector<double> scramble(std::span<const double> values, std::uint64_t seed) {
    std::vector<double> out(values.begin(), values.end());
    std::mt19937_64 rng(seed);
    for (std::size_t i = out.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(out[i - 1], out[pick(rng)]);
    }
    return out;
}

std::vector<BootstrapSummary> bootstrap_local_hurst(std::span<const double> values,
                                                    std::span<const Instant> timestamps,
                                                    const BootstrapConfig& config) {
    if (config.iterations < 1) throw_usage(kModule, "bootstrap iterations must be at least 1");
    if (config.window_sizes.empty()) throw_usage(kModule, "no window sizes configured");
    if (!(config.confidence > 0.0 && config.confidence < 1.0))
        throw_usage(kModule, "confidence must lie in (0, 1)");
    if (!timestamps.empty() && timestamps.size() != values.size())
        throw_usage(kModule, "timestamps and values differ in length");
    for (std::size_t n : config.window_sizes) {
        if (n < 2) throw_usage(kModule, "window size must be at least 2");
        if (values.size() < n) throw_data(kModule, "series shorter than window size " + std::to_string(n));
    }

    const std::size_t sizes = config.window_sizes.size();
    std::vector<std::vector<int>> tags(sizes);
    for (std::size_t s = 0; s < sizes; ++s)
        tags[s] = window_hour_tags(timestamps, config.window_sizes[s], config.window_options.anchor);

    // records[iteration * sizes + s]
    std::vector<IterationRecord> records(config.iterations * sizes);
    std::vector<std::string> failures(config.iterations);

    const auto run = [&](std::size_t iteration) {
        const auto shuffled = scramble(values, iteration_seed(config.master_seed, iteration));
        for (std::size_t s = 0; s < sizes; ++s) {
            const auto acc = local_hurst_means(shuffled, config.window_sizes[s], tags[s],
                                               config.window_options.divisor);
            if (acc.count == 0 || acc.skipped * 2 > acc.count + acc.skipped) {
                failures[iteration] = "more than 50% of windows degenerate at n = " +
                                      std::to_string(config.window_sizes[s]) + " in iteration " +
                                      std::to_string(iteration);
                return;
            }
            auto& rec = records[iteration * sizes + s];
            rec.mean = acc.sum_h / static_cast<double>(acc.count);
            for (std::size_t h = 0; h < 24; ++h) {
                if (acc.hour_count[h] == 0) continue;
                rec.hour_present[h] = true;
                rec.hour_mean[h] = acc.hour_sum[h] / static_cast<double>(acc.hour_count[h]);
            }
        }
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(config.workers, static_cast<unsigned>(config.iterations)));
    if (workers == 1) {
        for (std::size_t i = 0; i < config.iterations; ++i) run(i);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < config.iterations; i += workers) run(i);
            });
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw_data(kModule, f);

    const double z = dist::normal_quantile(0.5 + config.confidence / 2.0);
    std::vector<BootstrapSummary> out;
    for (std::size_t s = 0; s < sizes; ++s) {
        BootstrapSummary summary;
        summary.n = config.window_sizes[s];
        summary.iterations = config.iterations;
        summary.master_seed = config.master_seed;
        summary.confidence = config.confidence;

        std::vector<double> means(config.iterations);
        for (std::size_t i = 0; i < config.iterations; ++i) means[i] = records[i * sizes + s].mean;
        const auto [mean, sd] = mean_and_std(means);
        summary.mean_h = mean;
        summary.std_h = sd;
        const double half = sd ? z * *sd : 0.0;
        summary.ci_normal = {mean - half, mean + half};
        summary.ci_percentile = {quantile(means, 0.5 - config.confidence / 2.0),
                                 quantile(means, 0.5 + config.confidence / 2.0)};

        for (std::size_t h = 0; h < 24; ++h) {
            std::vector<double> hour_means;
            for (std::size_t i = 0; i < config.iterations; ++i) {
                const auto& rec = records[i * sizes + s];
                if (rec.hour_present[h]) hour_means.push_back(rec.hour_mean[h]);
            }
            auto& slot = summary.per_hour[h];
            slot.iterations_with_data = hour_means.size();
            if (hour_means.empty()) continue;
            const auto [hm, hs] = mean_and_std(hour_means);
            slot.mean = hm;
            slot.std_dev = hs;
        }
        if (config.keep_iteration_means) summary.iteration_means = std::move(means);
        out.push_back(std::move(summary));
    }
    return out;
}

ZTestResult z_test(double observed_mean, double expected, double std_used, std::size_t sample_count,
                   double significance) {
    if (!(std_used > 0.0)) throw_data(kModule, "z-test standard deviation must be positive");
    if (sample_count == 0) throw_data(kModule, "z-test needs at least one observation");
    ZTestResult r;
    r.observed_mean = observed_mean;
    r.expected = expected;
    r.std_used = std_used;
    r.sample_count = sample_count;
    r.significance = significance;
    r.z = (observed_mean - expected) / (std_used / std::sqrt(static_cast<double>(sample_count)));
    r.p_two_sided = dist::normal_two_sided_p(r.z);
    r.reject = r.p_two_sided < significance;
    return r;
}

ZTestResult z_test(const LocalHurstStream& observed, const BootstrapSummary& summary, double significance) {
    if (observed.n != summary.n) throw_usage(kModule, "stream and bootstrap window sizes differ");
    if (observed.windows.empty()) throw_data(kModule, "observed stream is empty");
    if (!summary.std_h) throw_data(kModule, "bootstrap std undefined (fewer than 2 iterations)");
    auto r = z_test(observed.mean_h(), summary.mean_h, *summary.std_h, observed.windows.size(), significance);
    r.n = observed.n;
    return r;
}

}  // namespace hurst
