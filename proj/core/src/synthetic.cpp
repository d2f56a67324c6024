#include "hurst/synthetic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <random>

#include "hurst/error.hpp"

namespace hurst {
namespace {

constexpr const char* kModule = "synthetic";

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// In-place forward DFT of a complex buffer.
void forward_dft(std::vector<std::complex<double>>& data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void validate(const FgnSpec& spec) {
    if (!(spec.hurst_h > 0.0 && spec.hurst_h < 1.0)) throw_usage(kModule, "Hurst exponent must lie in (0, 1)");
    if (spec.length == 0) throw_usage(kModule, "length must be positive");
    if (!(spec.variance >= 0.0)) throw_usage(kModule, "variance must be non-negative");
    if (spec.timeline.spacing_seconds <= 0) throw_usage(kModule, "timestamp spacing must be positive");
}

std::vector<double> hosking(std::size_t n, double hurst_h, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(k, hurst_h);

    std::vector<double> x(n), phi(n, 0.0), prev(n, 0.0);
    double v = gamma[0];
    x[0] = std::sqrt(v) * normal(rng);
    for (std::size_t t = 1; t < n; ++t) {
        // Durbin-Levinson update of the order-t prediction coefficients.
        double num = gamma[t];
        for (std::size_t j = 1; j < t; ++j) num -= prev[j] * gamma[t - j];
        const double kappa = num / v;
        phi[t] = kappa;
        for (std::size_t j = 1; j < t; ++j) phi[j] = prev[j] - kappa * prev[t - j];
        v *= (1.0 - kappa * kappa);
        double mean = 0.0;
        for (std::size_t j = 1; j <= t; ++j) mean += phi[j] * x[t - j];
        x[t] = mean + std::sqrt(std::max(v, 0.0)) * normal(rng);
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, prev.begin());
    }
    return x;
}

}  // namespace

double fgn_autocovariance(std::size_t lag, double hurst_h) {
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * hurst_h;
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(std::abs(k - 1.0), two_h));
}

std::vector<double> circulant_eigenvalues(std::size_t m, double hurst_h) {
    const std::size_t size = 2 * m;
    std::vector<std::complex<double>> row(size);
    for (std::size_t k = 0; k <= m; ++k) row[k] = fgn_autocovariance(k, hurst_h);
    for (std::size_t k = 1; k < m; ++k) row[size - k] = row[k];
    forward_dft(row);
    std::vector<double> eig(size);
    std::transform(row.begin(), row.end(), eig.begin(), [](const auto& c) { return c.real(); });
    return eig;
}

std::vector<Instant> make_timeline(std::size_t length, const SyntheticTimeline& timeline) {
    std::vector<Instant> ts(length);
    for (std::size_t i = 0; i < length; ++i)
        ts[i] = Instant{timeline.start.seconds + static_cast<std::int64_t>(i) * timeline.spacing_seconds};
    return ts;
}

SyntheticSeries gen_fgn(const FgnSpec& spec, FgnMethod method) {
    validate(spec);
    SyntheticSeries out;
    out.kind = "fgn";
    out.hurst_h = spec.hurst_h;
    out.variance = spec.variance;
    out.seed = spec.seed;
    out.timeline = spec.timeline;
    out.timestamps = make_timeline(spec.length, spec.timeline);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal;
    const double scale = std::sqrt(spec.variance);

    if (method == FgnMethod::CirculantEmbedding) {
        const std::size_t m = std::max<std::size_t>(next_pow2(spec.length), 2);
        const auto eig = circulant_eigenvalues(m, spec.hurst_h);
        const double largest = *std::max_element(eig.begin(), eig.end());
        const bool psd = std::all_of(eig.begin(), eig.end(), [&](double e) { return e >= -1e-10 * largest; });
        if (psd) {
            const std::size_t size = 2 * m;
            const auto total = static_cast<double>(size);
            std::vector<std::complex<double>> w(size);
            const auto lam = [&](std::size_t k) { return std::max(eig[k], 0.0); };
            w[0] = std::sqrt(lam(0) / total) * normal(rng);
            w[m] = std::sqrt(lam(m) / total) * normal(rng);
            for (std::size_t k = 1; k < m; ++k) {
                const double re = normal(rng);
                const double im = normal(rng);
                w[k] = std::sqrt(lam(k) / (2.0 * total)) * std::complex<double>(re, im);
                w[size - k] = std::conj(w[k]);
            }
            forward_dft(w);
            out.values.resize(spec.length);
            for (std::size_t i = 0; i < spec.length; ++i) out.values[i] = scale * w[i].real();
            out.method = "circulant";
            return out;
        }
    }
    out.values = hosking(spec.length, spec.hurst_h, rng);
    for (double& v : out.values) v *= scale;
    out.method = "hosking";
    return out;
}

SyntheticSeries gen_gaussian_iid(std::size_t length, std::uint64_t seed, double variance,
                                 const SyntheticTimeline& timeline) {
    if (length == 0) throw_usage(kModule, "length must be positive");
    if (!(variance >= 0.0)) throw_usage(kModule, "variance must be non-negative");
    if (timeline.spacing_seconds <= 0) throw_usage(kModule, "timestamp spacing must be positive");
    SyntheticSeries out;
    out.kind = "iid";
    out.method = "gaussian";
    out.variance = variance;
    out.seed = seed;
    out.timeline = timeline;
    out.timestamps = make_timeline(length, timeline);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const double scale = std::sqrt(variance);
    out.values.resize(length);
    for (double& v : out.values) v = scale * normal(rng);
    return out;
}

}  // namespace hurst
