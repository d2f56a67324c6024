#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hurst/timestamp.hpp"

namespace hurst {

/// Equally spaced timestamps attached to generated values.
struct SyntheticTimeline {
    Instant start{957'139'200};  // 2000-05-01T00:00:00Z, a Monday
    std::int64_t spacing_seconds = 1;
};

struct FgnSpec {
    double hurst_h = 0.5;  // open interval (0, 1)
    std::size_t length = 0;
    std::uint64_t seed = 0;
    double variance = 1.0;
    SyntheticTimeline timeline{};
};

enum class FgnMethod {
    CirculantEmbedding,  // default; falls back to Hosking if the embedding is not PSD
    Hosking,             // exact recursive conditional method, O(N^2)
};

struct SyntheticSeries {
    std::vector<double> values;
    std::vector<Instant> timestamps;
    std::string kind;    // "fgn" or "iid"
    std::string method;  // generator actually used
    double hurst_h = 0.5;
    double variance = 1.0;
    std::uint64_t seed = 0;
    SyntheticTimeline timeline{};
};

/// Autocovariance of unit-variance fGn at lag k:
/// 0.5 * (|k+1|^2H - 2|k|^2H + |k-1|^2H).
double fgn_autocovariance(std::size_t lag, double hurst_h);

/// All 2m eigenvalues of the circulant embedding of lags 0..m.
std::vector<double> circulant_eigenvalues(std::size_t m, double hurst_h);

/// Exact-covariance fractional Gaussian noise. Throws for H outside (0, 1),
/// zero length, or negative variance.
SyntheticSeries gen_fgn(const FgnSpec& spec, FgnMethod method = FgnMethod::CirculantEmbedding);

SyntheticSeries gen_gaussian_iid(std::size_t length, std::uint64_t seed, double variance = 1.0,
                                 const SyntheticTimeline& timeline = {});

std::vector<Instant> make_timeline(std::size_t length, const SyntheticTimeline& timeline);

}  // namespace hurst
