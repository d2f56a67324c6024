#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "hurst/quote_ingest.hpp"
#include "hurst/timestamp.hpp"

namespace hurst {

enum class ReturnSign {
    PaperLiteral,  // log(Q_i) - log(Q_next)
    Forward,       // log(Q_next) - log(Q_i)
};

struct ReturnsConfig {
    ReturnSign sign = ReturnSign::PaperLiteral;
    /// Numerator of the gap adjustment; the adjusted return is
    /// logdiff * scale_seconds / tau_seconds.
    double scale_seconds = 360.0;
    /// Logarithm base; e by default.
    double log_base = std::exp(1.0);
    /// Pairs with a gap above this are excluded (e.g. weekend closes).
    std::optional<double> max_gap_seconds;
};

/// One tau-adjusted return between consecutive quotes.
struct ReturnObservation {
    double ar = 0.0;
    double tau_seconds = 0.0;
    double raw_logdiff = 0.0;
    Instant timestamp;  // later quote
    int hour = 0;
    int weekday = 1;
};

struct ReturnDiagnostics {
    std::size_t valid_quotes = 0;
    std::size_t excluded_zero_gap = 0;
    std::size_t excluded_over_cutoff = 0;
};

struct ReturnSeries {
    std::vector<ReturnObservation> observations;
    ReturnsConfig config;
    ReturnDiagnostics diagnostics;

    std::size_t size() const noexcept { return observations.size(); }
    std::vector<double> values() const;
    std::vector<Instant> timestamps() const;
    std::vector<int> hours() const;
};

/// One observation per consecutive pair with a positive gap. Throws on a
/// non-positive price or a series shorter than 2.
ReturnSeries adjusted_returns(const QuoteSeries& series, const ReturnsConfig& config = {});

/// Wraps an already-computed return sequence (synthetic data, re-read CSVs)
/// so it can flow through the same downstream stages.
ReturnSeries returns_from_values(std::span<const double> values, std::span<const Instant> timestamps,
                                 std::span<const double> tau_seconds = {});

struct HourlyReturnRow {
    int hour = 0;
    std::size_t count = 0;
    std::optional<double> mean;
    /// Sample (n-1) standard deviation; empty when count < 2.
    std::optional<double> std_dev;
};

std::array<HourlyReturnRow, 24> hourly_return_summary(const ReturnSeries& returns);

}  // namespace hurst
