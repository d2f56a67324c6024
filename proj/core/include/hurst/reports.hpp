#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hurst/quote_ingest.hpp"
#include "hurst/resample.hpp"
#include "hurst/returns_engine.hpp"
#include "hurst/rs_hurst.hpp"
#include "hurst/session_stats.hpp"
#include "hurst/synthetic.hpp"

// CSV and JSON emitters for every table and figure-data file. Table-shaped
// CSVs round to the reference table precision; data CSVs and JSON keep full
// precision.
namespace hurst::report {

/// Fixed-point formatting; empty optional renders as an empty cell.
std::string fixed(double v, int decimals);
std::string fixed(const std::optional<double>& v, int decimals);
/// Shortest round-trip representation.
std::string exact(double v);

// Quote-level outputs.
std::string crosstab_csv(const Crosstab& table);
std::string crosstab_json(const Crosstab& table, const std::optional<AnovaResult>& arrival_anova);
std::string rejects_csv(const std::vector<RejectedRow>& rejects);
std::string fig1_csv(const Crosstab& table);

/// Gap ANOVA across hours (the arrival-time F statistic).
std::optional<AnovaResult> arrival_anova(const QuoteSeries& series);

// Returns.
std::string returns_csv(const ReturnSeries& returns);
std::string returns_diagnostics_json(const ReturnSeries& returns);
/// Reads the schema written by returns_csv.
ReturnSeries parse_returns_csv(std::istream& in);
ReturnSeries read_returns_file(const std::string& path);
std::string synthetic_csv(const SyntheticSeries& series);
std::string synthetic_sidecar_json(const SyntheticSeries& series);

// Hurst streams and fits.
std::string stream_csv(const LocalHurstStream& stream);
std::string global_fit_json(const GlobalHurstFit& fit, std::size_t series_length);
std::string bootstrap_json(const std::vector<BootstrapSummary>& summaries);
std::string iteration_means_csv(const std::vector<BootstrapSummary>& summaries);
std::string ztest_json(const std::vector<ZTestResult>& results);

struct HourlyHurst {
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> std_dev;
};

struct Table2Column {
    std::size_t n = 0;
    std::array<HourlyHurst, 24> observed{};
    std::optional<AnovaResult> anova;
    std::optional<BootstrapSummary> bootstrap;
};

/// Hourly returns, observed local Hurst and bootstrap columns, with F/p
/// footers. `bootstraps` is matched to `streams` by window size.
struct Table2 {
    std::array<HourlyReturnRow, 24> returns{};
    std::optional<AnovaResult> returns_anova;
    std::optional<KruskalWallisResult> returns_kruskal;
    std::vector<Table2Column> columns;
};

Table2 build_table2(const ReturnSeries& returns, const std::vector<LocalHurstStream>& streams,
                    const std::vector<BootstrapSummary>& bootstraps);
std::string table2_csv(const Table2& table);
std::string table2_json(const Table2& table);

std::string table3_csv(const DecompositionTable& table);
std::string table3_json(const DecompositionTable& table);

std::string fig2_csv(const std::array<HourlyReturnRow, 24>& rows);
/// Observed hourly mean h per window size, bootstrap per-hour means and the
/// per-hour normal-approximation bounds.
std::string fig3_csv(const Table2& table);

}  // namespace hurst::report
