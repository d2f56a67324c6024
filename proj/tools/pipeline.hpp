#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hurst/quote_ingest.hpp"
#include "hurst/returns_engine.hpp"
#include "hurst/rs_hurst.hpp"
#include "hurst/session_stats.hpp"
#include "hurst/synthetic.hpp"

namespace hurst::cli {

enum class InputKind { Quotes, Returns };
enum class ReportFormat { Csv, Json, Both };

/// Every knob of a pipeline run. Defaults are the reference methodology:
/// 10- and 20-quote windows, 1000 scrambles, 360/tau scaling.
struct RunConfig {
    std::filesystem::path input;
    InputKind input_kind = InputKind::Quotes;
    FormatConfig format{};
    std::vector<std::size_t> window_sizes{10, 20};
    std::size_t iterations = 1000;
    std::uint64_t master_seed = 20000505;
    unsigned workers = 1;
    ReturnsConfig returns{};
    std::filesystem::path output_dir = "out";
    ReportFormat report_format = ReportFormat::Both;
    PercentChangeMode mode = PercentChangeMode::Paper;
    double confidence = 0.95;
    double significance = 0.05;
    bool dump_iterations = false;
    std::vector<std::size_t> global_lengths;  // empty: default grid
    LocalHurstOptions window_options{};
};

struct SimulateConfig {
    std::string kind = "fgn";  // fgn | iid
    FgnSpec spec{};
    FgnMethod method = FgnMethod::CirculantEmbedding;
    std::filesystem::path output_dir = "out";
    std::string name = "series";
};

/// Writes files into one directory and records a SHA-256 per file; the
/// manifest lists every artifact written through it.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path dir);

    void write(const std::string& name, const std::string& content);
    /// Writes manifest.json and returns its path.
    std::filesystem::path finish(const std::string& command);

    const std::map<std::string, std::string>& hashes() const noexcept { return hashes_; }
    const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path dir_;
    std::map<std::string, std::string> hashes_;
};

std::string sha256_hex(const std::string& content);

struct CommandResult {
    std::filesystem::path output_dir;
    std::vector<std::string> files;  // relative names, manifest included
};

/// Resets every methodology setting (windows, scrambles, return convention,
/// percent-change mode, interval, window options, global grid) to its
/// default. Input, output, seed and worker settings are kept.
void apply_paper_mode(RunConfig& config);

CommandResult cmd_ingest(const RunConfig& config);
CommandResult cmd_returns(const RunConfig& config);
CommandResult cmd_analyze(const RunConfig& config);
CommandResult cmd_bootstrap(const RunConfig& config);
CommandResult cmd_simulate(const SimulateConfig& config);

/// Renders one table file from an analyze/ingest output directory.
/// table: 1, 2 or 3; format: text | csv | json.
std::string cmd_report(const std::filesystem::path& dir, int table, const std::string& format);

}  // namespace hurst::cli
