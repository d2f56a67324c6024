#include "pipeline.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "hurst/error.hpp"
#include "hurst/reports.hpp"
#include "hurst/resample.hpp"
#include "json.hpp"

namespace hurst::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
constexpr const char* kModule = "cli";

bool wants_csv(ReportFormat f) { return f != ReportFormat::Json; }
bool wants_json(ReportFormat f) { return f != ReportFormat::Csv; }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_data(kModule, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require_input(const RunConfig& config) {
    if (config.input.empty()) throw_usage(kModule, "no input file given");
    if (!fs::exists(config.input)) throw_data(kModule, "input file not found: '" + config.input.string() + "'");
}

struct Loaded {
    std::optional<IngestResult> ingest;
    ReturnSeries returns;
};

Loaded load(const RunConfig& config) {
    require_input(config);
    Loaded out;
    if (config.input_kind == InputKind::Returns) {
        out.returns = report::read_returns_file(config.input.string());
        return out;
    }
    out.ingest = parse_quote_file(config.input.string(), config.format);
    out.returns = adjusted_returns(out.ingest->series, config.returns);
    return out;
}

void write_ingest_outputs(ArtifactWriter& w, const IngestResult& ingest, ReportFormat format) {
    const auto table = crosstab_by_hour_weekday(ingest.series);
    if (wants_csv(format)) w.write("crosstab.csv", report::crosstab_csv(table));
    if (wants_json(format)) w.write("crosstab.json", report::crosstab_json(table, report::arrival_anova(ingest.series)));
    w.write("rejects.csv", report::rejects_csv(ingest.rejects));
    w.write("fig1.csv", report::fig1_csv(table));

    const auto& s = ingest.series;
    ordered_json summary{{"source", s.source_label()},
                         {"quotes", s.size()},
                         {"first", format_iso8601(s.first())},
                         {"last", format_iso8601(s.last())},
                         {"calendar_days", day_number(s.last()) - day_number(s.first()) + 1},
                         {"rejected_rows", ingest.rejects.size()},
                         {"tie_runs", ingest.tie_runs_resolved},
                         {"excluded_by_weekday", ingest.excluded_by_weekday}};
    w.write("quotes_summary.json", summary.dump(2) + "\n");
}

BootstrapConfig bootstrap_config(const RunConfig& config) {
    BootstrapConfig bc;
    bc.iterations = config.iterations;
    bc.window_sizes = config.window_sizes;
    bc.master_seed = config.master_seed;
    bc.confidence = config.confidence;
    bc.workers = config.workers;
    bc.window_options = config.window_options;
    bc.keep_iteration_means = config.dump_iterations;
    return bc;
}

std::vector<ZTestResult> z_tests(const std::vector<LocalHurstStream>& streams,
                                 const std::vector<BootstrapSummary>& summaries, double significance) {
    std::vector<ZTestResult> out;
    for (const auto& stream : streams)
        for (const auto& summary : summaries)
            if (summary.n == stream.n && summary.std_h && *summary.std_h > 0.0 && !stream.windows.empty())
                out.push_back(z_test(stream, summary, significance));
    return out;
}

CommandResult finish(ArtifactWriter& w, const std::string& command) {
    w.finish(command);
    CommandResult r;
    r.output_dir = w.dir();
    for (const auto& [name, hash] : w.hashes()) r.files.push_back(name);
    r.files.push_back("manifest.json");
    return r;
}

std::string render_text(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    std::vector<std::size_t> widths;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (widths.size() < cells.size()) widths.resize(cells.size(), 0);
        for (std::size_t i = 0; i < cells.size(); ++i) widths[i] = std::max(widths[i], cells[i].size());
        rows.push_back(std::move(cells));
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << std::setw(static_cast<int>(widths[i])) << row[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace

std::string sha256_hex(const std::string& content) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(content.data(), content.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw_internal(kModule, "SHA-256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}

ArtifactWriter::ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw_data(kModule, "cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void ArtifactWriter::write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_data(kModule, "cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw_data(kModule, "write failed for '" + path.string() + "'");
    hashes_[name] = sha256_hex(content);
}

fs::path ArtifactWriter::finish(const std::string& command) {
    ordered_json files = ordered_json::array();
    for (const auto& [name, hash] : hashes_) files.push_back({{"file", name}, {"sha256", hash}});
    const ordered_json doc{{"command", command}, {"artifacts", files}};
    const fs::path path = dir_ / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_data(kModule, "cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
    return path;
}

CommandResult cmd_ingest(const RunConfig& config) {
    require_input(config);
    const auto ingest = parse_quote_file(config.input.string(), config.format);
    ArtifactWriter w(config.output_dir);
    write_ingest_outputs(w, ingest, config.report_format);
    return finish(w, "ingest");
}

CommandResult cmd_returns(const RunConfig& config) {
    const auto loaded = load(config);
    ArtifactWriter w(config.output_dir);
    w.write("returns.csv", report::returns_csv(loaded.returns));
    w.write("returns_diagnostics.json", report::returns_diagnostics_json(loaded.returns));
    return finish(w, "returns");
}

CommandResult cmd_bootstrap(const RunConfig& config) {
    const auto loaded = load(config);
    const auto values = loaded.returns.values();
    const auto stamps = loaded.returns.timestamps();
    const auto summaries = bootstrap_local_hurst(values, stamps, bootstrap_config(config));

    std::vector<LocalHurstStream> streams;
    for (std::size_t n : config.window_sizes)
        streams.push_back(local_hurst_stream(values, n, stamps, config.window_options));

    ArtifactWriter w(config.output_dir);
    w.write("bootstrap.json", report::bootstrap_json(summaries));
    w.write("ztest.json", report::ztest_json(z_tests(streams, summaries, config.significance)));
    if (config.dump_iterations) w.write("bootstrap_iterations.csv", report::iteration_means_csv(summaries));
    return finish(w, "bootstrap");
}

CommandResult cmd_analyze(const RunConfig& config) {
    if (config.window_sizes.empty()) throw_usage(kModule, "at least one window size is required");
    const auto loaded = load(config);
    const auto& returns = loaded.returns;
    const auto values = returns.values();
    const auto stamps = returns.timestamps();

    ArtifactWriter w(config.output_dir);
    if (loaded.ingest) write_ingest_outputs(w, *loaded.ingest, config.report_format);
    w.write("returns.csv", report::returns_csv(returns));
    w.write("returns_diagnostics.json", report::returns_diagnostics_json(returns));

    std::vector<LocalHurstStream> streams;
    for (std::size_t n : config.window_sizes) {
        streams.push_back(local_hurst_stream(values, n, stamps, config.window_options));
        w.write("stream_n" + std::to_string(n) + ".csv", report::stream_csv(streams.back()));
    }

    const auto lengths = config.global_lengths.empty() ? default_block_lengths(values.size()) : config.global_lengths;
    if (lengths.size() >= 3) {
        const auto fit = global_hurst(values, lengths, config.window_options.divisor);
        w.write("global_hurst.json", report::global_fit_json(fit, values.size()));
    }

    const auto summaries = bootstrap_local_hurst(values, stamps, bootstrap_config(config));
    w.write("bootstrap.json", report::bootstrap_json(summaries));
    if (config.dump_iterations) w.write("bootstrap_iterations.csv", report::iteration_means_csv(summaries));
    w.write("ztest.json", report::ztest_json(z_tests(streams, summaries, config.significance)));

    const auto table2 = report::build_table2(returns, streams, summaries);
    if (wants_csv(config.report_format)) w.write("table2.csv", report::table2_csv(table2));
    if (wants_json(config.report_format)) w.write("table2.json", report::table2_json(table2));
    w.write("fig2.csv", report::fig2_csv(table2.returns));
    w.write("fig3.csv", report::fig3_csv(table2));

    if (streams.size() >= 2) {
        const auto table3 = decomposition_table(streams[0], streams[1], config.mode);
        if (wants_csv(config.report_format)) w.write("table3.csv", report::table3_csv(table3));
        if (wants_json(config.report_format)) w.write("table3.json", report::table3_json(table3));
    }
    return finish(w, "analyze");
}

void apply_paper_mode(RunConfig& config) {
    const RunConfig defaults;
    config.window_sizes = defaults.window_sizes;
    config.iterations = defaults.iterations;
    config.returns = defaults.returns;
    config.mode = defaults.mode;
    config.confidence = defaults.confidence;
    config.significance = defaults.significance;
    config.global_lengths = defaults.global_lengths;
    config.window_options = defaults.window_options;
}

CommandResult cmd_simulate(const SimulateConfig& config) {
    SyntheticSeries series;
    if (config.kind == "fgn") {
        series = gen_fgn(config.spec, config.method);
    } else if (config.kind == "iid") {
        series = gen_gaussian_iid(config.spec.length, config.spec.seed, config.spec.variance, config.spec.timeline);
    } else {
        throw_usage(kModule, "unknown simulation kind '" + config.kind + "'");
    }
    ArtifactWriter w(config.output_dir);
    w.write(config.name + ".csv", report::synthetic_csv(series));
    w.write(config.name + ".json", report::synthetic_sidecar_json(series));
    return finish(w, "simulate");
}

std::string cmd_report(const fs::path& dir, int table, const std::string& format) {
    if (table < 1 || table > 3) throw_usage(kModule, "table must be 1, 2 or 3");
    const std::string stem = table == 1 ? "crosstab" : "table" + std::to_string(table);
    if (format == "json") return read_file(dir / (stem + ".json"));
    if (format == "csv") return read_file(dir / (stem + ".csv"));
    if (format == "text") return render_text(read_file(dir / (stem + ".csv")));
    throw_usage(kModule, "format must be text, csv or json");
}

}  // namespace hurst::cli
