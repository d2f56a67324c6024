// hurst: command-line front end for the intraday R/S pipeline.
#include <cstdio>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "hurst/error.hpp"
#include "hurst/timestamp.hpp"
#include "json.hpp"
#include "pipeline.hpp"

namespace {

using hurst::cli::RunConfig;
using hurst::cli::SimulateConfig;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

int report_error(const std::string& kind, const std::string& module, const std::string& message, int code) {
    nlohmann::ordered_json doc{{"error", {{"kind", kind}, {"module", module}, {"message", message}, {"exit_code", code}}}};
    std::cerr << doc.dump() << '\n';
    return code;
}

struct FormatFlags {
    std::string layout = "iso8601";
    std::string origin = "1970-01-01";
    std::string tie_policy = "keep-order";
    std::string price_column;
    std::string delimiter = ",";
    std::vector<int> exclude_weekdays;
};

struct RunFlags {
    std::string input_kind = "quotes";
    std::string sign = "paper";
    std::string format = "both";
    std::string mode = "paper";
    std::string sigma = "population";
    std::string anchor = "end";
    double max_gap = 0.0;
};

void add_format_options(CLI::App* cmd, RunConfig& cfg, FormatFlags& ff) {
    cmd->add_option("--timestamp-column", cfg.format.timestamp_column, "Timestamp column name")->capture_default_str();
    cmd->add_option("--layout", ff.layout, "Timestamp layout: iso8601 | day-offset")
        ->check(CLI::IsMember({"iso8601", "day-offset"}))
        ->capture_default_str();
    cmd->add_option("--day-origin", ff.origin, "Date of day 0 for the day-offset layout (YYYY-MM-DD)")
        ->capture_default_str();
    cmd->add_option("--price-column", ff.price_column, "Single-price column (otherwise bid/ask are used)");
    cmd->add_option("--bid-column", cfg.format.bid_column, "Bid column name")->capture_default_str();
    cmd->add_option("--ask-column", cfg.format.ask_column, "Ask column name")->capture_default_str();
    cmd->add_option("--delimiter", ff.delimiter, "Field delimiter")->capture_default_str();
    cmd->add_option("--spread-tolerance", cfg.format.spread_tolerance, "Allowed ask-below-bid slack")
        ->capture_default_str();
    cmd->add_option("--tie-policy", ff.tie_policy, "keep-order | drop-later | average-price")
        ->check(CLI::IsMember({"keep-order", "drop-later", "average-price"}))
        ->capture_default_str();
    cmd->add_option("--exclude-weekday", ff.exclude_weekdays, "ISO weekday (1=Mon..7=Sun) to drop; repeatable")
        ->check(CLI::Range(1, 7));
}

void add_run_options(CLI::App* cmd, RunConfig& cfg, RunFlags& rf) {
    cmd->add_option("-i,--input", cfg.input, "Input quotes CSV (or returns CSV with --input-kind returns)");
    cmd->add_option("--input-kind", rf.input_kind, "quotes | returns")
        ->check(CLI::IsMember({"quotes", "returns"}))
        ->capture_default_str();
    cmd->add_option("-o,--out", cfg.output_dir, "Output directory")->capture_default_str();
    cmd->add_option("-n,--window", cfg.window_sizes, "Local Hurst window sizes")->capture_default_str();
    cmd->add_option("-B,--iterations", cfg.iterations, "Bootstrap scrambles")->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", cfg.master_seed, "Master seed for every random draw")->capture_default_str();
    cmd->add_option("-j,--workers", cfg.workers, "Worker threads (results do not depend on this)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--sign", rf.sign, "paper: log(Q_i)-log(Q_next); forward: the negation")
        ->check(CLI::IsMember({"paper", "forward"}))
        ->capture_default_str();
    cmd->add_option("--scale-seconds", cfg.returns.scale_seconds, "Gap adjustment numerator")->capture_default_str();
    cmd->add_option("--log-base", cfg.returns.log_base, "Log base for returns (default e)");
    cmd->add_option("--max-gap-seconds", rf.max_gap, "Exclude return pairs with a larger gap (0 = keep all)");
    cmd->add_option("--format", rf.format, "Report format: csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    cmd->add_option("--mode", rf.mode, "Percent-change convention: paper | consistent")
        ->check(CLI::IsMember({"paper", "consistent"}))
        ->capture_default_str();
    cmd->add_option("--confidence", cfg.confidence, "Bootstrap interval confidence")->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--significance", cfg.significance, "Z-test significance level")->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_flag("--dump-iterations", cfg.dump_iterations, "Write per-iteration bootstrap means");
    cmd->add_option("--global-lengths", cfg.global_lengths, "Block lengths for the global fit (default 64..N/4)");
    cmd->add_option("--sigma", rf.sigma, "Window std divisor: population | sample")
        ->check(CLI::IsMember({"population", "sample"}))
        ->capture_default_str();
    cmd->add_option("--anchor", rf.anchor, "Window hour tag from its end | start observation")
        ->check(CLI::IsMember({"end", "start"}))
        ->capture_default_str();
}

void finalize(RunConfig& cfg, const FormatFlags& ff, const RunFlags& rf) {
    using namespace hurst;
    cfg.format.layout = ff.layout == "iso8601" ? TimestampLayout::Iso8601 : TimestampLayout::DayOffset;
    const auto origin = parse_date(ff.origin);
    if (!origin) throw_usage("cli", "invalid --day-origin '" + ff.origin + "'");
    cfg.format.day_offset_origin = *origin;
    if (!ff.price_column.empty()) cfg.format.price_column = ff.price_column;
    if (ff.delimiter.size() != 1) throw_usage("cli", "--delimiter must be a single character");
    cfg.format.delimiter = ff.delimiter[0];
    static const std::map<std::string, TiePolicy> ties{{"keep-order", TiePolicy::KeepOrder},
                                                       {"drop-later", TiePolicy::DropLater},
                                                       {"average-price", TiePolicy::AveragePrice}};
    cfg.format.tie_policy = ties.at(ff.tie_policy);
    cfg.format.excluded_weekdays.insert(ff.exclude_weekdays.begin(), ff.exclude_weekdays.end());

    cfg.input_kind = rf.input_kind == "quotes" ? cli::InputKind::Quotes : cli::InputKind::Returns;
    cfg.returns.sign = rf.sign == "paper" ? ReturnSign::PaperLiteral : ReturnSign::Forward;
    if (rf.max_gap > 0.0) cfg.returns.max_gap_seconds = rf.max_gap;
    cfg.report_format = rf.format == "csv" ? cli::ReportFormat::Csv
                        : rf.format == "json" ? cli::ReportFormat::Json
                                              : cli::ReportFormat::Both;
    cfg.mode = rf.mode == "paper" ? PercentChangeMode::Paper : PercentChangeMode::Consistent;
    cfg.window_options.divisor = rf.sigma == "population" ? SigmaDivisor::Population : SigmaDivisor::Sample;
    cfg.window_options.anchor = rf.anchor == "end" ? WindowAnchor::End : WindowAnchor::Start;
}

void print_result(const hurst::cli::CommandResult& result) {
    for (const auto& f : result.files) std::cout << (result.output_dir / f).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local and global Hurst exponents of intraday quote data"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file of option defaults (flags override it)");

    RunConfig cfg;
    FormatFlags ff;
    RunFlags rf;

    auto* ingest = app.add_subcommand("ingest", "Parse quotes; write the hour x weekday crosstab and rejects");
    auto* returns = app.add_subcommand("returns", "Compute tau-adjusted returns");
    auto* analyze = app.add_subcommand("analyze", "Full pipeline: streams, global fit, bootstrap, tables, figures");
    auto* bootstrap = app.add_subcommand("bootstrap", "Scramble bootstrap and Z-tests only");
    for (auto* cmd : {ingest, returns, analyze, bootstrap}) {
        add_format_options(cmd, cfg, ff);
        add_run_options(cmd, cfg, rf);
    }
    bool paper_mode = false;
    analyze->add_flag("--paper-mode", paper_mode, "Force every methodology setting to its default");

    SimulateConfig sim;
    std::string start = "2000-05-01T00:00:00Z";
    std::string method = "circulant";
    auto* simulate = app.add_subcommand("simulate", "Generate fractional Gaussian or IID Gaussian noise");
    simulate->add_option("--kind", sim.kind, "fgn | iid")->check(CLI::IsMember({"fgn", "iid"}))->capture_default_str();
    simulate->add_option("-H,--hurst", sim.spec.hurst_h, "Hurst exponent in (0, 1)")->capture_default_str();
    simulate->add_option("-N,--length", sim.spec.length, "Number of values")->required();
    simulate->add_option("--seed", sim.spec.seed, "Generator seed")->capture_default_str();
    simulate->add_option("--variance", sim.spec.variance, "Marginal variance")->capture_default_str();
    simulate->add_option("--start", start, "First timestamp (ISO-8601)")->capture_default_str();
    simulate->add_option("--spacing", sim.spec.timeline.spacing_seconds, "Seconds between values")
        ->capture_default_str();
    simulate->add_option("--method", method, "circulant | hosking")
        ->check(CLI::IsMember({"circulant", "hosking"}))
        ->capture_default_str();
    simulate->add_option("-o,--out", sim.output_dir, "Output directory")->capture_default_str();
    simulate->add_option("--name", sim.name, "Base file name")->capture_default_str();

    std::filesystem::path report_dir = "out";
    int table = 2;
    std::string report_format = "text";
    auto* report = app.add_subcommand("report", "Print a Table 1/2/3 analogue from an output directory");
    report->add_option("-d,--dir", report_dir, "Directory written by ingest/analyze")->capture_default_str();
    report->add_option("-t,--table", table, "1, 2 or 3")->check(CLI::Range(1, 3))->capture_default_str();
    report->add_option("--format", report_format, "text | csv | json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("usage", "cli", e.what(), kUsage);
    }

    try {
        if (*simulate) {
            const auto t = hurst::parse_iso8601(start);
            if (!t) throw hurst::Error(hurst::ErrorKind::Usage, "cli", "invalid --start '" + start + "'");
            sim.spec.timeline.start = *t;
            sim.method = method == "hosking" ? hurst::FgnMethod::Hosking : hurst::FgnMethod::CirculantEmbedding;
            print_result(hurst::cli::cmd_simulate(sim));
        } else if (*report) {
            std::cout << hurst::cli::cmd_report(report_dir, table, report_format);
        } else {
            finalize(cfg, ff, rf);
            if (paper_mode) hurst::cli::apply_paper_mode(cfg);
            if (*ingest) print_result(hurst::cli::cmd_ingest(cfg));
            if (*returns) print_result(hurst::cli::cmd_returns(cfg));
            if (*analyze) print_result(hurst::cli::cmd_analyze(cfg));
            if (*bootstrap) print_result(hurst::cli::cmd_bootstrap(cfg));
        }
    } catch (const hurst::Error& e) {
        const int code = e.kind() == hurst::ErrorKind::Usage  ? kUsage
                         : e.kind() == hurst::ErrorKind::Data ? kData
                                                              : kInternal;
        return report_error(hurst::to_string(e.kind()), e.module(), e.what(), code);
    } catch (const std::exception& e) {
        return report_error("internal", "cli", e.what(), kInternal);
    }
    return kOk;
}
