#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "hurst/error.hpp"
#include "json.hpp"
#include "pipeline.hpp"

using namespace hurst;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("hurst_pipeline_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with stderr merged into the captured output.
Run run_cli(const std::string& args) {
    const std::string cmd = std::string(HURST_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path simulated_returns(const fs::path& dir, double h, std::size_t n) {
    cli::SimulateConfig sim;
    sim.spec.hurst_h = h;
    sim.spec.length = n;
    sim.spec.seed = 4;
    sim.spec.timeline.spacing_seconds = 30;
    sim.output_dir = dir;
    sim.name = "sim";
    cli::cmd_simulate(sim);
    return dir / "sim.csv";
}

cli::RunConfig analyze_config(const fs::path& input, const fs::path& out) {
    cli::RunConfig cfg;
    cfg.input = input;
    cfg.input_kind = cli::InputKind::Returns;
    cfg.iterations = 20;
    cfg.output_dir = out;
    return cfg;
}

}  // namespace

TEST(Pipeline, Sha256KnownVector) {
    EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Pipeline, IngestWritesCrosstabAndManifest) {
    const auto dir = scratch("ingest");
    cli::RunConfig cfg;
    cfg.input = fs::path(HURST_TEST_DATA_DIR) / "table1_quotes.csv";
    cfg.output_dir = dir;
    const auto res = cli::cmd_ingest(cfg);
    EXPECT_TRUE(fs::exists(dir / "crosstab.csv"));
    EXPECT_TRUE(fs::exists(dir / "crosstab.json"));
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest["command"], "ingest");
    for (const auto& a : manifest["artifacts"])
        EXPECT_EQ(a["sha256"].get<std::string>(), cli::sha256_hex(slurp(dir / a["file"].get<std::string>())));
    const auto text = cli::cmd_report(dir, 1, "text");
    EXPECT_NE(text.find("29576"), std::string::npos);
}

TEST(Pipeline, AnalyzeWritesEveryArtifact) {
    const auto dir = scratch("analyze");
    const auto input = simulated_returns(dir / "in", 0.7, 4096);
    cli::cmd_analyze(analyze_config(input, dir / "out"));
    for (const char* f : {"returns.csv", "stream_n10.csv", "stream_n20.csv", "global_hurst.json", "bootstrap.json",
                          "ztest.json", "table2.csv", "table2.json", "table3.csv", "table3.json", "fig2.csv",
                          "fig3.csv", "manifest.json"})
        EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
    const auto fit = nlohmann::json::parse(slurp(dir / "out" / "global_hurst.json"));
    EXPECT_GT(fit["exponent_h"].get<double>(), 0.55);
}

TEST(Pipeline, ManifestIndependentOfWorkers) {
    const auto dir = scratch("determinism");
    const auto input = simulated_returns(dir / "in", 0.6, 3000);
    auto cfg = analyze_config(input, dir / "a");
    cli::cmd_analyze(cfg);
    cfg.output_dir = dir / "b";
    cli::cmd_analyze(cfg);
    cfg.output_dir = dir / "c";
    cfg.workers = 3;
    cli::cmd_analyze(cfg);
    const auto a = slurp(dir / "a" / "manifest.json");
    EXPECT_EQ(a, slurp(dir / "b" / "manifest.json"));
    EXPECT_EQ(a, slurp(dir / "c" / "manifest.json"));
}

TEST(Pipeline, ModesDifferOnlyInTable3) {
    const auto dir = scratch("modes");
    const auto input = simulated_returns(dir / "in", 0.5, 3000);
    auto cfg = analyze_config(input, dir / "paper");
    cli::cmd_analyze(cfg);
    cfg.output_dir = dir / "consistent";
    cfg.mode = PercentChangeMode::Consistent;
    cli::cmd_analyze(cfg);
    for (const auto& entry : fs::directory_iterator(dir / "paper")) {
        const auto name = entry.path().filename().string();
        if (name == "manifest.json") continue;
        const bool same = slurp(entry.path()) == slurp(dir / "consistent" / name);
        EXPECT_EQ(same, name.rfind("table3", 0) != 0) << name;
    }
}

TEST(Pipeline, ReportRendersTables) {
    const auto dir = scratch("report");
    const auto input = simulated_returns(dir / "in", 0.5, 2000);
    cli::cmd_analyze(analyze_config(input, dir / "out"));
    EXPECT_EQ(cli::cmd_report(dir / "out", 2, "csv"), slurp(dir / "out" / "table2.csv"));
    EXPECT_NO_THROW(nlohmann::json::parse(cli::cmd_report(dir / "out", 3, "json")));
    EXPECT_FALSE(cli::cmd_report(dir / "out", 2, "text").empty());
    EXPECT_THROW(cli::cmd_report(dir / "out", 4, "csv"), Error);
    EXPECT_THROW(cli::cmd_report(dir / "out", 2, "xml"), Error);
}

TEST(Cli, MissingInputIsDataError) {
    const auto dir = scratch("cli_missing");
    const auto r = run_cli("ingest -i " + (dir / "nope.csv").string() + " -o " + (dir / "out").string());
    EXPECT_EQ(r.exit_code, 2);
    const auto pos = r.out.find('{');
    ASSERT_NE(pos, std::string::npos) << r.out;
    const auto err = nlohmann::json::parse(r.out.substr(pos));
    EXPECT_EQ(err["error"]["kind"], "data");
    EXPECT_EQ(err["error"]["exit_code"], 2);
    EXPECT_NE(err["error"]["message"].get<std::string>().find("nope.csv"), std::string::npos);
}

TEST(Cli, HurstBoundary) {
    const auto dir = scratch("cli_h");
    EXPECT_EQ(run_cli("simulate -H 1.0 -N 64 -o " + dir.string()).exit_code, 1);
    EXPECT_EQ(run_cli("simulate -H 0.0 -N 64 -o " + dir.string()).exit_code, 1);
    EXPECT_EQ(run_cli("simulate -H 0.9999 -N 64 -o " + dir.string()).exit_code, 0);
    EXPECT_TRUE(fs::exists(dir / "series.csv"));
}

TEST(Cli, UnknownOptionIsUsageError) {
    EXPECT_EQ(run_cli("analyze --no-such-flag").exit_code, 1);
    EXPECT_EQ(run_cli("").exit_code, 1);
}

TEST(Cli, EndToEndThroughBinary) {
    const auto dir = scratch("cli_e2e");
    ASSERT_EQ(run_cli("simulate -H 0.7 -N 2048 --spacing 30 -o " + dir.string() + " --name s").exit_code, 0);
    const auto r = run_cli("analyze -i " + (dir / "s.csv").string() + " --input-kind returns -B 10 -o " +
                           (dir / "out").string());
    EXPECT_EQ(r.exit_code, 0) << r.out;
    const auto table = run_cli("report -d " + (dir / "out").string() + " -t 3");
    EXPECT_EQ(table.exit_code, 0);
    EXPECT_NE(table.out.find("GMT"), std::string::npos);
}

TEST(Pipeline, PaperModeRestoresDefaults) {
    cli::RunConfig cfg;
    cfg.input = "x.csv";
    cfg.master_seed = 5;
    cfg.workers = 3;
    cfg.iterations = 7;
    cfg.window_sizes = {16};
    cfg.mode = PercentChangeMode::Consistent;
    cfg.returns.sign = ReturnSign::Forward;
    cfg.returns.scale_seconds = 60.0;
    cfg.window_options.divisor = SigmaDivisor::Sample;
    cli::apply_paper_mode(cfg);
    EXPECT_EQ(cfg.iterations, 1000u);
    EXPECT_EQ(cfg.window_sizes, (std::vector<std::size_t>{10, 20}));
    EXPECT_EQ(cfg.mode, PercentChangeMode::Paper);
    EXPECT_EQ(cfg.returns.sign, ReturnSign::PaperLiteral);
    EXPECT_EQ(cfg.returns.scale_seconds, 360.0);
    EXPECT_EQ(cfg.window_options.divisor, SigmaDivisor::Population);
    EXPECT_EQ(cfg.master_seed, 5u);
    EXPECT_EQ(cfg.workers, 3u);
    EXPECT_EQ(cfg.input, "x.csv");
}

TEST(Cli, PaperModeFlagOverridesMethodologyFlags) {
    const auto dir = scratch("cli_paper");
    ASSERT_EQ(run_cli("simulate -N 600 --spacing 60 -o " + dir.string() + " --name s").exit_code, 0);
    const auto r = run_cli("analyze -i " + (dir / "s.csv").string() +
                           " --input-kind returns -B 3 --mode consistent --paper-mode -o " + (dir / "out").string());
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const auto boot = nlohmann::json::parse(slurp(dir / "out" / "bootstrap.json"));
    EXPECT_EQ(boot["summaries"][0]["iterations"], 1000);
    const auto t3 = nlohmann::json::parse(slurp(dir / "out" / "table3.json"));
    EXPECT_EQ(t3["mode"], "paper");
}

TEST(Cli, ConfigFileWithFlagPrecedence) {
    const auto dir = scratch("cli_config");
    ASSERT_EQ(run_cli("simulate -N 600 --spacing 60 -o " + dir.string() + " --name s").exit_code, 0);
    {
        std::ofstream cfg(dir / "run.toml");
        cfg << "[analyze]\niterations = 4\nmode = \"consistent\"\n";
    }
    const std::string base = "--config " + (dir / "run.toml").string() + " analyze -i " + (dir / "s.csv").string() +
                             " --input-kind returns -o ";
    ASSERT_EQ(run_cli(base + (dir / "a").string()).exit_code, 0);
    auto boot = nlohmann::json::parse(slurp(dir / "a" / "bootstrap.json"));
    EXPECT_EQ(boot["summaries"][0]["iterations"], 4);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "a" / "table3.json"))["mode"], "consistent");

    ASSERT_EQ(run_cli(base + (dir / "b").string() + " -B 6").exit_code, 0);
    boot = nlohmann::json::parse(slurp(dir / "b" / "bootstrap.json"));
    EXPECT_EQ(boot["summaries"][0]["iterations"], 6);
}
