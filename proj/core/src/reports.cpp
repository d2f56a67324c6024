#include "hurst/reports.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "hurst/distributions.hpp"
#include "hurst/error.hpp"
#include "json.hpp"

namespace hurst::report {
namespace {

using nlohmann::ordered_json;
constexpr const char* kModule = "reports";
constexpr std::array<const char*, 7> kWeekdays{"mon", "tue", "wed", "thu", "fri", "sat", "sun"};

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json finite(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json anova_json(const std::optional<AnovaResult>& a) {
    if (!a) return nullptr;
    return {{"f_stat", finite(a->f_stat)},
            {"df_between", a->df_between},
            {"df_within", a->df_within},
            {"p_value", a->p_value}};
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double to_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw_data(kModule, "line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

std::array<HourlyHurst, 24> hourly_hurst(const LocalHurstStream& stream) {
    std::array<std::vector<double>, 24> groups;
    for (const auto& w : stream.windows) groups[static_cast<std::size_t>(w.hour)].push_back(w.h);
    std::array<HourlyHurst, 24> out{};
    for (std::size_t h = 0; h < 24; ++h) {
        const auto& g = groups[h];
        out[h].count = g.size();
        if (g.empty()) continue;
        double sum = 0.0;
        for (double x : g) sum += x;
        const double mean = sum / static_cast<double>(g.size());
        out[h].mean = mean;
        if (g.size() < 2) continue;
        double ss = 0.0;
        for (double x : g) ss += (x - mean) * (x - mean);
        out[h].std_dev = std::sqrt(ss / static_cast<double>(g.size() - 1));
    }
    return out;
}

template <typename F>
std::optional<AnovaResult> try_anova(F&& groups_fn) {
    try {
        const auto groups = groups_fn();
        return anova_oneway(groups);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

std::string fixed(double v, int decimals) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    // Avoid "-0.000" for values that round to zero.
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string fixed(const std::optional<double>& v, int decimals) { return v ? fixed(*v, decimals) : std::string(); }

std::string exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string crosstab_csv(const Crosstab& table) {
    std::ostringstream out;
    out << "hour";
    for (const char* d : kWeekdays) out << ',' << d;
    out << ",total,mean_gap_min,cv_gap\n";
    for (std::size_t h = 0; h < 24; ++h) {
        out << h;
        for (auto c : table.counts[h]) out << ',' << c;
        const auto& a = table.arrival[h];
        out << ',' << a.count << ',' << fixed(a.mean_gap_minutes, 2) << ',' << fixed(a.cv_gap, 2) << '\n';
    }
    out << "total";
    for (int d = 1; d <= 7; ++d) out << ',' << table.weekday_total(d);
    out << ',' << table.total << ",,\n";
    return out.str();
}

std::string crosstab_json(const Crosstab& table, const std::optional<AnovaResult>& arrival) {
    ordered_json rows = ordered_json::array();
    for (std::size_t h = 0; h < 24; ++h) {
        ordered_json row;
        row["hour"] = h;
        for (std::size_t d = 0; d < 7; ++d) row[kWeekdays[d]] = table.counts[h][d];
        const auto& a = table.arrival[h];
        row["total"] = a.count;
        row["gap_count"] = a.gap_count;
        row["mean_gap_min"] = opt(a.mean_gap_minutes);
        row["cv_gap"] = opt(a.cv_gap);
        rows.push_back(row);
    }
    ordered_json totals;
    for (int d = 1; d <= 7; ++d) totals[kWeekdays[static_cast<std::size_t>(d - 1)]] = table.weekday_total(d);
    totals["total"] = table.total;
    ordered_json doc{{"rows", rows}, {"totals", totals}, {"arrival_anova", anova_json(arrival)}};
    return doc.dump(2) + "\n";
}

std::string rejects_csv(const std::vector<RejectedRow>& rejects) {
    std::ostringstream out;
    out << "line,reason,raw\n";
    for (const auto& r : rejects) {
        std::string raw = r.raw;
        std::string quoted;
        for (char c : raw) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        out << r.line << ',' << r.reason << ",\"" << quoted << "\"\n";
    }
    return out.str();
}

std::string fig1_csv(const Crosstab& table) {
    std::ostringstream out;
    out << "hour,quote_count\n";
    for (int h = 0; h < 24; ++h) out << h << ',' << table.hour_total(h) << '\n';
    return out.str();
}

std::optional<AnovaResult> arrival_anova(const QuoteSeries& series) {
    return try_anova([&] {
        std::vector<std::vector<double>> groups(24);
        for (const auto& g : inter_quote_gaps(series)) groups[static_cast<std::size_t>(g.hour)].push_back(g.seconds);
        return groups;
    });
}

std::string returns_csv(const ReturnSeries& returns) {
    std::ostringstream out;
    out << "timestamp,tau_seconds,ar,hour,weekday\n";
    for (const auto& o : returns.observations)
        out << format_iso8601(o.timestamp) << ',' << exact(o.tau_seconds) << ',' << exact(o.ar) << ',' << o.hour
            << ',' << o.weekday << '\n';
    return out.str();
}

std::string returns_diagnostics_json(const ReturnSeries& returns) {
    const auto& c = returns.config;
    ordered_json doc{
        {"observations", returns.size()},
        {"valid_quotes", returns.diagnostics.valid_quotes},
        {"excluded_zero_gap", returns.diagnostics.excluded_zero_gap},
        {"excluded_over_cutoff", returns.diagnostics.excluded_over_cutoff},
        {"config",
         {{"sign", c.sign == ReturnSign::PaperLiteral ? "paper" : "forward"},
          {"scale_seconds", c.scale_seconds},
          {"log_base", c.log_base},
          {"max_gap_seconds", c.max_gap_seconds ? ordered_json(*c.max_gap_seconds) : ordered_json(nullptr)}}}};
    return doc.dump(2) + "\n";
}

ReturnSeries parse_returns_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw_data(kModule, "empty returns file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_line(line);
    const auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw_data(kModule, "returns file missing column '" + name + "'");
    };
    const std::size_t ts_col = col("timestamp"), tau_col = col("tau_seconds"), ar_col = col("ar");

    std::vector<double> values, taus;
    std::vector<Instant> stamps;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() < header.size()) throw_data(kModule, "line " + std::to_string(line_no) + ": too few fields");
        const auto ts = parse_iso8601(cells[ts_col]);
        if (!ts) throw_data(kModule, "line " + std::to_string(line_no) + ": bad timestamp");
        stamps.push_back(*ts);
        taus.push_back(to_double(cells[tau_col], line_no));
        values.push_back(to_double(cells[ar_col], line_no));
    }
    return returns_from_values(values, stamps, taus);
}

ReturnSeries read_returns_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_data(kModule, "cannot open '" + path + "'");
    return parse_returns_csv(in);
}

std::string synthetic_csv(const SyntheticSeries& series) {
    std::vector<double> taus(series.values.size(), static_cast<double>(series.timeline.spacing_seconds));
    return returns_csv(returns_from_values(series.values, series.timestamps, taus));
}

std::string synthetic_sidecar_json(const SyntheticSeries& series) {
    ordered_json doc{{"kind", series.kind},
                     {"method", series.method},
                     {"length", series.values.size()},
                     {"hurst_h", series.hurst_h},
                     {"variance", series.variance},
                     {"seed", series.seed},
                     {"start", format_iso8601(series.timeline.start)},
                     {"spacing_seconds", series.timeline.spacing_seconds}};
    return doc.dump(2) + "\n";
}

std::string stream_csv(const LocalHurstStream& stream) {
    std::ostringstream out;
    out << "start_index,end_timestamp,n,R,sigma,rs,h,hour\n";
    for (const auto& w : stream.windows)
        out << w.start_index << ',' << format_iso8601(w.end_timestamp) << ',' << w.n << ',' << exact(w.range_r) << ','
            << exact(w.sigma) << ',' << exact(w.rs) << ',' << exact(w.h) << ',' << w.hour << '\n';
    return out.str();
}

std::string global_fit_json(const GlobalHurstFit& fit, std::size_t series_length) {
    ordered_json points = ordered_json::array();
    for (const auto& p : fit.points) points.push_back({{"n", p.n}, {"mean_rs", p.mean_rs}});
    ordered_json doc{{"exponent_h", fit.exponent_h},
                     {"intercept", fit.intercept},
                     {"r_squared", fit.r_squared},
                     {"series_length", series_length},
                     {"points", points}};
    return doc.dump(2) + "\n";
}

std::string bootstrap_json(const std::vector<BootstrapSummary>& summaries) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : summaries) {
        ordered_json hours = ordered_json::array();
        for (std::size_t h = 0; h < 24; ++h) {
            const auto& ph = s.per_hour[h];
            hours.push_back({{"hour", h},
                             {"mean", opt(ph.mean)},
                             {"std", opt(ph.std_dev)},
                             {"iterations_with_data", ph.iterations_with_data}});
        }
        arr.push_back({{"n", s.n},
                       {"iterations", s.iterations},
                       {"master_seed", s.master_seed},
                       {"confidence", s.confidence},
                       {"mean_h", s.mean_h},
                       {"std_h", opt(s.std_h)},
                       {"ci_normal", {s.ci_normal.lower, s.ci_normal.upper}},
                       {"ci_percentile", {s.ci_percentile.lower, s.ci_percentile.upper}},
                       {"per_hour", hours}});
    }
    return ordered_json{{"summaries", arr}}.dump(2) + "\n";
}

std::string iteration_means_csv(const std::vector<BootstrapSummary>& summaries) {
    std::ostringstream out;
    out << "n,iteration,mean_h\n";
    for (const auto& s : summaries)
        for (std::size_t i = 0; i < s.iteration_means.size(); ++i)
            out << s.n << ',' << i << ',' << exact(s.iteration_means[i]) << '\n';
    return out.str();
}

std::string ztest_json(const std::vector<ZTestResult>& results) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : results)
        arr.push_back({{"n", r.n},
                       {"observed_mean", r.observed_mean},
                       {"expected", r.expected},
                       {"std_used", r.std_used},
                       {"sample_count", r.sample_count},
                       {"z", r.z},
                       {"p_two_sided", r.p_two_sided},
                       {"significance", r.significance},
                       {"reject", r.reject}});
    return ordered_json{{"tests", arr}}.dump(2) + "\n";
}

Table2 build_table2(const ReturnSeries& returns, const std::vector<LocalHurstStream>& streams,
                    const std::vector<BootstrapSummary>& bootstraps) {
    Table2 t;
    t.returns = hourly_return_summary(returns);
    const auto bundles = bundle_by_hour(returns.values(), returns.hours());
    t.returns_anova = try_anova([&] {
        std::vector<std::vector<double>> groups;
        for (const auto& b : bundles) groups.push_back(b.values);
        return groups;
    });
    try {
        t.returns_kruskal = kruskal_wallis(bundles);
    } catch (const Error&) {
    }
    for (const auto& stream : streams) {
        Table2Column col;
        col.n = stream.n;
        col.observed = hourly_hurst(stream);
        col.anova = try_anova([&] {
            std::vector<std::vector<double>> groups(24);
            for (const auto& w : stream.windows) groups[static_cast<std::size_t>(w.hour)].push_back(w.h);
            return groups;
        });
        for (const auto& b : bootstraps) {
            if (b.n != stream.n) continue;
            col.bootstrap = b;
            col.bootstrap->iteration_means.clear();
        }
        t.columns.push_back(std::move(col));
    }
    return t;
}

std::string table2_csv(const Table2& t) {
    std::ostringstream out;
    out << "GMT,mu_R,sigma_R";
    for (const auto& c : t.columns) out << ",h_" << c.n << ",sd_h_" << c.n;
    for (const auto& c : t.columns) out << ",boot_h_" << c.n << ",boot_sd_h_" << c.n;
    out << '\n';
    for (std::size_t h = 0; h < 24; ++h) {
        out << h << ',' << fixed(t.returns[h].mean, 3) << ',' << fixed(t.returns[h].std_dev, 3);
        for (const auto& c : t.columns) out << ',' << fixed(c.observed[h].mean, 4) << ',' << fixed(c.observed[h].std_dev, 4);
        for (const auto& c : t.columns) {
            if (c.bootstrap)
                out << ',' << fixed(c.bootstrap->per_hour[h].mean, 4) << ',' << fixed(c.bootstrap->per_hour[h].std_dev, 4);
            else
                out << ",,";
        }
        out << '\n';
    }
    const auto footer = [&](const char* label, auto value) {
        out << label << ',' << (t.returns_anova ? value(*t.returns_anova) : std::string()) << ',';
        for (const auto& c : t.columns) out << ',' << (c.anova ? value(*c.anova) : std::string()) << ',';
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << ",,";
        out << '\n';
    };
    footer("F-Statistic", [](const AnovaResult& a) { return fixed(a.f_stat, 2); });
    footer("p-value", [](const AnovaResult& a) { return fixed(a.p_value, 3); });

    const std::size_t lead = 3 + 2 * t.columns.size();
    const auto boot_footer = [&](const char* label, bool mean_row) {
        out << label;
        for (std::size_t i = 1; i < lead; ++i) out << ',';
        for (const auto& c : t.columns) {
            if (mean_row) {
                out << ',' << (c.bootstrap ? fixed(c.bootstrap->mean_h, 4) : std::string()) << ',';
            } else {
                out << ",," << (c.bootstrap ? fixed(c.bootstrap->std_h, 4) : std::string());
            }
        }
        out << '\n';
    };
    boot_footer("E(h_n)", true);
    boot_footer("sigma(h_n)", false);
    return out.str();
}

std::string table2_json(const Table2& t) {
    ordered_json rows = ordered_json::array();
    for (std::size_t h = 0; h < 24; ++h) {
        ordered_json row{{"hour", h},
                         {"count", t.returns[h].count},
                         {"mu_R", opt(t.returns[h].mean)},
                         {"sigma_R", opt(t.returns[h].std_dev)}};
        for (const auto& c : t.columns) {
            const std::string n = std::to_string(c.n);
            row["h_" + n] = opt(c.observed[h].mean);
            row["sd_h_" + n] = opt(c.observed[h].std_dev);
            row["windows_" + n] = c.observed[h].count;
        }
        for (const auto& c : t.columns) {
            if (!c.bootstrap) continue;
            const std::string n = std::to_string(c.n);
            row["boot_h_" + n] = opt(c.bootstrap->per_hour[h].mean);
            row["boot_sd_h_" + n] = opt(c.bootstrap->per_hour[h].std_dev);
        }
        rows.push_back(row);
    }
    ordered_json cols = ordered_json::array();
    for (const auto& c : t.columns) {
        ordered_json col{{"n", c.n}, {"anova", anova_json(c.anova)}};
        if (c.bootstrap) {
            col["expected_h"] = c.bootstrap->mean_h;
            col["bootstrap_std"] = opt(c.bootstrap->std_h);
            col["ci_normal"] = {c.bootstrap->ci_normal.lower, c.bootstrap->ci_normal.upper};
        }
        cols.push_back(col);
    }
    ordered_json kw = nullptr;
    if (t.returns_kruskal)
        kw = {{"h_stat", t.returns_kruskal->h_stat},
              {"df", t.returns_kruskal->df},
              {"p_value", t.returns_kruskal->p_value},
              {"tie_correction_applied", t.returns_kruskal->tie_correction_applied}};
    ordered_json doc{{"rows", rows},
                     {"returns_anova", anova_json(t.returns_anova)},
                     {"returns_kruskal_wallis", kw},
                     {"hurst_columns", cols}};
    return doc.dump(2) + "\n";
}

std::string table3_csv(const DecompositionTable& t) {
    const std::string a = std::to_string(t.n_small), b = std::to_string(t.n_large);
    std::ostringstream out;
    out << "GMT,R_" << a << ",log_R_" << a << ",sigma_" << a << ",log_sigma_" << a << ",R_" << b << ",log_R_" << b
        << ",sigma_" << b << ",log_sigma_" << b << ",DR_" << a << ",Dsigma_" << a << ",DR_" << b << ",Dsigma_" << b
        << ",DR_" << a << '_' << b << ",Dsigma_" << a << '_' << b << ",h_" << a << ",h_" << b << '\n';
    for (const auto& r : t.rows) {
        out << r.hour;
        if (r.empty) {
            out << std::string(16, ',') << '\n';
            continue;
        }
        out << ',' << fixed(r.small.mean_range, 1) << ',' << fixed(r.small.log_range, 3) << ','
            << fixed(r.small.mean_sigma, 2) << ',' << fixed(r.small.log_sigma, 3) << ',' << fixed(r.large.mean_range, 1)
            << ',' << fixed(r.large.log_range, 3) << ',' << fixed(r.large.mean_sigma, 2) << ','
            << fixed(r.large.log_sigma, 3) << ',' << fixed(r.dr_small, 2) << ',' << fixed(r.dsigma_small, 2) << ','
            << fixed(r.dr_large, 2) << ',' << fixed(r.dsigma_large, 2) << ',' << fixed(r.dr_cross, 2) << ','
            << fixed(r.dsigma_cross, 2) << ',' << fixed(r.small.h, 4) << ',' << fixed(r.large.h, 4) << '\n';
    }
    const auto footer = [&](const char* label, auto value) {
        const auto cell = [&](const std::optional<ColumnAnova>& c) { return c ? value(*c) : std::string(); };
        out << label << ',' << cell(t.range_small_anova) << ",," << cell(t.sigma_small_anova) << ",,"
            << cell(t.range_large_anova) << ",," << cell(t.sigma_large_anova) << std::string(9, ',') << '\n';
    };
    footer("F-statistic", [](const ColumnAnova& c) { return fixed(c.f_stat, 2); });
    footer("p-value", [](const ColumnAnova& c) { return fixed(c.p_value, 3); });
    return out.str();
}

std::string table3_json(const DecompositionTable& t) {
    const auto window = [](const WindowColumns& c) {
        return ordered_json{{"mean_range", c.mean_range},
                            {"log_range", c.log_range},
                            {"mean_sigma", c.mean_sigma},
                            {"log_sigma", c.log_sigma},
                            {"h", c.h}};
    };
    const auto col = [](const std::optional<ColumnAnova>& c) -> ordered_json {
        if (!c) return nullptr;
        return {{"f_stat", finite(c->f_stat)}, {"p_value", c->p_value}};
    };
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
        ordered_json row{{"hour", r.hour}, {"empty", r.empty}};
        if (!r.empty) {
            row["small"] = window(r.small);
            row["large"] = window(r.large);
            row["dr_small"] = opt(r.dr_small);
            row["dsigma_small"] = opt(r.dsigma_small);
            row["dr_large"] = opt(r.dr_large);
            row["dsigma_large"] = opt(r.dsigma_large);
            row["dr_cross"] = opt(r.dr_cross);
            row["dsigma_cross"] = opt(r.dsigma_cross);
        }
        rows.push_back(row);
    }
    ordered_json doc{{"n_small", t.n_small},
                     {"n_large", t.n_large},
                     {"mode", t.mode == PercentChangeMode::Paper ? "paper" : "consistent"},
                     {"rows", rows},
                     {"anova",
                      {{"range_small", col(t.range_small_anova)},
                       {"sigma_small", col(t.sigma_small_anova)},
                       {"range_large", col(t.range_large_anova)},
                       {"sigma_large", col(t.sigma_large_anova)}}}};
    return doc.dump(2) + "\n";
}

std::string fig2_csv(const std::array<HourlyReturnRow, 24>& rows) {
    std::ostringstream out;
    out << "hour,mean_return,variance\n";
    for (const auto& r : rows) {
        std::optional<double> var;
        if (r.std_dev) var = *r.std_dev * *r.std_dev;
        out << r.hour << ',' << (r.mean ? exact(*r.mean) : "") << ',' << (var ? exact(*var) : "") << '\n';
    }
    return out.str();
}

std::string fig3_csv(const Table2& t) {
    std::ostringstream out;
    out << "hour";
    for (const auto& c : t.columns) out << ",mean_h_" << c.n;
    for (const auto& c : t.columns) out << ",boot_mean_h_" << c.n << ",ci_lower_" << c.n << ",ci_upper_" << c.n;
    out << '\n';
    for (std::size_t h = 0; h < 24; ++h) {
        out << h;
        for (const auto& c : t.columns) out << ',' << (c.observed[h].mean ? exact(*c.observed[h].mean) : "");
        for (const auto& c : t.columns) {
            if (!c.bootstrap || !c.bootstrap->per_hour[h].mean) {
                out << ",,,";
                continue;
            }
            const auto& ph = c.bootstrap->per_hour[h];
            const double z = dist::normal_quantile(0.5 + c.bootstrap->confidence / 2.0);
            const double half = ph.std_dev ? z * *ph.std_dev : 0.0;
            out << ',' << exact(*ph.mean) << ',' << exact(*ph.mean - half) << ',' << exact(*ph.mean + half);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hurst::report
