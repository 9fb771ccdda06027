// Command-line front end for the interference-model similarity toolkit.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "imsim/analytic.hpp"
#include "imsim/io.hpp"
#include "imsim/montecarlo.hpp"
#include "imsim/propagation.hpp"
#include "imsim/quadrature.hpp"
#include "imsim/reproduce.hpp"
#include "imsim/similarity.hpp"
#include "imsim/special.hpp"

namespace {

using namespace imsim;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string scenario = "s1";
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    int threads = 0;
    bool seed_set = false, trials_set = false, threads_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key=value config file");
    cmd->add_option("--set", opts.overrides, "config override key=value (repeatable)");
    cmd->add_option("--scenario", opts.scenario, "preset to start from: s1|s2|s3|s4");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--format", opts.format, "csv|json (csv also writes the json sidecar)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed, "master seed")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--trials", opts.trials, "number of topologies")
        ->each([&](const std::string&) { opts.trials_set = true; });
    cmd->add_option("--threads", opts.threads, "worker threads")
        ->each([&](const std::string&) { opts.threads_set = true; });
}

ScenarioId scenario_id(const std::string& name) {
    if (name == "s1") return ScenarioId::S1;
    if (name == "s2") return ScenarioId::S2;
    if (name == "s3") return ScenarioId::S3;
    if (name == "s4") return ScenarioId::S4;
    throw std::invalid_argument("unknown scenario '" + name + "' (want s1|s2|s3|s4)");
}

ScenarioConfig build_config(const CommonOpts& opts) {
    ScenarioConfig cfg = preset(scenario_id(opts.scenario));
    if (!opts.config_path.empty()) cfg = load_config_file(opts.config_path, cfg);
    for (const std::string& kv : opts.overrides) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        }
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opts.seed_set) cfg.seed = opts.seed;
    if (opts.trials_set) cfg.trials = opts.trials;
    if (opts.threads_set) cfg.threads = opts.threads;
    cfg = resolve_config(cfg);
    return cfg;
}

std::vector<double> parse_values(const std::string& text) {
    // comma list "1,2,3" or range "lo:hi:step"
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double lo, hi, step;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0) {
            throw std::invalid_argument("range must be lo:hi:step with step > 0");
        }
        for (double v = lo; v <= hi + 1e-9 * step; v += step) values.push_back(v);
    } else {
        size_t pos = 0;
        while (pos < text.size()) {
            size_t comma = text.find(',', pos);
            std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
            values.push_back(std::stod(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (values.empty()) throw std::invalid_argument("no sweep values given");
    return values;
}

void emit(const CommonOpts& opts, const std::string& verb,
          const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows, const nlohmann::json& sidecar) {
    std::string prefix = opts.out_dir.empty() ? std::string() : opts.out_dir + "/";
    if (opts.format == "csv") {
        std::string csv_path = prefix + timestamp_name(verb, "csv");
        write_csv(csv_path, header, rows);
        std::cerr << "wrote " << csv_path << "\n";
    }
    std::string json_path = prefix + timestamp_name(verb, "json");
    write_text(json_path, sidecar.dump(2) + "\n");
    std::cerr << "wrote " << json_path << "\n";
}

void print_summary(const RunReport& r) {
    std::printf("S=%.6f p_fa=%.6f p_md=%.6f xi=%.6f se_fa=%.2e se_md=%.2e trials=%llu\n",
                r.index.value, r.stats.p_fa, r.stats.p_md, r.stats.xi, r.stats.se_fa,
                r.stats.se_md, static_cast<unsigned long long>(r.config.trials));
}

int cmd_run(const CommonOpts& opts) {
    ScenarioConfig cfg = build_config(opts);
    RunReport report = run(cfg);
    print_summary(report);
    emit(opts, "run", report_csv_header(), {report_csv_row(report)}, report_json(report));
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& param, const std::string& values) {
    ScenarioConfig cfg = build_config(opts);
    auto points = sweep(cfg, param, parse_values(values));
    std::vector<std::string> header = report_csv_header();
    header.insert(header.begin(), {"param", "value"});
    std::vector<std::vector<std::string>> rows;
    nlohmann::json side;
    side["param"] = param;
    side["config"] = config_json(cfg);
    for (const SweepPoint& pt : points) {
        std::vector<std::string> row = report_csv_row(pt.report);
        row.insert(row.begin(), {param, format_number(pt.value)});
        rows.push_back(row);
        side["points"].push_back(
            {{"value", pt.value}, {"S", pt.report.index.value},
             {"p_fa", pt.report.stats.p_fa}, {"p_md", pt.report.stats.p_md}});
    }
    std::printf("sweep %s over %zu points: S in [%.6f, %.6f]\n", param.c_str(), points.size(),
                std::min_element(points.begin(), points.end(),
                                 [](auto& a, auto& b) {
                                     return a.report.index.value < b.report.index.value;
                                 })
                    ->report.index.value,
                std::max_element(points.begin(), points.end(),
                                 [](auto& a, auto& b) {
                                     return a.report.index.value < b.report.index.value;
                                 })
                    ->report.index.value);
    emit(opts, "sweep", header, rows, side);
    return 0;
}

int cmd_analytic(const CommonOpts& opts, const std::string& model) {
    CommonOpts o = opts;
    if (!model.empty()) o.overrides.push_back("x_model=" + model);
    ScenarioConfig cfg = build_config(o);
    AnalyticIndex idx = analytic_index(cfg);
    std::printf("S=%.8f p_fa=%.8f p_md=%.8f xi=%.8f\n", idx.value, idx.p_fa, idx.p_md, idx.xi);
    nlohmann::json side;
    side["config"] = config_json(cfg);
    side["analytic"] = analytic_json(idx);
    emit(opts, "analytic",
         {"scenario", "x_model", "S", "p_fa", "p_md", "xi"},
         {{config_to_map(cfg).at("scenario"), cfg.x_model, format_number(idx.value),
           format_number(idx.p_fa), format_number(idx.p_md), format_number(idx.xi)}},
         side);
    return 0;
}

int cmd_fit_c0(const CommonOpts& opts, const std::string& beta_grid) {
    ScenarioConfig cfg = build_config(opts);
    FitC0Result fit = fit_c0(cfg, parse_values(beta_grid));
    if (fit.flat_objective) std::cerr << "warning: flat objective, returning grid argmax\n";
    std::printf("c0=%.6f mean_index=%.6f td_percent=%.4f bd=%.4f\n", fit.c0, fit.mean_index,
                fit.throughput.naive_deviation_percent, fit.bd_marginal);
    nlohmann::json side;
    side["config"] = config_json(cfg);
    side["fit"] = fit_json(fit);
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < fit.beta_grid_db.size(); ++i) {
        rows.push_back({format_number(fit.beta_grid_db[i]), format_number(fit.index_per_beta[i]),
                        format_number(fit.c0)});
    }
    emit(opts, "fit-c0", {"beta_db", "S", "c0"}, rows, side);
    return 0;
}

int cmd_reproduce(const CommonOpts& opts, const std::string& target) {
    ReproduceOutput out =
        reproduce(target, opts.out_dir, opts.seed_set ? opts.seed : 1,
                  opts.trials_set ? opts.trials : 100000, opts.threads_set ? opts.threads : 1);
    std::printf("reproduced %s\n", target.c_str());
    std::cerr << "wrote " << out.csv_path << "\nwrote " << out.json_path << "\n";
    return 0;
}

int cmd_selfcheck() {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::printf("%-44s %s\n", name, ok ? "ok" : "FAIL");
        if (!ok) ++failures;
    };

    // special functions
    bool gamma_ok = true;
    for (double x : {0.1, 1.0, 3.0, 10.0}) {
        gamma_ok &= std::abs(upper_incomplete_gamma(1.0, x) - std::exp(-x)) < 1e-12;
    }
    gamma_ok &= std::abs(upper_incomplete_gamma(0.5, 0.0) - std::sqrt(kTwoPi / 2.0)) < 1e-12;
    check("incomplete gamma spot values", gamma_ok);

    // sector antenna: average gain over a uniformly distributed peer is 1
    bool antenna_ok = true;
    for (double theta_deg : {10.0, 20.0, 90.0, 360.0}) {
        for (double z : {0.0, 0.1, 0.5}) {
            double theta = theta_deg * kTwoPi / 360.0;
            SectorAntenna ant{theta, z};
            double mean = (theta * sector_gain(ant, true) +
                           (kTwoPi - theta) * sector_gain(ant, false)) /
                          kTwoPi;
            antenna_ok &= std::abs(mean - 1.0) < 1e-12;
        }
    }
    check("sector antenna normalization", antenna_ok);

    // published three-distribution comparison table
    std::vector<double> fx{0.05, 0.25, 0.7}, fy{0.1, 0.45, 0.45}, fz{0.25, 0.2, 0.55};
    bool ex1_ok = std::abs(euclidean_distance(fx, fy) - 0.324) < 1e-3 &&
                  std::abs(euclidean_distance(fx, fz) - 0.255) < 1e-3 &&
                  std::abs(bhattacharyya(fx, fy).second - 0.0332) < 1e-3 &&
                  std::abs(bhattacharyya(fx, fz).second - 0.0451) < 1e-3 &&
                  std::abs(kl_divergence(fx, fy) - 0.059) < 1e-3 &&
                  std::abs(kl_divergence(fx, fz) - 0.098) < 1e-3;
    check("distribution distance examples", ex1_ok);

    // interference-ball dominance on a small ensemble
    ScenarioConfig cfg = preset(ScenarioId::S1);
    cfg.trials = 1000;
    cfg.collect_histograms = false;
    ScenarioConfig cfg60 = cfg;
    cfg.r_ibm = 40.0;
    RunReport r40 = run(cfg);
    RunReport r60 = run(cfg60);
    check("ball model: no false alarms", r40.stats.p_fa == 0.0 && r60.stats.p_fa == 0.0);
    check("ball model: wider radius detects more", r40.stats.p_md >= r60.stats.p_md);

    // determinism
    RunReport again = run(cfg60);
    check("bit-identical rerun",
          again.index.value == r60.index.value && again.stats.p_fa == r60.stats.p_fa &&
              again.stats.p_md == r60.stats.p_md &&
              report_csv_row(again) == report_csv_row(r60));

    // closed form vs simulation, loose gate at this trial count
    AnalyticIndex idx = analytic_index(cfg60);
    check("closed form within coarse MC tolerance",
          std::abs(idx.value - r60.index.value) < 0.05);

    std::printf(failures == 0 ? "selfcheck passed\n" : "selfcheck FAILED (%d)\n", failures);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interference-model similarity index toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string sweep_param, sweep_values = "";
    std::string analytic_model;
    std::string beta_grid = "0:10:1";
    std::string target;

    CLI::App* c_run = app.add_subcommand("run", "Monte Carlo index estimate");
    add_common(c_run, opts);
    CLI::App* c_sweep = app.add_subcommand("sweep", "run over a parameter grid");
    add_common(c_sweep, opts);
    c_sweep->add_option("--param", sweep_param, "parameter to sweep")->required();
    c_sweep->add_option("--values", sweep_values, "comma list or lo:hi:step")->required();
    CLI::App* c_analytic = app.add_subcommand("analytic", "closed-form index");
    add_common(c_analytic, opts);
    c_analytic->add_option("--model", analytic_model, "x model: phym|ibm|prm|tim");
    CLI::App* c_fit = app.add_subcommand("fit-c0", "fit the deterministic channel constant");
    add_common(c_fit, opts);
    c_fit->add_option("--beta-grid", beta_grid, "comma list or lo:hi:step in dB");
    CLI::App* c_repro = app.add_subcommand("reproduce", "emit a published figure/table");
    add_common(c_repro, opts);
    c_repro->add_option("target", target, "fig2..fig7, table2, table3")->required();
    app.add_subcommand("selfcheck", "fast invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return 0;
        return 1;
    }

    try {
        if (c_run->parsed()) return cmd_run(opts);
        if (c_sweep->parsed()) return cmd_sweep(opts, sweep_param, sweep_values);
        if (c_analytic->parsed()) return cmd_analytic(opts, analytic_model);
        if (c_fit->parsed()) return cmd_fit_c0(opts, beta_grid);
        if (c_repro->parsed()) return cmd_reproduce(opts, target);
        return cmd_selfcheck();
    } catch (const imsim::QuadratureError& e) {
        std::cerr << "numeric non-convergence: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
