#include "imsim/reproduce.hpp"

#include <stdexcept>

#include "imsim/analytic.hpp"
#include "imsim/io.hpp"
#include "imsim/montecarlo.hpp"

namespace imsim {

namespace {

std::vector<double> linspace_step(double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
}

const std::vector<double> kDtGrid = linspace_step(10.0, 150.0, 10.0);

struct Emitter {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json sidecar;
};

ScenarioConfig base_config(ScenarioId id, std::uint64_t seed, std::uint64_t trials,
                           int threads) {
    ScenarioConfig cfg = preset(id);
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.threads = threads;
    return cfg;
}

// Accuracy vs transmitter spacing for each model under test (Scenario 1).
Emitter fig2(std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    e.header = {"x_model", "d_t", "S", "p_fa", "p_md", "xi", "S_analytic"};
    for (const std::string model : {"ibm", "prm", "tim"}) {
        ScenarioConfig cfg = base_config(ScenarioId::S1, seed, trials, threads);
        cfg.x_model = model;
        for (const SweepPoint& pt : sweep(cfg, "d_t", kDtGrid)) {
            std::string analytic;
            if (model != "tim") {
                analytic = format_number(analytic_index(pt.report.config).value);
            }
            e.rows.push_back({model, format_number(pt.value),
                              format_number(pt.report.index.value),
                              format_number(pt.report.stats.p_fa),
                              format_number(pt.report.stats.p_md),
                              format_number(pt.report.stats.xi), analytic});
        }
    }
    return e;
}

// Distribution distances (KL, Bhattacharyya) vs transmitter spacing.
Emitter fig3(std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    e.header = {"d_t", "kl", "bd", "bc", "S"};
    ScenarioConfig cfg = base_config(ScenarioId::S1, seed, trials, threads);
    cfg.x_model = "ibm";
    for (const SweepPoint& pt : sweep(cfg, "d_t", kDtGrid)) {
        const DistributionStats& d = pt.report.distributions;
        e.rows.push_back({format_number(pt.value), format_number(d.kl_marginal),
                          format_number(d.bd_marginal), format_number(d.bc_marginal),
                          format_number(pt.report.index.value)});
    }
    return e;
}

// Accuracy vs SINR threshold (Scenario 1).
Emitter fig4(std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    e.header = {"x_model", "beta_db", "S", "p_fa", "p_md"};
    for (const std::string model : {"ibm", "prm"}) {
        ScenarioConfig cfg = base_config(ScenarioId::S1, seed, trials, threads);
        cfg.x_model = model;
        for (const SweepPoint& pt : sweep(cfg, "beta_db", linspace_step(0.0, 10.0, 0.5))) {
            e.rows.push_back({model, format_number(pt.value),
                              format_number(pt.report.index.value),
                              format_number(pt.report.stats.p_fa),
                              format_number(pt.report.stats.p_md)});
        }
    }
    return e;
}

// Probability of at least one far-field interferer vs distance (closed form).
Emitter fig5(std::uint64_t, std::uint64_t, int) {
    Emitter e;
    e.header = {"d_t", "distance_m", "p_far_field"};
    for (double d_t : {30.0, 80.0}) {
        ScenarioConfig cfg = preset(ScenarioId::S2);
        cfg.d_t = d_t;
        Scenario2Params p = s2_params(cfg);
        for (double R : linspace_step(0.0, 500.0, 10.0)) {
            FarField ff = far_field(p.theta, p.lambda_t, p.eps_lambda_o, R);
            e.rows.push_back({format_number(d_t), format_number(R),
                              format_number(1.0 - ff.p_empty)});
        }
    }
    return e;
}

// Accuracy vs transmitter spacing with directionality and blockage (Scenario 2).
Emitter fig6(std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    e.header = {"x_model", "d_t", "S", "p_fa", "p_md", "xi", "S_analytic"};
    for (const std::string model : {"ibm", "prm"}) {
        ScenarioConfig cfg = base_config(ScenarioId::S2, seed, trials, threads);
        cfg.x_model = model;
        for (const SweepPoint& pt : sweep(cfg, "d_t", kDtGrid)) {
            e.rows.push_back({model, format_number(pt.value),
                              format_number(pt.report.index.value),
                              format_number(pt.report.stats.p_fa),
                              format_number(pt.report.stats.p_md),
                              format_number(pt.report.stats.xi),
                              format_number(analytic_index(pt.report.config).value)});
        }
    }
    return e;
}

// Scenario 3 (deterministic channel): accuracy vs spacing plus index bounds.
Emitter fig7(std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    e.header = {"x_model", "d_t", "S", "p_fa", "p_md", "bound_lower", "bound_upper",
                "td_gated_percent", "td_percent"};
    for (const std::string model : {"ibm", "prm"}) {
        ScenarioConfig cfg = base_config(ScenarioId::S3, seed, trials, threads);
        cfg.x_model = model;
        for (const SweepPoint& pt : sweep(cfg, "d_t", kDtGrid)) {
            std::string lower, upper;
            if (model == "prm") {
                auto bounds = s3_prm_index_bounds(s2_params(pt.report.config));
                lower = format_number(bounds.first);
                upper = format_number(bounds.second);
            }
            e.rows.push_back({model, format_number(pt.value),
                              format_number(pt.report.index.value),
                              format_number(pt.report.stats.p_fa),
                              format_number(pt.report.stats.p_md), lower, upper,
                              format_number(pt.report.throughput.deviation_percent),
                              format_number(pt.report.throughput.naive_deviation_percent)});
        }
    }
    return e;
}

// Deterministic-channel approximation of fading (Table II).
Emitter table2(std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    e.header = {"fading", "alpha", "c0", "ai", "bd", "bc", "td_percent"};
    struct Cell {
        const char* fading;
        double m;
    };
    for (const Cell& cell : {Cell{"rayleigh", 1.0}, Cell{"nakagami", 3.0}, Cell{"nakagami", 9.0}}) {
        for (double alpha : {2.0, 3.0, 4.0, 5.0}) {
            ScenarioConfig cfg = base_config(ScenarioId::S1, seed, trials, threads);
            cfg.fading = cell.fading;
            cfg.nakagami_m = cell.m;
            cfg.alpha = alpha;
            FitC0Result fit = fit_c0(cfg, linspace_step(0.0, 10.0, 1.0));
            std::string label = cfg.fading == "nakagami"
                                    ? "nakagami-" + format_number(cell.m)
                                    : cfg.fading;
            e.rows.push_back({label, format_number(alpha), format_number(fit.c0),
                              format_number(fit.mean_index), format_number(fit.bd_marginal),
                              format_number(fit.bc_marginal),
                              format_number(fit.throughput.naive_deviation_percent)});
        }
    }
    return e;
}

// Simplified-mmWave experiments (Table III).
struct Table3Row {
    double l_o, r, z, theta, d_t, d_o;
    bool no_reflection, impenetrable, no_sidelobe;
};

const Table3Row kTable3Rows[] = {
    {10, 0.63, -10, 20, 50, 20, true, false, false},
    {10, 0.74, -10, 40, 30, 20, true, false, false},
    {20, 0.90, -10, 40, 50, 50, true, false, false},
    {10, 0.74, -10, 20, 50, 50, false, true, false},
    {20, 0.74, -10, 20, 30, 50, false, true, false},
    {20, 0.74, -10, 20, 30, 20, false, true, false},
    {15, 0.74, -5, 20, 50, 20, false, false, true},
    {15, 0.74, -5, 20, 20, 50, false, false, true},
    {15, 0.74, -10, 40, 30, 20, false, false, true},
    {25, 0.90, -10, 10, 30, 30, true, true, true},
    {15, 0.63, -15, 30, 50, 50, true, true, true},
    {15, 0.74, -10, 20, 100, 50, true, true, true},
};

} // namespace

ScenarioConfig table3_config(int experiment, std::uint64_t seed, std::uint64_t trials,
                             int threads) {
    if (experiment < 1 || experiment > 12) {
        throw std::invalid_argument("table3 experiment index out of range");
    }
    const Table3Row& row = kTable3Rows[experiment - 1];
    ScenarioConfig cfg = base_config(ScenarioId::S4, seed, trials, threads);
    cfg.l_o_db = row.l_o;
    cfg.refl_coeff = row.r;
    cfg.z_db = row.z;
    cfg.theta_deg = row.theta;
    cfg.d_t = row.d_t;
    cfg.d_o = row.d_o;
    cfg.x_no_reflection = row.no_reflection;
    cfg.x_impenetrable = row.impenetrable;
    cfg.x_no_sidelobe = row.no_sidelobe;
    return cfg;
}

namespace {

Emitter table3(std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    e.header = {"experiment", "l_o_db", "refl_coeff", "z_db",    "theta_deg", "d_t",
                "d_o",        "S",      "p_fa",       "p_md",    "xi"};
    for (int i = 1; i <= 12; ++i) {
        ScenarioConfig cfg = table3_config(i, seed, trials, threads);
        RunReport report = run(cfg);
        e.rows.push_back({std::to_string(i), format_number(cfg.l_o_db),
                          format_number(cfg.refl_coeff), format_number(cfg.z_db),
                          format_number(cfg.theta_deg), format_number(cfg.d_t),
                          format_number(cfg.d_o), format_number(report.index.value),
                          format_number(report.stats.p_fa), format_number(report.stats.p_md),
                          format_number(report.stats.xi)});
    }
    return e;
}

} // namespace

std::vector<std::string> reproduce_targets() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "table2", "table3"};
}

ReproduceOutput reproduce(const std::string& target, const std::string& out_dir,
                          std::uint64_t seed, std::uint64_t trials, int threads) {
    Emitter e;
    if (target == "fig2") e = fig2(seed, trials, threads);
    else if (target == "fig3") e = fig3(seed, trials, threads);
    else if (target == "fig4") e = fig4(seed, trials, threads);
    else if (target == "fig5") e = fig5(seed, trials, threads);
    else if (target == "fig6") e = fig6(seed, trials, threads);
    else if (target == "fig7") e = fig7(seed, trials, threads);
    else if (target == "table2") e = table2(seed, trials, threads);
    else if (target == "table3") e = table3(seed, trials, threads);
    else {
        std::string msg = "unknown reproduce target '" + target + "'; choose one of:";
        for (const auto& t : reproduce_targets()) msg += " " + t;
        throw std::invalid_argument(msg);
    }
    ReproduceOutput out;
    std::string prefix = out_dir.empty() ? std::string() : out_dir + "/";
    out.csv_path = prefix + timestamp_name("reproduce-" + target, "csv");
    out.json_path = prefix + timestamp_name("reproduce-" + target, "json");
    write_csv(out.csv_path, e.header, e.rows);
    nlohmann::json sidecar;
    sidecar["target"] = target;
    sidecar["seed"] = seed;
    sidecar["trials"] = trials;
    sidecar["csv"] = out.csv_path;
    write_text(out.json_path, sidecar.dump(2) + "\n");
    return out;
}

} // namespace imsim
