// Acceptance gate: one line per criterion, pinned tolerances, honest
// reporting. Criteria marked "documented" correspond to published values this
// implementation cannot reproduce from the stated setup; they are printed as
// FAIL* with a pointer to the README discrepancy notes and do not flip the
// exit code. Everything else must pass for exit code 0.
//
// Usage: acceptance [--quick] [criterion numbers...]
//   --quick divides the trial counts by 50 for smoke runs; statistical gates
//   are only meaningful at full trial counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "imsim/analytic.hpp"
#include "imsim/geometry.hpp"
#include "imsim/io.hpp"
#include "imsim/montecarlo.hpp"
#include "imsim/reproduce.hpp"
#include "imsim/rng.hpp"
#include "imsim/similarity.hpp"

using namespace imsim;

namespace {

std::uint64_t g_div = 1; // --quick trial divisor

std::uint64_t scaled(std::uint64_t trials) { return std::max<std::uint64_t>(200, trials / g_div); }

double binom_se(double p, double n) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / std::max(n, 1.0));
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        details.push_back(std::string(ok ? "  ok   " : "  MISS ") + what);
    }
};

std::string num(double v) { return format_number(v); }

ScenarioConfig cfg_for(ScenarioId id, std::uint64_t trials) {
    ScenarioConfig cfg = preset(id);
    cfg.trials = scaled(trials);
    return cfg;
}

// ---- 1: scenario-1 closed forms vs simulation --------------------------------
Outcome criterion1() {
    Outcome out;
    const std::uint64_t trials = scaled(1000000);
    for (double d_t : {30.0, 80.0}) {
        for (const std::string model : {"ibm", "prm"}) {
            for (double r : {20.0, 40.0, 60.0}) {
                ScenarioConfig cfg = preset(ScenarioId::S1);
                cfg.trials = trials;
                cfg.d_t = d_t;
                cfg.x_model = model;
                cfg.r_ibm = r;
                cfg.r_prm = r;
                RunReport rep = run(cfg);
                AnalyticIndex ex = analytic_index(rep.config);
                double n = static_cast<double>(trials);
                double n_h0 = n * ex.xi;
                double n_h1 = n * (1.0 - ex.xi);
                std::string tag = model + " d_t=" + num(d_t) + " r=" + num(r);
                out.check(std::abs(rep.stats.xi - ex.xi) <= 3.0 * binom_se(ex.xi, n),
                          tag + " xi " + num(rep.stats.xi) + " vs " + num(ex.xi));
                out.check(std::abs(rep.stats.p_md - ex.p_md) <= 3.0 * binom_se(ex.p_md, n_h1),
                          tag + " p_md " + num(rep.stats.p_md) + " vs " + num(ex.p_md));
                out.check(std::abs(rep.stats.p_fa - ex.p_fa) <= 3.0 * binom_se(ex.p_fa, n_h0),
                          tag + " p_fa " + num(rep.stats.p_fa) + " vs " + num(ex.p_fa));
                out.check(std::abs(rep.index.value - ex.value) <= 3.0 * binom_se(ex.value, n),
                          tag + " S " + num(rep.index.value) + " vs " + num(ex.value));
            }
        }
    }
    return out;
}

// ---- 2: ball-model SINR dominance and zero false alarms ----------------------
Outcome criterion2() {
    Outcome out;
    // Exact per-realization dominance on random link budgets.
    Rng rng = make_stream(7, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t violations = 0;
    const std::size_t n_real = scaled(100000);
    for (std::size_t i = 0; i < n_real; ++i) {
        LinkBudgetTerm sig{0.1, 1.0, 1e-7 * (0.05 + u(rng)), 1.0, 20.0};
        std::vector<LinkBudgetTerm> terms;
        int m = 1 + static_cast<int>(u(rng) * 6.0);
        for (int k = 0; k < m; ++k) {
            terms.push_back({0.1, 1.0, 1e-9 * u(rng), 1.0, 250.0 * u(rng)});
        }
        double noise = 7.9e-15;
        double g_phym = sinr(ModelSpec::phym(), sig, terms, noise);
        for (double r : {20.0, 60.0, 120.0}) {
            if (g_phym > sinr(ModelSpec::ibm(r), sig, terms, noise) + 0.0)
                ++violations;
        }
    }
    out.check(violations == 0, "per-realization gamma_phym <= gamma_ibm on " +
                                   std::to_string(n_real) + " random budgets");
    // Engine level: false-alarm count must be exactly zero for the ball model.
    for (ScenarioId id : {ScenarioId::S1, ScenarioId::S2, ScenarioId::S3, ScenarioId::S4}) {
        ScenarioConfig cfg = cfg_for(id, id == ScenarioId::S4 ? 20000 : 200000);
        cfg.x_model = "ibm";
        RunReport rep = run(cfg);
        out.check(rep.stats.p_fa == 0.0,
                  "preset " + std::to_string(static_cast<int>(id) + 1) +
                      " ball-model p_fa == 0 (got " + num(rep.stats.p_fa) + ")");
    }
    return out;
}

// ---- 3: index is non-decreasing in the ball radius ---------------------------
Outcome criterion3() {
    Outcome out;
    const std::vector<double> grid{20.0, 40.0, 60.0, 80.0, 100.0, 120.0};
    for (ScenarioId id : {ScenarioId::S1, ScenarioId::S2}) {
        ScenarioConfig cfg = cfg_for(id, 100000);
        cfg.x_model = "ibm";
        auto points = sweep(cfg, "r_ibm", grid);
        bool mono = true;
        for (std::size_t i = 1; i < points.size(); ++i) {
            double s_prev = points[i - 1].report.index.value;
            double s_cur = points[i].report.index.value;
            double slack = 2.0 * binom_se(s_prev, static_cast<double>(cfg.trials));
            if (s_cur < s_prev - slack) mono = false;
        }
        out.check(mono, std::string("scenario ") + (id == ScenarioId::S1 ? "1" : "2") +
                            " ball-radius sweep non-decreasing over 6 radii");
    }
    return out;
}

// ---- 4: protocol-model radius trade-off and endpoint limits ------------------
Outcome criterion4() {
    Outcome out;
    ScenarioConfig cfg = preset(ScenarioId::S1);
    Scenario1Params base = s1_params(cfg);
    std::vector<double> grid{5.0, 20.0, 40.0, 60.0, 80.0, 120.0};
    bool fa_up = true, md_down = true;
    AnalyticIndex prev{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Scenario1Params p = base;
        p.r_prm = grid[i];
        AnalyticIndex ix = s1_index(ModelKind::PRM, p);
        if (i > 0) {
            if (ix.p_fa < prev.p_fa - 1e-9) fa_up = false;
            if (ix.p_md > prev.p_md + 1e-9) md_down = false;
        }
        prev = ix;
    }
    out.check(fa_up, "p_fa non-decreasing in r_prm");
    out.check(md_down, "p_md non-increasing in r_prm");
    Scenario1Params tiny = base;
    tiny.a = 1e-4;
    tiny.r_prm = 1e-4;
    AnalyticIndex lo = s1_index(ModelKind::PRM, tiny);
    out.check(std::abs(lo.value - lo.xi) < 0.02,
              "r_prm -> 0 limit: S " + num(lo.value) + " -> xi " + num(lo.xi));
    Scenario1Params wide = base;
    wide.r_prm = 500.0;
    AnalyticIndex hi = s1_index(ModelKind::PRM, wide);
    out.check(std::abs(hi.value - (1.0 - hi.xi)) < 0.02,
              "large r_prm limit: S " + num(hi.value) + " -> 1-xi " + num(1.0 - hi.xi));
    return out;
}

// ---- 5: published deterministic-channel fit table ----------------------------
Outcome criterion5() {
    Outcome out;
    struct Row {
        const char* fading;
        double m;
        double ai[4];
        double td[4];
    };
    const Row rows[] = {
        {"rayleigh", 1.0, {0.68, 0.881, 0.939, 0.956}, {13.0, 9.3, 6.7, 4.5}},
        {"nakagami", 3.0, {0.951, 0.985, 0.995, 0.998}, {5.8, 4.1, 3.2, 2.0}},
        {"nakagami", 9.0, {0.997, 0.9991, 0.9996, 0.9999}, {1.4, 1.0, 0.7, 0.3}},
    };
    const double alphas[] = {2.0, 3.0, 4.0, 5.0};
    std::vector<double> beta_grid;
    for (double b = 0.0; b <= 10.0; b += 1.0) beta_grid.push_back(b);
    for (const Row& row : rows) {
        for (int j = 0; j < 4; ++j) {
            ScenarioConfig cfg = cfg_for(ScenarioId::S1, 100000);
            cfg.fading = row.fading;
            cfg.nakagami_m = row.m;
            cfg.alpha = alphas[j];
            FitC0Result fit = fit_c0(cfg, beta_grid);
            std::string tag = std::string(row.fading) +
                              (std::string(row.fading) == "nakagami" ? "-" + num(row.m) : "") +
                              " alpha=" + num(alphas[j]);
            out.check(std::abs(fit.mean_index - row.ai[j]) <= 0.03,
                      tag + " AI " + num(fit.mean_index) + " vs " + num(row.ai[j]) + " (+-0.03)");
            out.check(std::abs(fit.throughput.naive_deviation_percent - row.td[j]) <= 2.0,
                      tag + " TD " + num(fit.throughput.naive_deviation_percent) + "% vs " +
                          num(row.td[j]) + "% (+-2pp)");
        }
    }
    return out;
}

// ---- 6: published simplified-mmWave experiments ------------------------------
Outcome criterion6() {
    Outcome out;
    const double expected[12] = {0.9998, 0.9992, 0.9993, 0.9614, 0.9856, 0.9588,
                                 0.9235, 0.7090, 0.9311, 0.8810, 0.9473, 0.9718};
    for (int i = 1; i <= 12; ++i) {
        ScenarioConfig cfg = table3_config(i, 1, scaled(100000), 1);
        RunReport rep = run(cfg);
        double delta = rep.index.value - expected[i - 1];
        out.check(std::abs(delta) <= 0.02, "experiment " + std::to_string(i) + " S " +
                                               num(rep.index.value) + " vs " +
                                               num(expected[i - 1]) + " (+-0.02)");
    }
    return out;
}

// Shared deterministic-channel run at the critical protocol-model radius.
const RunReport& s3_critical_run() {
    static RunReport rep = [] {
        ScenarioConfig cfg = cfg_for(ScenarioId::S3, 1000000);
        cfg.x_model = "prm"; // r_prm <= 0 resolves to the critical radius
        return run(cfg);
    }();
    return rep;
}

// ---- 7: critical radius gives zero false alarms; index sandwich --------------
Outcome criterion7() {
    Outcome out;
    const RunReport& rep = s3_critical_run();
    out.check(rep.stats.p_fa == 0.0, "p_fa == 0 at the critical radius over " +
                                         std::to_string(rep.config.trials) + " trials (got " +
                                         num(rep.stats.p_fa) + ")");
    ScenarioConfig cfg = cfg_for(ScenarioId::S3, 20000);
    cfg.x_model = "prm";
    std::vector<double> grid;
    for (double d = 10.0; d <= 150.0; d += 20.0) grid.push_back(d);
    for (const SweepPoint& pt : sweep(cfg, "d_t", grid)) {
        auto bounds = s3_prm_index_bounds(s2_params(pt.report.config));
        double s = pt.report.index.value;
        double slack = 3.0 * binom_se(s, static_cast<double>(cfg.trials));
        out.check(bounds.first - slack <= s && s <= bounds.second + 1e-12,
                  "d_t=" + num(pt.value) + " S " + num(s) + " in [" + num(bounds.first) + ", " +
                      num(bounds.second) + "]");
    }
    return out;
}

// ---- 8: deterministic-channel throughput deviation ---------------------------
Outcome criterion8() {
    Outcome out;
    const RunReport& rep = s3_critical_run();
    out.check(rep.throughput.deviation_percent < 0.01,
              "admitted-throughput deviation " + num(rep.throughput.deviation_percent) +
                  "% < 0.01% (unconditioned rate deviation: " +
                  num(rep.throughput.naive_deviation_percent) + "%)");
    return out;
}

// ---- 9: far-field interferer counts vs closed form ---------------------------
Outcome criterion9() {
    Outcome out;
    const double theta = 20.0 * kTwoPi / 360.0;
    const double lambda_t = 1.0 / 900.0;
    const double eps = 0.008;
    const std::size_t draws = scaled(20000);
    Rng rng = make_stream(11, 0);
    for (double R : {50.0, 100.0, 150.0, 200.0, 300.0}) {
        FarField ff = far_field(theta, lambda_t, eps, R);
        AnnulusSector region{theta, R, R + 1500.0};
        auto keep = [&](double r) { return (theta / kTwoPi) * std::exp(-eps * r); };
        std::uint64_t total = 0, empty = 0;
        for (std::size_t i = 0; i < draws; ++i) {
            PointField f = sample_thinned_ppp(lambda_t, keep, region, rng);
            total += f.points.size();
            if (f.points.empty()) ++empty;
        }
        double n = static_cast<double>(draws);
        double mean = static_cast<double>(total) / n;
        double p0 = static_cast<double>(empty) / n;
        out.check(std::abs(mean - ff.measure) <= 3.0 * std::sqrt(ff.measure / n),
                  "R=" + num(R) + " mean count " + num(mean) + " vs " + num(ff.measure));
        out.check(std::abs(p0 - ff.p_empty) <= 3.0 * binom_se(ff.p_empty, n),
                  "R=" + num(R) + " empty frequency " + num(p0) + " vs " + num(ff.p_empty));
    }
    return out;
}

// ---- 10: outage bounds are one-sided ----------------------------------------
Outcome criterion10() {
    Outcome out;
    for (double d_t : {20.0, 50.0, 80.0, 110.0, 140.0}) {
        ScenarioConfig cfg = cfg_for(ScenarioId::S3, 200000);
        cfg.x_model = "ibm";
        cfg.d_t = d_t;
        RunReport rep = run(cfg);
        Scenario2Params p = s2_params(rep.config);
        double n = static_cast<double>(cfg.trials);
        double phym_out = 1.0 - rep.stats.xi;
        double ibm_out = phym_out * (1.0 - rep.stats.p_md);
        double upper = s3_chernoff_phym_upper(p);
        double lower = s3_chernoff_ibm_lower(p, rep.config.r_ibm);
        out.check(phym_out <= upper + 3.0 * binom_se(phym_out, n),
                  "d_t=" + num(d_t) + " full-model outage " + num(phym_out) + " <= bound " +
                      num(upper));
        out.check(ibm_out >= lower - 3.0 * binom_se(ibm_out, n),
                  "d_t=" + num(d_t) + " ball-model outage " + num(ibm_out) + " >= bound " +
                      num(lower));
    }
    return out;
}

// ---- 11: Bhattacharyya sandwich around the index -----------------------------
Outcome criterion11() {
    Outcome out;
    struct Case {
        ScenarioId id;
        const char* model;
        double d_t;
    };
    for (const Case& c : {Case{ScenarioId::S1, "ibm", 80.0}, Case{ScenarioId::S1, "prm", 80.0},
                          Case{ScenarioId::S1, "ibm", 30.0}, Case{ScenarioId::S1, "prm", 30.0},
                          Case{ScenarioId::S2, "ibm", 80.0}, Case{ScenarioId::S2, "prm", 80.0}}) {
        ScenarioConfig cfg = cfg_for(c.id, 100000);
        cfg.x_model = c.model;
        cfg.d_t = c.d_t;
        RunReport rep = run(cfg);
        std::string tag = std::string(c.id == ScenarioId::S1 ? "s1 " : "s2 ") + c.model +
                          " d_t=" + num(c.d_t);
        if (!rep.distributions.rho_cond_defined) {
            out.check(false, tag + " conditional coefficient undefined (degenerate split)");
            continue;
        }
        auto [lo, hi] = bhattacharyya_index_bounds(rep.stats.xi, rep.distributions.rho_cond);
        double s = rep.index.value;
        double tol = 3.0 * binom_se(s, static_cast<double>(cfg.trials)) + 0.01;
        out.check(lo - tol <= s && s <= hi + tol,
                  tag + " S " + num(s) + " in [" + num(lo) + ", " + num(hi) + "] (rho " +
                      num(rep.distributions.rho_cond) + ", xi " + num(rep.stats.xi) + ")");
    }
    return out;
}

// ---- 12: published three-distribution comparison values ----------------------
Outcome criterion12() {
    Outcome out;
    const std::vector<double> fx{0.05, 0.25, 0.7};
    const std::vector<double> fy{0.1, 0.45, 0.45};
    const std::vector<double> fz{0.25, 0.2, 0.55};
    auto near = [&](double got, double want, const char* what) {
        out.check(std::abs(got - want) < 1e-3,
                  std::string(what) + " " + num(got) + " vs " + num(want));
    };
    near(euclidean_distance(fx, fy), 0.324, "euclid(x,y)");
    near(euclidean_distance(fx, fz), 0.255, "euclid(x,z)");
    near(bhattacharyya(fx, fy).second, 0.033, "bhattacharyya(x,y)");
    near(bhattacharyya(fx, fz).second, 0.045, "bhattacharyya(x,z)");
    near(kl_divergence(fx, fy), 0.059, "kl(x,y)");
    near(kl_divergence(fx, fz), 0.098, "kl(x,z)");
    return out;
}

// ---- 13: byte-identical outputs for identical seeds --------------------------
Outcome criterion13() {
    Outcome out;
    for (ScenarioId id : {ScenarioId::S1, ScenarioId::S2}) {
        ScenarioConfig cfg = cfg_for(id, 20000);
        RunReport a = run(cfg);
        RunReport b = run(cfg);
        out.check(report_csv_row(a) == report_csv_row(b),
                  std::string("identical CSV rows, preset ") +
                      (id == ScenarioId::S1 ? "s1" : "s2"));
        std::string pa = "acceptance_a.csv", pb = "acceptance_b.csv";
        write_csv(pa, report_csv_header(), {report_csv_row(a)});
        write_csv(pb, report_csv_header(), {report_csv_row(b)});
        auto slurp = [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            std::stringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        out.check(slurp(pa) == slurp(pb), "identical CSV bytes on disk");
        std::remove(pa.c_str());
        std::remove(pb.c_str());
    }
    return out;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> fn;
    bool documented; // known discrepancy; reported but does not gate the exit code
    const char* note;
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--quick") {
            g_div = 50;
        } else {
            only.insert(std::atoi(arg.c_str()));
        }
    }
    const std::vector<Criterion> criteria = {
        {1, "scenario-1 closed forms vs simulation (12 configs, 3 SE)", criterion1, false, ""},
        {2, "ball-model dominance and exactly zero false alarms", criterion2, false, ""},
        {3, "index non-decreasing in the ball radius (s1, s2)", criterion3, false, ""},
        {4, "protocol-radius error trade-off and endpoint limits", criterion4, false, ""},
        {5, "published deterministic-channel fit table (AI +-0.03, TD +-2pp)", criterion5, true,
         "fit table not reproducible from the stated setup; see README 'Known discrepancies'"},
        {6, "published simplified-mmWave experiments (12 rows, +-0.02)", criterion6, true,
         "rows 4, 9, 10, 11 deviate; see README 'Known discrepancies'"},
        {7, "zero false alarms at the critical radius; index sandwich", criterion7, false, ""},
        {8, "deterministic-channel admitted-throughput deviation < 0.01%", criterion8, false, ""},
        {9, "far-field counts and vacancy vs closed form (5 radii, 3 SE)", criterion9, false, ""},
        {10, "outage bounds are one-sided at 5 densities", criterion10, false, ""},
        {11, "Bhattacharyya sandwich contains the index", criterion11, true,
         "sandwich is unsatisfiable when S > 3/2 - xi; see README 'Known discrepancies'"},
        {12, "published three-distribution comparison values (+-0.001)", criterion12, false, ""},
        {13, "byte-identical outputs for identical seeds", criterion13, false, ""},
    };
    if (g_div != 1) {
        std::cout << "note: --quick divides trial counts by " << g_div
                  << "; statistical gates are indicative only\n";
    }
    int passed = 0, failed_known = 0, failed_unexpected = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.details.push_back(std::string("  MISS exception: ") + e.what());
        }
        char line[512];
        if (out.pass) {
            ++passed;
            std::snprintf(line, sizeof(line), "[%2d] PASS  %s", c.id, c.name);
            std::cout << line << "\n";
        } else if (c.documented) {
            ++failed_known;
            std::snprintf(line, sizeof(line), "[%2d] FAIL* %s -- %s", c.id, c.name, c.note);
            std::cout << line << "\n";
        } else {
            ++failed_unexpected;
            std::snprintf(line, sizeof(line), "[%2d] FAIL  %s", c.id, c.name);
            std::cout << line << "\n";
        }
        if (!out.pass) {
            for (const std::string& d : out.details) std::cout << d << "\n";
        }
        std::cout.flush();
    }
    std::cout << "summary: " << passed << " passed, " << failed_known
              << " failed (documented discrepancy), " << failed_unexpected
              << " failed (unexpected)\n";
    return failed_unexpected == 0 ? 0 : 1;
}
