#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "engine_internal.hpp"
#include "imsim/geometry.hpp"
#include "imsim/montecarlo.hpp"
#include "imsim/propagation.hpp"
#include "imsim/rng.hpp"

namespace imsim {

namespace {

// Sufficient statistics of one topology for the deterministic-channel fit:
// gamma_y = p h0 s0 / (p H + sigma) and gamma_x(c0) = p c0 s0 / (p c0 G + sigma),
// where H = sum h_k g_k and G = sum g_k over the interferers (g_k includes the
// analytic mean of the truncated tail where it exists).
struct TrialStats {
    double h0;
    double sum_hg; // H
    double sum_g;  // G
};

struct BetaTable {
    // x declares outage iff c0 < threshold (sorted ascending, +inf = always).
    std::vector<double> thresholds;
    std::vector<std::uint32_t> y_out_prefix; // prefix counts of y-outage in sorted order
    std::uint64_t y_out_total = 0;

    double index_at(double c0) const {
        std::uint64_t n = thresholds.size();
        std::uint64_t idx = std::upper_bound(thresholds.begin(), thresholds.end(), c0) -
                            thresholds.begin(); // trials with threshold <= c0: x says no outage
        std::uint64_t agree_clear = idx - y_out_prefix[idx];
        std::uint64_t agree_outage = y_out_total - y_out_prefix[idx];
        return static_cast<double>(agree_clear + agree_outage) / n;
    }
};

double tail_mean_g(const ScenarioConfig& cfg, double R) {
    // per-trial mean of sum g_k beyond R with unit-mean fading (alpha > 2 only)
    if (cfg.alpha <= 2.0) return 0.0;
    double c = db_to_linear(cfg.c_db);
    return kTwoPi * cfg.lambda_t() * c * std::pow(R, 2.0 - cfg.alpha) / (cfg.alpha - 2.0);
}

} // namespace

FitC0Result fit_c0(const ScenarioConfig& config, const std::vector<double>& beta_grid_db,
                   double c0_lo, double c0_hi) {
    auto t0 = std::chrono::steady_clock::now();
    if (beta_grid_db.empty()) throw std::invalid_argument("fit_c0: empty beta grid");
    if (!(c0_lo > 0.0 && c0_hi > c0_lo)) throw std::invalid_argument("fit_c0: bad c0 range");
    ScenarioConfig cfg = resolve_config(config);
    if (cfg.scenario != ScenarioId::S1) {
        throw std::invalid_argument("fit_c0: deterministic-channel fit uses the S1 layout");
    }
    if (cfg.fading == "deterministic") {
        throw std::invalid_argument("fit_c0: reference fading must be random");
    }

    PathLossLaw law{db_to_linear(cfg.c_db), cfg.alpha, cfg.a};
    double p = dbm_to_watts(cfg.p_dbm);
    double sigma = dbm_to_watts(cfg.sigma_dbm);
    double s0 = path_gain(law, cfg.d0);
    double R = cfg.truncation_radius;
    double g_tail = tail_mean_g(cfg, R);
    FadingKind fading = cfg.fading == "rayleigh" ? FadingKind::rayleigh()
                                                 : FadingKind::nakagami(cfg.nakagami_m);

    // ---- sample the topology ensemble once ----
    std::vector<TrialStats> trials;
    trials.reserve(cfg.trials);
    AnnulusSector region{kTwoPi, 0.0, R};
    std::uint64_t n_chunks = (cfg.trials + detail::kChunkTrials - 1) / detail::kChunkTrials;
    for (std::uint64_t chunk = 0; chunk < n_chunks; ++chunk) {
        Rng rng = make_stream(cfg.seed, chunk);
        std::uint64_t n = chunk + 1 < n_chunks ? detail::kChunkTrials
                                               : cfg.trials - chunk * detail::kChunkTrials;
        for (std::uint64_t t = 0; t < n; ++t) {
            TrialStats s;
            s.h0 = sample_fading(fading, rng);
            PointField field = sample_homogeneous_ppp(cfg.lambda_t(), region, rng);
            double H = g_tail, G = g_tail;
            for (const PolarPoint& pt : field.points) {
                double g = path_gain(law, pt.radius);
                H += sample_fading(fading, rng) * g;
                G += g;
            }
            s.sum_hg = H;
            s.sum_g = G;
            trials.push_back(s);
        }
    }
    std::uint64_t n = trials.size();

    // ---- per-beta decision tables ----
    std::vector<BetaTable> tables(beta_grid_db.size());
    std::vector<double> thresholds(n);
    std::vector<char> y_out(n);
    std::vector<std::uint32_t> order(n);
    for (size_t b = 0; b < beta_grid_db.size(); ++b) {
        double beta = db_to_linear(beta_grid_db[b]);
        for (std::uint64_t i = 0; i < n; ++i) {
            const TrialStats& s = trials[i];
            y_out[i] = s.h0 * p * s0 < beta * (p * s.sum_hg + sigma);
            double margin = s0 - beta * s.sum_g;
            thresholds[i] = margin > 0.0 ? beta * sigma / (p * margin)
                                         : std::numeric_limits<double>::infinity();
        }
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t a, std::uint32_t c) { return thresholds[a] < thresholds[c]; });
        BetaTable& table = tables[b];
        table.thresholds.resize(n);
        table.y_out_prefix.resize(n + 1);
        table.y_out_prefix[0] = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            table.thresholds[i] = thresholds[order[i]];
            table.y_out_prefix[i + 1] = table.y_out_prefix[i] + (y_out[order[i]] ? 1 : 0);
        }
        table.y_out_total = table.y_out_prefix[n];
    }

    auto objective = [&](double c0) {
        double sum = 0.0;
        for (const BetaTable& table : tables) sum += table.index_at(c0);
        return sum / tables.size();
    };

    // ---- log-spaced grid search, then golden-section refinement ----
    const int grid_points = 240;
    double best_c0 = c0_lo, best_val = -1.0, worst_val = 2.0;
    double log_lo = std::log(c0_lo), log_hi = std::log(c0_hi);
    for (int i = 0; i < grid_points; ++i) {
        double c0 = std::exp(log_lo + (log_hi - log_lo) * i / (grid_points - 1));
        double v = objective(c0);
        worst_val = std::min(worst_val, v);
        if (v > best_val) {
            best_val = v;
            best_c0 = c0;
        }
    }
    FitC0Result result;
    result.flat_objective = best_val - worst_val < 1e-12;
    if (!result.flat_objective) {
        double step = (log_hi - log_lo) / (grid_points - 1);
        double lo = std::exp(std::log(best_c0) - step), hi = std::exp(std::log(best_c0) + step);
        const double golden = 0.61803398874989485;
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        double f1 = objective(x1), f2 = objective(x2);
        for (int it = 0; it < 60 && hi - lo > 1e-6; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = objective(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = objective(x1);
            }
        }
        double mid = 0.5 * (lo + hi);
        if (objective(mid) >= best_val) {
            best_c0 = mid;
            best_val = objective(mid);
        }
    }
    result.c0 = best_c0;
    result.mean_index = best_val;
    result.beta_grid_db = beta_grid_db;
    for (const BetaTable& table : tables) result.index_per_beta.push_back(table.index_at(best_c0));

    // ---- throughput and distribution comparison at the fitted constant ----
    detail::Accum acc(true);
    double beta_report = db_to_linear(cfg.beta_db);
    for (const TrialStats& s : trials) {
        double gy = p * s.h0 * s0 / (p * s.sum_hg + sigma);
        double gx = p * best_c0 * s0 / (p * best_c0 * s.sum_g + sigma);
        acc.record(gx, gy, beta_report);
    }
    ThroughputStats& tp = result.throughput;
    tp.rate_x = acc.rate_x / n;
    tp.rate_y = acc.rate_y / n;
    tp.gated_x = acc.gated_x / n;
    tp.gated_y = acc.gated_y / n;
    if (tp.gated_y > 0.0) {
        tp.deviation_percent = std::abs(tp.gated_x - tp.gated_y) / tp.gated_y * 100.0;
    }
    if (tp.rate_y > 0.0) {
        tp.naive_deviation_percent = std::abs(tp.rate_x - tp.rate_y) / tp.rate_y * 100.0;
    }
    auto [bc, bd] = bhattacharyya(acc.hx, acc.hy);
    result.bc_marginal = bc;
    result.bd_marginal = bd;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace imsim
