#include "imsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "engine_internal.hpp"
#include "imsim/geometry.hpp"
#include "imsim/interference.hpp"
#include "imsim/propagation.hpp"
#include "imsim/quadrature.hpp"
#include "imsim/rng.hpp"
#include "imsim/special.hpp"

namespace imsim {

namespace detail {

Accum run_trials(std::uint64_t trials, int threads, bool with_hist,
                 const EngineFactory& make_engine) {
    std::uint64_t n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<Accum> chunks(n_chunks, Accum(with_hist));
    auto chunk_size = [&](std::uint64_t c) {
        return c + 1 < n_chunks ? kChunkTrials : trials - c * kChunkTrials;
    };
    if (threads <= 1 || n_chunks <= 1) {
        auto engine = make_engine();
        for (std::uint64_t c = 0; c < n_chunks; ++c) engine->run_chunk(c, chunk_size(c), chunks[c]);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            auto engine = make_engine();
            for (;;) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= n_chunks) break;
                engine->run_chunk(c, chunk_size(c), chunks[c]);
            }
        };
        std::vector<std::thread> pool;
        int n = std::min<std::uint64_t>(threads, n_chunks);
        pool.reserve(n);
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // Merge in chunk order so the result is independent of scheduling.
    Accum total(with_hist);
    for (const Accum& c : chunks) total.merge(c);
    return total;
}

} // namespace detail

namespace {

using detail::Accum;
using detail::TrialEngine;

ModelSpec model_spec_from(const ScenarioConfig& cfg, const std::string& name) {
    if (name == "phym") return ModelSpec::phym();
    if (name == "ibm") return ModelSpec::ibm(cfg.r_ibm);
    if (name == "prm") return ModelSpec::prm(cfg.r_prm);
    if (name == "tim") return ModelSpec::tim(db_to_linear(cfg.tim_eps_db));
    throw std::invalid_argument("unknown model name: " + name);
}

FadingKind fading_kind_from(const ScenarioConfig& cfg) {
    if (cfg.fading == "rayleigh") return FadingKind::rayleigh();
    if (cfg.fading == "nakagami") return FadingKind::nakagami(cfg.nakagami_m);
    return FadingKind::deterministic(cfg.fading_c0);
}

// Mean interference power (watts) from interferers beyond radius R under the
// given mask and fading law, for the omnidirectional Scenario-1 layout. Added
// to the noise term so truncating the sampling window stays unbiased.
double s1_tail_mean_power(const ModelSpec& model, const FadingKind& fading,
                          const ScenarioConfig& cfg, double R) {
    double p = dbm_to_watts(cfg.p_dbm);
    double c = db_to_linear(cfg.c_db);
    double lambda = cfg.lambda_t();
    double two_pi_lambda_p = kTwoPi * lambda * p;
    double mean_h = fading.family == FadingFamily::Deterministic ? fading.c0 : 1.0;
    auto power_law_band = [&](double lo, double hi) {
        // mean of p*h*c*r^{-alpha} over the annulus (lo, hi], E[h] = mean_h
        if (cfg.alpha == 2.0) {
            if (std::isinf(hi)) throw std::invalid_argument("s1 tail diverges for alpha <= 2");
            return two_pi_lambda_p * c * mean_h * std::log(hi / lo);
        }
        double lo_term = std::pow(lo, 2.0 - cfg.alpha);
        double hi_term = std::isinf(hi) ? 0.0 : std::pow(hi, 2.0 - cfg.alpha);
        if (std::isinf(hi) && cfg.alpha < 2.0)
            throw std::invalid_argument("s1 tail diverges for alpha <= 2");
        return two_pi_lambda_p * c * mean_h * (lo_term - hi_term) / (cfg.alpha - 2.0);
    };
    switch (model.kind) {
        case ModelKind::PhyM:
            return power_law_band(R, std::numeric_limits<double>::infinity());
        case ModelKind::IBM:
            if (model.r_ibm <= R) return 0.0;
            return power_law_band(R, model.r_ibm);
        case ModelKind::PRM:
            if (model.r_prm > R) {
                throw std::invalid_argument("s1 engine: truncation radius below r_prm");
            }
            return 0.0; // masks vanish outside r_prm
        case ModelKind::TIM: {
            if (model.eps_gain <= 0.0) {
                return power_law_band(R, std::numeric_limits<double>::infinity());
            }
            // E[h * 1{h * c r^{-alpha} > eps}] integrated over the tail.
            auto masked_mean_h = [&](double t) {
                switch (fading.family) {
                    case FadingFamily::Rayleigh:
                        return (1.0 + t) * std::exp(-t);
                    case FadingFamily::Nakagami: {
                        double m = fading.m;
                        return upper_incomplete_gamma(m + 1.0, m * t) /
                               std::tgamma(m + 1.0);
                    }
                    case FadingFamily::Deterministic:
                        return fading.c0 > t ? fading.c0 : 0.0;
                    default:
                        throw std::invalid_argument("s1 tail: unsupported fading");
                }
            };
            auto integrand = [&](double r) {
                double gain = c * std::pow(r, -cfg.alpha);
                return two_pi_lambda_p * r * gain * masked_mean_h(model.eps_gain / gain);
            };
            QuadratureSpec spec;
            spec.abs_tol = 1e-24; // watts; far below any noise floor in use
            return integrate_to_infinity(integrand, R, spec).value;
        }
    }
    return 0.0;
}

// ---- Scenario 1: omnidirectional disc, power-law path loss, fading ----
class S1Engine final : public TrialEngine {
  public:
    explicit S1Engine(const ScenarioConfig& cfg)
        : cfg_(cfg),
          law_{db_to_linear(cfg.c_db), cfg.alpha, cfg.a},
          p_(dbm_to_watts(cfg.p_dbm)),
          sigma_(dbm_to_watts(cfg.sigma_dbm)),
          beta_(db_to_linear(cfg.beta_db)),
          fading_(fading_kind_from(cfg)),
          x_spec_(model_spec_from(cfg, cfg.x_model)),
          x_det_(cfg.x_fading == "deterministic"),
          region_{kTwoPi, 0.0, cfg.truncation_radius} {
        signal_gain_ = path_gain(law_, cfg.d0);
        double R = cfg.truncation_radius;
        FadingKind x_fading = x_det_ ? FadingKind::deterministic(cfg.x_c0) : fading_;
        if (cfg.alpha > 2.0) {
            comp_y_ = s1_tail_mean_power(ModelSpec::phym(), fading_, cfg, R);
            comp_x_ = s1_tail_mean_power(x_spec_, x_fading, cfg, R);
        } else {
            // No finite tail mean exists; the calibrated window stands alone,
            // except TIM whose gain threshold keeps the tail integrable.
            comp_y_ = 0.0;
            comp_x_ = x_spec_.kind == ModelKind::TIM && x_spec_.eps_gain > 0.0
                          ? s1_tail_mean_power(x_spec_, x_fading, cfg, R)
                          : 0.0;
        }
        if (x_spec_.kind == ModelKind::PRM && x_spec_.r_prm > R) {
            throw std::invalid_argument("s1 engine: truncation radius below r_prm");
        }
    }

    void run_chunk(std::uint64_t chunk, std::uint64_t n, Accum& acc) override {
        Rng rng = make_stream(cfg_.seed, chunk);
        ModelSpec y_spec = ModelSpec::phym();
        for (std::uint64_t t = 0; t < n; ++t) {
            double h0 = sample_fading(fading_, rng);
            PointField field = sample_homogeneous_ppp(cfg_.lambda_t(), region_, rng);
            terms_y_.clear();
            if (x_det_) terms_x_.clear();
            for (const PolarPoint& pt : field.points) {
                double pg = path_gain(law_, pt.radius);
                double h = sample_fading(fading_, rng);
                terms_y_.push_back({p_, 1.0, h * pg, 1.0, pt.radius});
                if (x_det_) terms_x_.push_back({p_, 1.0, cfg_.x_c0 * pg, 1.0, pt.radius});
            }
            LinkBudgetTerm signal_y{p_, 1.0, h0 * signal_gain_, 1.0, cfg_.d0};
            double gy = sinr(y_spec, signal_y, terms_y_, sigma_ + comp_y_);
            double gx;
            if (x_det_) {
                LinkBudgetTerm signal_x{p_, 1.0, cfg_.x_c0 * signal_gain_, 1.0, cfg_.d0};
                gx = sinr(x_spec_, signal_x, terms_x_, sigma_ + comp_x_);
            } else {
                gx = sinr(x_spec_, signal_y, terms_y_, sigma_ + comp_x_);
            }
            acc.record(gx, gy, beta_);
        }
    }

  private:
    ScenarioConfig cfg_;
    PathLossLaw law_;
    double p_, sigma_, beta_;
    FadingKind fading_;
    ModelSpec x_spec_;
    bool x_det_;
    AnnulusSector region_;
    double signal_gain_ = 0.0;
    double comp_y_ = 0.0, comp_x_ = 0.0;
    std::vector<LinkBudgetTerm> terms_y_, terms_x_;
};

// ---- Scenarios 2/3: sector antennas (zero side lobe), LoS blockage ----
//
// Potential interferers form an inhomogeneous process with radial intensity
// lambda_t * (theta/2pi) * exp(-eps*lambda_o*r) over the receive sector of
// angle theta; radii are drawn by inverting 1-(1+x)e^{-x}.
double one_minus_onepx_expmx_local(double x) {
    if (x < 1e-3) {
        double x2 = x * x;
        return x2 * (0.5 - x / 3.0 + x2 / 8.0 - x2 * x / 30.0);
    }
    return -std::expm1(-x) - x * std::exp(-x);
}

double invert_radial_cdf(double target, double x_max) {
    // solve 1-(1+x)e^{-x} = target on [0, x_max]
    double lo = 0.0, hi = x_max;
    double x = std::sqrt(2.0 * target);
    if (!(x > lo && x < hi)) x = 0.5 * x_max;
    for (int i = 0; i < 100; ++i) {
        double f = one_minus_onepx_expmx_local(x) - target;
        if (f > 0.0) hi = x; else lo = x;
        double deriv = x * std::exp(-x);
        double step = deriv > 0.0 ? f / deriv : 0.0;
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-12 * (1.0 + x)) return next;
        x = next;
    }
    return x;
}

class SectorEngine final : public TrialEngine {
  public:
    explicit SectorEngine(const ScenarioConfig& cfg)
        : cfg_(cfg),
          law_{db_to_linear(cfg.c_db), cfg.alpha, cfg.a},
          p_(dbm_to_watts(cfg.p_dbm)),
          sigma_(dbm_to_watts(cfg.sigma_dbm)),
          beta_(db_to_linear(cfg.beta_db)),
          fading_(fading_kind_from(cfg)),
          x_spec_(model_spec_from(cfg, cfg.x_model)) {
        double theta = cfg.theta_deg * kTwoPi / 360.0;
        gain_main_ = sector_gain({theta, 0.0}, true);
        signal_gain_ = path_gain(law_, cfg.d0) * gain_main_ * gain_main_;
        double el = cfg.eps_lambda_o;
        x_max_ = el * cfg.truncation_radius;
        cdf_max_ = one_minus_onepx_expmx_local(x_max_);
        mean_count_ = theta * theta * cfg.lambda_t() / (kTwoPi * el * el) * cdf_max_;
        el_ = el;
    }

    void run_chunk(std::uint64_t chunk, std::uint64_t n, Accum& acc) override {
        Rng rng = make_stream(cfg_.seed, chunk);
        std::poisson_distribution<int> count_dist(mean_count_);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        ModelSpec y_spec = ModelSpec::phym();
        for (std::uint64_t t = 0; t < n; ++t) {
            double h0 = sample_fading(fading_, rng);
            int k = count_dist(rng);
            terms_.clear();
            for (int i = 0; i < k; ++i) {
                double r = invert_radial_cdf(uni(rng) * cdf_max_, x_max_) / el_;
                double h = sample_fading(fading_, rng);
                double channel = h * path_gain(law_, r);
                terms_.push_back({p_, gain_main_, channel, gain_main_, r});
            }
            LinkBudgetTerm signal{p_, 1.0, h0 * signal_gain_, 1.0, cfg_.d0};
            double gy = sinr(y_spec, signal, terms_, sigma_);
            double gx = sinr(x_spec_, signal, terms_, sigma_);
            acc.record(gx, gy, beta_);
        }
    }

  private:
    ScenarioConfig cfg_;
    PathLossLaw law_;
    double p_, sigma_, beta_;
    FadingKind fading_;
    ModelSpec x_spec_;
    double gain_main_ = 1.0, signal_gain_ = 0.0;
    double el_ = 0.0, x_max_ = 0.0, cdf_max_ = 0.0, mean_count_ = 0.0;
    std::vector<LinkBudgetTerm> terms_;
};

detail::EngineFactory engine_factory(const ScenarioConfig& resolved) {
    switch (resolved.scenario) {
        case ScenarioId::S1:
            return [resolved] { return std::make_unique<S1Engine>(resolved); };
        case ScenarioId::S2:
        case ScenarioId::S3:
            return [resolved] { return std::make_unique<SectorEngine>(resolved); };
        case ScenarioId::S4:
            return detail::make_s4_engine_factory(resolved);
    }
    throw std::invalid_argument("unknown scenario");
}

} // namespace

Scenario1Params s1_params(const ScenarioConfig& cfg) {
    Scenario1Params p;
    p.lambda_t = cfg.lambda_t();
    p.d0 = cfg.d0;
    p.alpha = cfg.alpha;
    p.c = db_to_linear(cfg.c_db);
    p.a = cfg.a;
    p.p = dbm_to_watts(cfg.p_dbm);
    p.sigma = dbm_to_watts(cfg.sigma_dbm);
    p.beta = db_to_linear(cfg.beta_db);
    p.r_ibm = cfg.r_ibm;
    p.r_prm = cfg.r_prm;
    return p;
}

Scenario2Params s2_params(const ScenarioConfig& cfg) {
    Scenario2Params p;
    static_cast<Scenario1Params&>(p) = s1_params(cfg);
    p.theta = cfg.theta_deg * kTwoPi / 360.0;
    p.eps_lambda_o = cfg.eps_lambda_o;
    return p;
}

AnalyticIndex analytic_index(const ScenarioConfig& config) {
    ScenarioConfig cfg = resolve_config(config);
    ModelKind model = model_spec_from(cfg, cfg.x_model).kind;
    switch (cfg.scenario) {
        case ScenarioId::S1:
            return s1_index(model, s1_params(cfg));
        case ScenarioId::S2:
        case ScenarioId::S3:
            return s2_index(model, s2_params(cfg));
        case ScenarioId::S4:
            throw std::invalid_argument("scenario s4 has no closed-form index");
    }
    throw std::invalid_argument("unknown scenario");
}

ScenarioConfig resolve_config(const ScenarioConfig& config) {
    ScenarioConfig cfg = config;
    if (cfg.scenario == ScenarioId::S3 && (cfg.r_prm <= 0.0 || cfg.r_ibm <= 0.0)) {
        ZetaThreshold zt = zeta_threshold(s2_params(cfg));
        if (cfg.r_prm <= 0.0) cfg.r_prm = zt.r_max;
        if (cfg.r_ibm <= 0.0) cfg.r_ibm = 2.0 * cfg.r_prm;
    }
    cfg.validate();
    if (cfg.truncation_radius <= 0.0) {
        switch (cfg.scenario) {
            case ScenarioId::S1:
                // The analytic mean of the truncated tail is folded into the
                // noise term, so a window a few times the model radii suffices
                // for alpha > 2; alpha <= 2 keeps a wide calibrated window.
                cfg.truncation_radius =
                    cfg.alpha > 2.0
                        ? std::max({250.0, 1.05 * cfg.r_prm, 2.0 * cfg.d0})
                        : std::max({1000.0, 1.05 * cfg.r_prm, 1.05 * cfg.r_ibm, 2.0 * cfg.d0});
                break;
            case ScenarioId::S2:
            case ScenarioId::S3:
                // (1+x)e^{-x} < 1e-6 of the far-field mass beyond x = 20.
                cfg.truncation_radius =
                    std::max({20.0 / cfg.eps_lambda_o, 1.05 * cfg.r_prm, 1.05 * cfg.r_ibm});
                break;
            case ScenarioId::S4:
                cfg.truncation_radius = cfg.window;
                break;
        }
    }
    return cfg;
}

RunReport run(const ScenarioConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg = resolve_config(config);
    Accum acc = detail::run_trials(cfg.trials, cfg.threads, cfg.collect_histograms,
                                   engine_factory(cfg));
    RunReport report;
    report.config = cfg;
    report.truncation_radius = cfg.truncation_radius;
    report.stats = error_stats_from_counts(acc.counts);
    report.index = similarity_index(report.stats);
    report.index.beta_db = cfg.beta_db;

    double n = static_cast<double>(cfg.trials);
    ThroughputStats& tp = report.throughput;
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

    if (cfg.collect_histograms) {
        report.hist_x = acc.hx;
        report.hist_y = acc.hy;
        report.hist_x_h0 = acc.hx0;
        report.hist_x_h1 = acc.hx1;
        DistributionStats& d = report.distributions;
        d.available = true;
        auto [bc, bd] = bhattacharyya(acc.hx, acc.hy);
        d.bc_marginal = bc;
        d.bd_marginal = bd;
        d.kl_marginal = kl_divergence(acc.hy, acc.hx);
        d.euclid_marginal = euclidean_distance(acc.hx.normalized(), acc.hy.normalized());
        if (acc.hx0.total() > 0 && acc.hx1.total() > 0) {
            d.rho_cond = bhattacharyya(acc.hx0, acc.hx1).first;
            d.rho_cond_defined = true;
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<std::string> sweepable_keys() {
    return {"d_t",       "beta_db",   "r_ibm",      "r_prm",      "theta_deg",
            "tim_eps_db", "alpha",    "eps_lambda_o", "d_o",      "l_o_db",
            "refl_coeff", "z_db",     "x_c0"};
}

std::vector<SweepPoint> sweep(const ScenarioConfig& base, const std::string& key,
                              const std::vector<double>& values) {
    auto keys = sweepable_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        std::string msg = "sweep: parameter '" + key + "' is not sweepable; choose one of:";
        for (const auto& k : keys) msg += " " + k;
        throw std::invalid_argument(msg);
    }
    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (double v : values) {
        ScenarioConfig cfg = base;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        apply_override(cfg, key, buf);
        points.push_back({v, run(cfg)});
    }
    return points;
}

double throughput_deviation(const ScenarioConfig& config) {
    RunReport report = run(config);
    if (report.throughput.rate_y <= 0.0) {
        throw std::invalid_argument("throughput_deviation: reference throughput is zero");
    }
    return report.throughput.naive_deviation_percent;
}

} // namespace imsim
