#include "imsim/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "imsim/special.hpp"

namespace imsim {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// g(x) = 1 - (1 + x) e^{-x}, evaluated stably near 0.
double one_minus_onepx_expmx(double x) {
    if (x < 1e-2) {
        // series: x^2/2 - x^3/3 + x^4/8 - x^5/30 + x^6/144
        return x * x * (0.5 + x * (-1.0 / 3.0 + x * (0.125 + x * (-1.0 / 30.0 + x / 144.0))));
    }
    return 1.0 - (1.0 + x) * std::exp(-x);
}

double clamp_probability(double p, double tol) {
    if (p < 0.0) {
        if (p < -10.0 * tol) throw std::runtime_error("analytic probability below 0 beyond tolerance");
        return 0.0;
    }
    if (p > 1.0) {
        if (p > 1.0 + 10.0 * tol) throw std::runtime_error("analytic probability above 1 beyond tolerance");
        return 1.0;
    }
    return p;
}

// Scenario-1 interference exponents: the fading expectations of the
// incomplete-gamma brackets, evaluated exactly. With h ~ Exp(1), q = 2/alpha,
// and F(mu) = E_h[h^q Gamma(1-q, mu h)], differentiating under the expectation
// gives F'(mu) = -mu^{-q} / (1+mu)^2, so F(mu) is the smooth incomplete-beta
// integral of u^q (1-u)^{-q} over [0, 1/(1+mu)] (substitute u = 1/(1+t)).
// This avoids Gauss-Laguerre on the h^{2/alpha} cusp, which loses ~1e-5.
double s1_fading_gamma_tail(double q, double mu, const QuadratureSpec& quad) {
    double x = 1.0 / (1.0 + mu);
    // The u^q cusp at 0 defeats adaptive quadrature, so integrate the binomial
    // series (1-u)^{-q} = sum_k (q)_k/k! u^k term by term up to min(x, 1/2),
    // then quadrature on the smooth remainder.
    double xs = std::min(x, 0.5);
    double sum = 0.0;
    double coef = 1.0;
    double x_pow = std::pow(xs, q + 1.0);
    for (int k = 0; k < 200; ++k) {
        double term = coef * x_pow / (q + k + 1.0);
        sum += term;
        if (k > 4 && term < 1e-16 * sum) break;
        coef *= (q + k) / (k + 1.0);
        x_pow *= xs;
    }
    if (x > xs) {
        sum += integrate([&](double u) { return std::pow(u, q) * std::pow(1.0 - u, -q); }, xs, x,
                         quad)
                   .value;
    }
    return sum;
}

// E_h of the masked-interference bracket over the disc r <= r_ibm, with the
// path gain flattened below r = a. B = beta * d0^alpha.
double s1_exponent_ibm(double B, double a, double alpha, double r_ibm,
                       const QuadratureSpec& quad) {
    double q = 2.0 / alpha;
    double mu_a = B * std::pow(a, -alpha);
    double mu_r = B * std::pow(r_ibm, -alpha);
    return r_ibm * r_ibm * mu_r / (1.0 + mu_r) +
           std::pow(B, q) *
               (s1_fading_gamma_tail(q, mu_r, quad) - s1_fading_gamma_tail(q, mu_a, quad));
}

double s1_exponent_phym(double B, double a, double alpha, const QuadratureSpec& quad) {
    double q = 2.0 / alpha;
    double mu_a = B * std::pow(a, -alpha);
    return std::pow(B, q) * (std::tgamma(1.0 + q) * std::tgamma(1.0 - q) -
                             s1_fading_gamma_tail(q, mu_a, quad));
}

double s1_exponent_cond(double B, double alpha, double r_prm, const QuadratureSpec& quad) {
    double q = 2.0 / alpha;
    double mu = B * std::pow(r_prm, -alpha);
    return -r_prm * r_prm * mu / (1.0 + mu) +
           std::pow(B, q) * (std::tgamma(1.0 + q) * std::tgamma(1.0 - q) -
                             s1_fading_gamma_tail(q, mu, quad));
}

void require_alpha_above_2(double alpha, const char* what) {
    if (alpha <= 2.0) {
        throw std::invalid_argument(std::string(what) +
                                    ": total interference diverges for alpha <= 2 "
                                    "(Gamma(1 - 2/alpha) mass)");
    }
}

} // namespace

void Scenario1Params::validate() const {
    if (!(lambda_t >= 0.0)) throw std::invalid_argument("lambda_t < 0");
    if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
    if (!(d0 >= a)) throw std::invalid_argument("need d0 >= a");
    if (!(r_ibm >= a)) throw std::invalid_argument("need r_ibm >= a");
    if (!(r_prm >= a)) throw std::invalid_argument("need r_prm >= a");
    if (!(alpha > 0.0 && c > 0.0 && p > 0.0 && sigma > 0.0 && beta > 0.0)) {
        throw std::invalid_argument("alpha, c, p, sigma, beta must be > 0");
    }
}

void Scenario2Params::validate() const {
    Scenario1Params::validate();
    if (!(theta > 0.0 && theta <= kTwoPi)) throw std::invalid_argument("theta outside (0, 2pi]");
    if (!(eps_lambda_o >= 0.0)) throw std::invalid_argument("eps_lambda_o < 0");
}

AnalyticResult s1_outage(ModelKind model, const Scenario1Params& prm, const QuadratureSpec& quad) {
    prm.validate();
    const double noise_term = prm.sigma * prm.beta * std::pow(prm.d0, prm.alpha) / (prm.p * prm.c);
    const double Bd = prm.beta * std::pow(prm.d0, prm.alpha);
    switch (model) {
        case ModelKind::PRM:
            // vacancy of the protected disc AND the interference-free link up
            return {1.0 - std::exp(-prm.lambda_t * kPi * prm.r_prm * prm.r_prm - noise_term),
                    0.0};
        case ModelKind::IBM: {
            double interference = 0.0;
            if (prm.lambda_t > 0.0) {
                interference =
                    kPi * prm.lambda_t * s1_exponent_ibm(Bd, prm.a, prm.alpha, prm.r_ibm, quad);
            }
            return {clamp_probability(1.0 - std::exp(-noise_term - interference), quad.abs_tol),
                    quad.abs_tol};
        }
        case ModelKind::PhyM: {
            double interference = 0.0;
            if (prm.lambda_t > 0.0) {
                require_alpha_above_2(prm.alpha, "s1_outage(PhyM)");
                interference =
                    kPi * prm.lambda_t * s1_exponent_phym(Bd, prm.a, prm.alpha, quad);
            }
            return {clamp_probability(1.0 - std::exp(-noise_term - interference), quad.abs_tol),
                    quad.abs_tol};
        }
        case ModelKind::TIM:
            throw std::invalid_argument("s1_outage: no closed form for TIM");
    }
    throw std::logic_error("s1_outage: unknown model");
}

AnalyticResult s1_cond_phym_given_prm_ok(const Scenario1Params& prm, const QuadratureSpec& quad) {
    prm.validate();
    const double Bd = prm.beta * std::pow(prm.d0, prm.alpha);
    double interference = 0.0;
    if (prm.lambda_t > 0.0) {
        require_alpha_above_2(prm.alpha, "s1_cond_phym_given_prm_ok");
        interference =
            kPi * prm.lambda_t * s1_exponent_cond(Bd, prm.alpha, prm.r_prm, quad);
    }
    // The noise threshold cancels by memorylessness of the exponential fading:
    // conditioning on the interference-free link being up leaves only the
    // Laplace transform of the out-of-range interference.
    return {clamp_probability(1.0 - std::exp(-interference), quad.abs_tol), quad.abs_tol};
}

namespace {

AnalyticIndex assemble_index(double p_x_outage, double p_phym_outage, double p_cond,
                             bool zero_false_alarm) {
    AnalyticIndex idx;
    idx.xi = 1.0 - p_phym_outage;
    if (zero_false_alarm) {
        idx.p_fa = 0.0;
        idx.p_md = p_phym_outage > 0.0 ? 1.0 - p_x_outage / p_phym_outage : 0.0;
    } else {
        double p_x_ok = 1.0 - p_x_outage;
        idx.p_fa = idx.xi > 0.0 ? 1.0 - p_x_ok * (1.0 - p_cond) / idx.xi : 0.0;
        idx.p_md = p_phym_outage > 0.0 ? p_x_ok * p_cond / p_phym_outage : 0.0;
    }
    auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
    idx.p_fa = clamp01(idx.p_fa);
    idx.p_md = clamp01(idx.p_md);
    idx.value = 1.0 - idx.xi * idx.p_fa - (1.0 - idx.xi) * idx.p_md;
    return idx;
}

} // namespace

AnalyticIndex s1_index(ModelKind model, const Scenario1Params& prm, const QuadratureSpec& quad) {
    double p_phym = s1_outage(ModelKind::PhyM, prm, quad).value;
    if (model == ModelKind::IBM) {
        return assemble_index(s1_outage(ModelKind::IBM, prm, quad).value, p_phym, 0.0, true);
    }
    if (model == ModelKind::PRM) {
        return assemble_index(s1_outage(ModelKind::PRM, prm, quad).value, p_phym,
                              s1_cond_phym_given_prm_ok(prm, quad).value, false);
    }
    throw std::invalid_argument("s1_index: model must be IBM or PRM");
}

double region_measure(double theta, double lambda_t, double eps_lambda_o, double R) {
    if (R < 0.0) throw std::invalid_argument("region_measure: R < 0");
    double x = eps_lambda_o * R;
    if (eps_lambda_o <= 0.0) {
        return theta * theta * lambda_t * R * R / (4.0 * kPi);
    }
    return theta * theta * lambda_t / (2.0 * kPi * eps_lambda_o * eps_lambda_o) *
           one_minus_onepx_expmx(x);
}

FarField far_field(double theta, double lambda_t, double eps_lambda_o, double R) {
    if (R < 0.0) throw std::invalid_argument("far_field: R < 0");
    FarField ff;
    if (eps_lambda_o <= 0.0) {
        ff.measure = std::numeric_limits<double>::infinity();
        ff.p_empty = 0.0;
        return ff;
    }
    double x = eps_lambda_o * R;
    ff.measure = theta * theta * lambda_t / (2.0 * kPi * eps_lambda_o * eps_lambda_o) *
                 (1.0 + x) * std::exp(-x);
    ff.p_empty = std::exp(-ff.measure);
    return ff;
}

namespace {

// Scenario-2 helpers. B = beta d0^alpha h; el = eps_lambda_o.
double s2_radial_finite(double B, double alpha, double el, double lo, double hi,
                        const QuadratureSpec& quad) {
    // integral of (1 - e^{-B r^-alpha}) e^{-el r} r dr over [lo, hi]
    return integrate(
               [&](double r) {
                   return (1.0 - std::exp(-B * std::pow(r, -alpha))) * std::exp(-el * r) * r;
               },
               lo, hi, quad)
        .value;
}

double s2_radial_infinite(double B, double alpha, double el, double lo,
                          const QuadratureSpec& quad) {
    if (el > 0.0) {
        return integrate_to_infinity(
                   [&](double r) {
                       return (1.0 - std::exp(-B * std::pow(r, -alpha))) * std::exp(-el * r) * r;
                   },
                   lo, quad)
            .value;
    }
    // no blockage: integrand ~ B r^{1-alpha}, needs alpha > 2
    return integrate_to_infinity(
               [&](double r) { return (1.0 - std::exp(-B * std::pow(r, -alpha))) * r; }, lo, quad)
        .value;
}

} // namespace

AnalyticResult s2_outage(ModelKind model, const Scenario2Params& prm, const QuadratureSpec& quad) {
    prm.validate();
    const double el = prm.eps_lambda_o;
    const double noise_term = prm.sigma * prm.theta * prm.theta * prm.beta *
                              std::pow(prm.d0, prm.alpha) / (4.0 * prm.p * prm.c * kPi * kPi);
    const double Bd = prm.beta * std::pow(prm.d0, prm.alpha);
    const double sector_factor = prm.theta * prm.theta * prm.lambda_t / (2.0 * kPi);
    switch (model) {
        case ModelKind::PRM:
            // vacancy of the protected disc AND the interference-free link up
            return {1.0 - std::exp(-region_measure(prm.theta, prm.lambda_t, el, prm.r_prm) -
                                   noise_term),
                    0.0};
        case ModelKind::IBM: {
            double interference = 0.0;
            if (prm.lambda_t > 0.0) {
                double near_disk = el > 0.0 ? one_minus_onepx_expmx(el * prm.a) / (el * el)
                                            : 0.5 * prm.a * prm.a;
                interference =
                    sector_factor *
                    expectation_exponential(
                        [&](double h) {
                            return (1.0 - std::exp(-Bd * h)) * near_disk +
                                   s2_radial_finite(Bd * h, prm.alpha, el, prm.a, prm.r_ibm, quad);
                        },
                        quad);
            }
            return {clamp_probability(1.0 - std::exp(-noise_term - interference), quad.abs_tol),
                    quad.abs_tol};
        }
        case ModelKind::PhyM: {
            double interference = 0.0;
            if (prm.lambda_t > 0.0) {
                if (el <= 0.0) require_alpha_above_2(prm.alpha, "s2_outage(PhyM)");
                double near_disk = el > 0.0 ? one_minus_onepx_expmx(el * prm.a) / (el * el)
                                            : 0.5 * prm.a * prm.a;
                interference =
                    sector_factor *
                    expectation_exponential(
                        [&](double h) {
                            return (1.0 - std::exp(-Bd * h)) * near_disk +
                                   s2_radial_infinite(Bd * h, prm.alpha, el, prm.a, quad);
                        },
                        quad);
            }
            return {clamp_probability(1.0 - std::exp(-noise_term - interference), quad.abs_tol),
                    quad.abs_tol};
        }
        case ModelKind::TIM:
            throw std::invalid_argument("s2_outage: no closed form for TIM");
    }
    throw std::logic_error("s2_outage: unknown model");
}

AnalyticResult s2_cond_phym_given_prm_ok(const Scenario2Params& prm, const QuadratureSpec& quad) {
    prm.validate();
    const double el = prm.eps_lambda_o;
    const double Bd = prm.beta * std::pow(prm.d0, prm.alpha);
    double interference = 0.0;
    if (prm.lambda_t > 0.0) {
        if (el <= 0.0) require_alpha_above_2(prm.alpha, "s2_cond_phym_given_prm_ok");
        interference = prm.theta * prm.theta * prm.lambda_t / (2.0 * kPi) *
                       expectation_exponential(
                           [&](double h) {
                               return s2_radial_infinite(Bd * h, prm.alpha, el, prm.r_prm, quad);
                           },
                           quad);
    }
    // The noise threshold cancels by memorylessness of the exponential fading:
    // conditioning on the interference-free link being up leaves only the
    // Laplace transform of the out-of-range interference.
    return {clamp_probability(1.0 - std::exp(-interference), quad.abs_tol), quad.abs_tol};
}

AnalyticIndex s2_index(ModelKind model, const Scenario2Params& prm, const QuadratureSpec& quad) {
    double p_phym = s2_outage(ModelKind::PhyM, prm, quad).value;
    if (model == ModelKind::IBM) {
        return assemble_index(s2_outage(ModelKind::IBM, prm, quad).value, p_phym, 0.0, true);
    }
    if (model == ModelKind::PRM) {
        return assemble_index(s2_outage(ModelKind::PRM, prm, quad).value, p_phym,
                              s2_cond_phym_given_prm_ok(prm, quad).value, false);
    }
    throw std::invalid_argument("s2_index: model must be IBM or PRM");
}

ZetaThreshold zeta_threshold(const Scenario2Params& prm) {
    double gain_ratio = prm.theta / kTwoPi;
    double zeta = std::pow(prm.d0, -prm.alpha) / prm.beta -
                  prm.sigma / (prm.p * prm.c) * gain_ratio * gain_ratio;
    if (!(zeta > 0.0)) {
        throw std::domain_error("zeta_threshold: link fails on noise alone at this beta (zeta <= 0)");
    }
    return {zeta, std::pow(zeta, -1.0 / prm.alpha)};
}

namespace {

// Shared tau-optimization: log grid over [1e-6/zeta, 1e6/zeta] refined by
// golden section around the best grid point. Non-finite values are skipped.
double minimize_over_tau(const std::function<double(double)>& f, double zeta) {
    const int n = 60;
    const double lo = 1e-6 / zeta, hi = 1e6 / zeta;
    const double step = std::log(hi / lo) / (n - 1);
    double best_val = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < n; ++i) {
        double tau = lo * std::exp(i * step);
        double v = f(tau);
        if (std::isfinite(v) && v < best_val) {
            best_val = v;
            best_i = i;
        }
    }
    double bracket_lo = lo * std::exp(std::max(0, best_i - 1) * step);
    double bracket_hi = lo * std::exp(std::min(n - 1, best_i + 1) * step);
    double tau_star = golden_section_min([&](double t) {
        double v = f(t);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    }, bracket_lo, bracket_hi, 1e-10);
    double refined = f(tau_star);
    return std::isfinite(refined) && refined < best_val ? refined : best_val;
}

} // namespace

double s3_chernoff_ibm_lower(const Scenario2Params& prm, double r_ibm, const QuadratureSpec& quad) {
    prm.validate();
    double zeta = zeta_threshold(prm).zeta;
    if (prm.lambda_t == 0.0) return 0.0;
    const double el = prm.eps_lambda_o;
    if (el <= 0.0) throw std::invalid_argument("s3_chernoff_ibm_lower: needs eps_lambda_o > 0");
    const double factor = prm.theta * prm.theta * prm.lambda_t / (2.0 * kPi);
    auto log_bound = [&](double tau) {
        double head = (1.0 - std::exp(-tau) +
                       (1.0 + el * prm.a) * std::exp(-el * prm.a - tau) -
                       (1.0 + el * r_ibm) * std::exp(-el * r_ibm)) /
                      (el * el);
        double tail = integrate(
                          [&](double r) {
                              return r * std::exp(-el * r - tau * std::pow(r, -prm.alpha));
                          },
                          prm.a, r_ibm, quad)
                          .value;
        return tau * zeta - factor * (head - tail);
    };
    double best = minimize_over_tau(log_bound, zeta);
    double inf_val = std::exp(std::min(best, 0.0)); // Chernoff factor is <= 1 at the optimum
    return clamp_probability(1.0 - inf_val, quad.abs_tol);
}

double s3_chernoff_phym_upper(const Scenario2Params& prm, const QuadratureSpec& quad) {
    prm.validate();
    double zeta = zeta_threshold(prm).zeta;
    if (prm.lambda_t == 0.0) return 1.0; // vacuous but valid
    const double el = prm.eps_lambda_o;
    if (el <= 0.0) throw std::invalid_argument("s3_chernoff_phym_upper: needs eps_lambda_o > 0");
    const double factor = prm.theta * prm.theta * prm.lambda_t / (2.0 * kPi);
    auto log_bound = [&](double tau) {
        double head = (1.0 - std::exp(tau) + (1.0 + el * prm.a) * std::exp(-el * prm.a + tau)) /
                      (el * el);
        double tail;
        try {
            tail = integrate_to_infinity(
                       [&](double r) {
                           return r * std::exp(-el * r + tau * std::pow(r, -prm.alpha));
                       },
                       prm.a, quad)
                       .value;
        } catch (const QuadratureError&) {
            return std::numeric_limits<double>::infinity();
        }
        return -tau * zeta - factor * (head - tail);
    };
    double best = minimize_over_tau(log_bound, zeta);
    return std::min(1.0, std::exp(best));
}

std::pair<double, double> s3_prm_index_bounds(const Scenario2Params& prm,
                                              const QuadratureSpec& quad) {
    prm.validate();
    ZetaThreshold z = zeta_threshold(prm);
    if (!(prm.r_prm > 0.0 && prm.r_prm <= z.r_max * (1.0 + 1e-12))) {
        throw std::domain_error("s3_prm_index_bounds: r_prm outside the zero-false-alarm range");
    }
    double p_prm = 1.0 - std::exp(-region_measure(prm.theta, prm.lambda_t, prm.eps_lambda_o, prm.r_prm));
    double phym_ge = 1.0 - s3_chernoff_phym_upper(prm, quad);
    return {std::max(p_prm, phym_ge), 1.0};
}

} // namespace imsim
