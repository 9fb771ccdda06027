#include <cmath>

#include "doctest.h"

#include "imsim/analytic.hpp"
#include "imsim/propagation.hpp"
#include "imsim/quadrature.hpp"

using namespace imsim;

namespace {

Scenario1Params microwave_params(double d_t = 80.0) {
    Scenario1Params p;
    p.lambda_t = 1.0 / (d_t * d_t);
    p.d0 = 20.0;
    p.alpha = 3.6;
    p.c = db_to_linear(-22.7);
    p.a = 1.0;
    p.p = dbm_to_watts(20.0);
    p.sigma = dbm_to_watts(-111.0);
    p.beta = db_to_linear(5.0);
    p.r_ibm = 60.0;
    p.r_prm = 40.0;
    return p;
}

Scenario2Params mmwave_params(double d_t = 30.0) {
    Scenario2Params p;
    p.lambda_t = 1.0 / (d_t * d_t);
    p.d0 = 20.0;
    p.alpha = 2.0;
    p.c = db_to_linear(-61.4);
    p.a = 1.0;
    p.p = dbm_to_watts(20.0);
    p.sigma = dbm_to_watts(-84.0);
    p.beta = db_to_linear(5.0);
    p.r_ibm = 80.0;
    p.r_prm = 40.0;
    p.theta = kTwoPi * 20.0 / 360.0;
    p.eps_lambda_o = 0.008;
    return p;
}

double gain_at(const Scenario1Params& p, double r) {
    return path_gain(PathLossLaw{p.c, p.alpha, p.a}, r);
}

// Independent oracle for the Rayleigh outage probabilities: exponential signal
// fading turns Pr[no outage] into e^{-beta*sigma/(p s0)} times the Laplace
// functional of the (masked) interference at s = beta/s0, evaluated by direct
// radial quadrature. This derivation shares no code path with the shipped
// closed forms.
double oracle_s1_ok(const Scenario1Params& p, double r_lo, double r_hi) {
    double s0 = gain_at(p, p.d0);
    double s = p.beta / s0;
    QuadratureSpec spec;
    auto integrand = [&](double r) {
        double g = gain_at(p, r);
        return (1.0 - 1.0 / (1.0 + s * g)) * r;
    };
    // split at the path-gain kink r = a so the adaptive rule sees smooth pieces
    double radial = 0.0;
    double lo = r_lo;
    if (lo < p.a && p.a < r_hi) {
        radial += integrate(integrand, lo, p.a, spec).value;
        lo = p.a;
    }
    if (std::isinf(r_hi)) {
        // analytic two-term tail of x/(1+x) r with x = s c r^{-alpha} << 1;
        // the third-order term is below 1e-14 of the total here
        const double split = 3000.0;
        double sc = s * p.c;
        radial += integrate(integrand, lo, split, spec).value +
                  sc * std::pow(split, 2.0 - p.alpha) / (p.alpha - 2.0) -
                  sc * sc * std::pow(split, 2.0 - 2.0 * p.alpha) / (2.0 * p.alpha - 2.0);
    } else {
        radial += integrate(integrand, lo, r_hi, spec).value;
    }
    return std::exp(-p.beta * p.sigma / (p.p * s0)) *
           std::exp(-kTwoPi * p.lambda_t * radial);
}

// Same construction for the directional/blockage scenario: the post-thinning
// radial intensity is lambda_t theta^2/(2pi) e^{-eps lambda r} r, and the
// antenna gains cancel between signal and interferers at z = 0.
double oracle_s2_ok(const Scenario2Params& p, double r_lo, double r_hi) {
    double s0 = gain_at(p, p.d0);
    double s = p.beta / s0;
    double big_g = kTwoPi / p.theta;
    QuadratureSpec spec;
    auto integrand = [&](double r) {
        double g = gain_at(p, r);
        return (1.0 - 1.0 / (1.0 + s * g)) * std::exp(-p.eps_lambda_o * r) * r;
    };
    double radial = 0.0;
    double lo = r_lo;
    if (lo < p.a && p.a < r_hi) {
        radial += integrate(integrand, lo, p.a, spec).value;
        lo = p.a;
    }
    radial += std::isinf(r_hi) ? integrate_to_infinity(integrand, lo, spec).value
                               : integrate(integrand, lo, r_hi, spec).value;
    return std::exp(-p.beta * p.sigma / (p.p * s0 * big_g * big_g)) *
           std::exp(-p.lambda_t * p.theta * p.theta / kTwoPi * radial);
}

} // namespace

TEST_CASE("omnidirectional Rayleigh outage closed forms vs quadrature oracle") {
    for (double d_t : {30.0, 80.0}) {
        Scenario1Params p = microwave_params(d_t);
        CHECK(s1_outage(ModelKind::PhyM, p).value ==
              doctest::Approx(1.0 - oracle_s1_ok(p, 0.0,
                                                 std::numeric_limits<double>::infinity()))
                  .epsilon(1e-6));
        CHECK(s1_outage(ModelKind::IBM, p).value ==
              doctest::Approx(1.0 - oracle_s1_ok(p, 0.0, p.r_ibm)).epsilon(1e-6));
        // protocol model: blocked disc empty AND the interference-free link up
        double prm_ok = std::exp(-p.lambda_t * kTwoPi / 2.0 * p.r_prm * p.r_prm) *
                        std::exp(-p.beta * p.sigma / (p.p * gain_at(p, p.d0)));
        CHECK(s1_outage(ModelKind::PRM, p).value ==
              doctest::Approx(1.0 - prm_ok).epsilon(1e-9));
        // conditional full-model outage given the protocol model sees no outage:
        // memorylessness of the exponential leaves the out-of-range Laplace term
        double cond = 1.0 - std::exp(p.beta * p.sigma / (p.p * gain_at(p, p.d0))) *
                                oracle_s1_ok(p, p.r_prm,
                                             std::numeric_limits<double>::infinity());
        CHECK(s1_cond_phym_given_prm_ok(p).value == doctest::Approx(cond).epsilon(1e-6));
    }
}

TEST_CASE("protocol-model disc-vacancy spot value") {
    Scenario1Params p = microwave_params(80.0);
    p.sigma = dbm_to_watts(-300.0); // noise term ~1e-25, negligible at this scale
    double expected = 1.0 - std::exp(-std::acos(-1.0) * 1600.0 / 6400.0);
    CHECK(s1_outage(ModelKind::PRM, p).value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.5441).epsilon(1e-3));
}

TEST_CASE("index assembly identities (omnidirectional)") {
    Scenario1Params p = microwave_params(80.0);
    AnalyticIndex ibm = s1_index(ModelKind::IBM, p);
    CHECK(ibm.p_fa == 0.0);
    double out_phym = s1_outage(ModelKind::PhyM, p).value;
    double out_ibm = s1_outage(ModelKind::IBM, p).value;
    CHECK(ibm.p_md == doctest::Approx(1.0 - out_ibm / out_phym).epsilon(1e-9));
    CHECK(ibm.xi == doctest::Approx(1.0 - out_phym).epsilon(1e-9));
    CHECK(ibm.value ==
          doctest::Approx(1.0 - ibm.xi * ibm.p_fa - (1.0 - ibm.xi) * ibm.p_md));

    AnalyticIndex prm = s1_index(ModelKind::PRM, p);
    double out_prm = s1_outage(ModelKind::PRM, p).value;
    double cond = s1_cond_phym_given_prm_ok(p).value;
    // joint consistency: Pr[x ok] * Pr[y out | x ok] + joint(y out, x out) = Pr[y out]
    double joint_yout_xok = (1.0 - out_prm) * cond;
    CHECK(prm.p_md == doctest::Approx(joint_yout_xok / out_phym).epsilon(1e-9));
    CHECK(prm.p_fa ==
          doctest::Approx((out_prm - (out_phym - joint_yout_xok)) / (1.0 - out_phym))
              .epsilon(1e-9));
    CHECK(prm.value ==
          doctest::Approx(1.0 - prm.xi * prm.p_fa - (1.0 - prm.xi) * prm.p_md));
}

TEST_CASE("protocol-model endpoint limits of the index") {
    Scenario1Params p = microwave_params(80.0);
    double xi = s1_index(ModelKind::PRM, p).xi;
    p.a = 1e-4;
    p.r_prm = 1e-4; // vanishing guard radius: x never declares outage
    CHECK(s1_index(ModelKind::PRM, p).value == doctest::Approx(xi).epsilon(0.02));
    p.a = 1.0;
    p.r_prm = 500.0; // enormous guard radius: x always declares outage
    CHECK(s1_index(ModelKind::PRM, p).value == doctest::Approx(1.0 - xi).epsilon(0.02));
}

TEST_CASE("region measure and far-field closed forms") {
    double theta = kTwoPi * 20.0 / 360.0, lambda_t = 1.0 / 900.0, el = 0.008;
    QuadratureSpec spec;
    for (double R : {25.0, 100.0, 400.0}) {
        double direct = lambda_t * theta * theta / kTwoPi *
                        integrate([&](double r) { return std::exp(-el * r) * r; }, 0.0, R,
                                  spec)
                            .value;
        CHECK(region_measure(theta, lambda_t, el, R) ==
              doctest::Approx(direct).epsilon(1e-9));
        FarField ff = far_field(theta, lambda_t, el, R);
        double tail = lambda_t * theta * theta / kTwoPi *
                      integrate_to_infinity([&](double r) { return std::exp(-el * r) * r; },
                                            R, spec)
                          .value;
        CHECK(ff.measure == doctest::Approx(tail).epsilon(1e-8));
        CHECK(ff.p_empty == doctest::Approx(std::exp(-tail)).epsilon(1e-8));
    }
    // near + far partition the total mass theta^2 lambda_t / (2 pi (eps lambda)^2)
    double total = theta * theta * lambda_t / (kTwoPi * el * el);
    CHECK(region_measure(theta, lambda_t, el, 150.0) +
              far_field(theta, lambda_t, el, 150.0).measure ==
          doctest::Approx(total).epsilon(1e-12));
    // vacancy probability strictly increases with distance
    double prev = far_field(theta, lambda_t, el, 0.0).p_empty;
    for (double R = 20.0; R <= 500.0; R += 20.0) {
        double cur = far_field(theta, lambda_t, el, R).p_empty;
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("directional Rayleigh outage closed forms vs quadrature oracle") {
    for (double d_t : {30.0, 80.0}) {
        Scenario2Params p = mmwave_params(d_t);
        CHECK(s2_outage(ModelKind::PhyM, p).value ==
              doctest::Approx(1.0 - oracle_s2_ok(p, 0.0,
                                                 std::numeric_limits<double>::infinity()))
                  .epsilon(1e-6));
        CHECK(s2_outage(ModelKind::IBM, p).value ==
              doctest::Approx(1.0 - oracle_s2_ok(p, 0.0, p.r_ibm)).epsilon(1e-6));
        double big_g = kTwoPi / p.theta;
        double prm_ok = std::exp(-region_measure(p.theta, p.lambda_t, p.eps_lambda_o,
                                                 p.r_prm)) *
                        std::exp(-p.beta * p.sigma /
                                 (p.p * gain_at(p, p.d0) * big_g * big_g));
        CHECK(s2_outage(ModelKind::PRM, p).value ==
              doctest::Approx(1.0 - prm_ok).epsilon(1e-9));
        double cond = 1.0 - std::exp(p.beta * p.sigma /
                                     (p.p * gain_at(p, p.d0) * big_g * big_g)) *
                                oracle_s2_ok(p, p.r_prm,
                                             std::numeric_limits<double>::infinity());
        CHECK(s2_cond_phym_given_prm_ok(p).value == doctest::Approx(cond).epsilon(1e-6));
        AnalyticIndex idx = s2_index(ModelKind::IBM, p);
        CHECK(idx.p_fa == 0.0);
        CHECK(idx.value ==
              doctest::Approx(1.0 - idx.xi * idx.p_fa - (1.0 - idx.xi) * idx.p_md));
    }
}

TEST_CASE("deterministic-channel zero-false-alarm radius") {
    Scenario2Params p = mmwave_params(30.0);
    ZetaThreshold zt = zeta_threshold(p);
    double gain_ratio = p.theta / kTwoPi;
    double expected_zeta = std::pow(p.d0, -p.alpha) / p.beta -
                           p.sigma / (p.p * p.c) * gain_ratio * gain_ratio;
    CHECK(zt.zeta == doctest::Approx(expected_zeta).epsilon(1e-12));
    CHECK(zt.r_max == doctest::Approx(std::pow(expected_zeta, -1.0 / p.alpha)));
    CHECK(zt.r_max == doctest::Approx(35.6).epsilon(2e-3));
}

TEST_CASE("deterministic-channel Chernoff bounds are ordered and in range") {
    for (double d_t : {30.0, 80.0}) {
        Scenario2Params p = mmwave_params(d_t);
        double lower_ibm = s3_chernoff_ibm_lower(p, p.r_ibm);
        double upper_phym = s3_chernoff_phym_upper(p);
        CHECK(lower_ibm >= 0.0);
        CHECK(lower_ibm <= 1.0);
        CHECK(upper_phym >= 0.0);
        CHECK(upper_phym <= 1.0);
        // Pr[ball-model outage] <= Pr[full-model outage], so the bounds must nest
        CHECK(lower_ibm <= upper_phym + 1e-12);
        p.r_prm = zeta_threshold(p).r_max; // bounds hold in the zero-false-alarm range
        auto [lo, hi] = s3_prm_index_bounds(p);
        CHECK(lo >= 0.0);
        CHECK(hi == 1.0);
        CHECK(lo <= hi);
    }
}
