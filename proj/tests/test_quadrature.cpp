#include <cmath>

#include "doctest.h"

#include "imsim/quadrature.hpp"

using namespace imsim;

TEST_CASE("adaptive quadrature reproduces closed-form integrals") {
    QuadratureSpec spec;
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::acos(-1.0), spec).value ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, spec).value ==
          doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-10));
    // integrable singularity-adjacent behavior
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, spec).value ==
          doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("semi-infinite integration handles slow power-law decay") {
    QuadratureSpec spec;
    // int_1^inf r^-2.6 dr = 1/1.6
    CHECK(integrate_to_infinity([](double r) { return std::pow(r, -2.6); }, 1.0, spec).value ==
          doctest::Approx(1.0 / 1.6).epsilon(1e-7));
    CHECK(integrate_to_infinity([](double r) { return std::exp(-r); }, 0.0, spec).value ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Gauss-Laguerre exponential expectations") {
    // E[h^k] = k! for unit-mean exponential
    CHECK(expectation_exponential([](double h) { return h; }) == doctest::Approx(1.0));
    CHECK(expectation_exponential([](double h) { return h * h; }) ==
          doctest::Approx(2.0).epsilon(1e-8));
    // E[e^{-sh}] = 1/(1+s)
    for (double s : {0.3, 1.0, 4.0}) {
        CHECK(expectation_exponential([s](double h) { return std::exp(-s * h); }) ==
              doctest::Approx(1.0 / (1.0 + s)).epsilon(1e-6));
    }
    const GaussLaguerreRule& rule = gauss_laguerre(32);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("golden-section minimization") {
    double x = golden_section_min([](double t) { return (t - 1.3) * (t - 1.3); }, 0.0, 5.0);
    CHECK(x == doctest::Approx(1.3).epsilon(1e-7));
}
