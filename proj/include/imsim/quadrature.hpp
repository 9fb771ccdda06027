#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace imsim {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    int fading_nodes = 64;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

// Adaptive Gauss-Kronrod (7-15) on a finite interval.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

// ∫_a^∞ f(r) dr with automatic doubling of the upper limit until the last
// panel contributes less than the tolerance. f must decay.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureSpec& spec = {});

// Gauss-Laguerre nodes/weights for ∫_0^∞ f(x) e^{-x} dx ≈ Σ w_i f(x_i).
struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLaguerreRule& gauss_laguerre(int n);

// E_h[f(h)] for unit-mean exponential h, via Gauss-Laguerre.
double expectation_exponential(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {});

// Golden-section minimization of a unimodal f on [a, b].
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

} // namespace imsim
