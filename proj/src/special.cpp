#include "imsim/special.hpp"

#include <cmath>
#include <limits>

namespace imsim {
namespace {

// Regularized lower series: γ(s,x) = x^s e^{-x} Σ_{n≥0} x^n / (s(s+1)...(s+n)),
// good for x < s + 1.
double lower_gamma_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(s * std::log(x) - x);
}

// Continued fraction (modified Lentz) for Γ(s,x), good for x ≥ s + 1.
double upper_gamma_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return f * std::exp(s * std::log(x) - x);
}

double gamma_positive(double s, double x) {
    if (x == 0.0) return std::tgamma(s);
    if (x < s + 1.0) return std::tgamma(s) - lower_gamma_series(s, x);
    return upper_gamma_cf(s, x);
}

} // namespace

double upper_incomplete_gamma(double s, double x) {
    if (x < 0.0 || !std::isfinite(x)) {
        if (std::isinf(x) && x > 0.0) return 0.0;
        throw std::domain_error("upper_incomplete_gamma: x must be >= 0");
    }
    if (s > 0.0) return gamma_positive(s, x);
    if (x == 0.0) throw std::domain_error("upper_incomplete_gamma: divergent for s <= 0, x = 0");

    // Raise s into (0,1] by k steps, then come back down with
    // Γ(s,x) = (Γ(s+1,x) - x^s e^{-x}) / s.
    int k = static_cast<int>(std::ceil(-s)) + 1;
    double g = gamma_positive(s + k, x);
    double log_x = std::log(x);
    for (int i = k - 1; i >= 0; --i) {
        double si = s + i;
        g = (g - std::exp(si * log_x - x)) / si;
    }
    return g;
}

} // namespace imsim
