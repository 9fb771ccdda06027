#include "imsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace imsim {
namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric; positive half listed).
const double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kKronrodNodes[i]);
        fv[14 - i] = f(c + h * kKronrodNodes[i]);
    }
    fv[7] = f(c);
    double kronrod = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        kronrod += kKronrodWeights[i] * (i == 7 ? fv[7] : fv[i] + fv[14 - i]);
    }
    for (int i = 0; i < 4; ++i) {
        int j = 2 * i + 1; // Gauss points are the odd Kronrod points
        gauss += kGaussWeights[i] * (j == 7 ? fv[7] : fv[j] + fv[14 - j]);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * h;
    p.error = std::fabs((kronrod - gauss) * h);
    return p;
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    if (a == b) return {0.0, 0.0};
    std::vector<Panel> panels{evaluate_panel(f, a, b)};
    double total = panels[0].value;
    double total_err = panels[0].error;
    int subdivisions = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (++subdivisions > spec.max_subdivisions) {
            throw QuadratureError("adaptive quadrature did not converge", total_err);
        }
        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const Panel& x, const Panel& y) { return x.error < y.error; });
        Panel old = *worst;
        double mid = 0.5 * (old.a + old.b);
        Panel left = evaluate_panel(f, old.a, mid);
        Panel right = evaluate_panel(f, mid, old.b);
        *worst = left;
        panels.push_back(right);
        total += left.value + right.value - old.value;
        total_err += left.error + right.error - old.error;
    }
    return {total, total_err};
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureSpec& spec) {
    double span = std::max(1.0, std::fabs(a));
    QuadratureResult acc = integrate(f, a, a + span, spec);
    double lo = a + span;
    for (int i = 0; i < 60; ++i) {
        span *= 2.0;
        QuadratureResult part = integrate(f, lo, lo + span, spec);
        acc.value += part.value;
        acc.error_estimate += part.error_estimate;
        lo += span;
        if (std::fabs(part.value) < std::max(spec.abs_tol, spec.rel_tol * std::fabs(acc.value))) {
            return acc;
        }
    }
    throw QuadratureError("semi-infinite integral did not converge", acc.error_estimate);
}

const GaussLaguerreRule& gauss_laguerre(int n) {
    static std::mutex mutex;
    static std::map<int, GaussLaguerreRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLaguerreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double x = 0.0;
    for (int i = 0; i < n; ++i) {
        // Stroud-Secrest style initial guesses, then Newton on L_n.
        if (i == 0) {
            x = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            x += 15.0 / (1.0 + 2.5 * n);
        } else {
            double ai = i - 1;
            x += (1.0 + 2.55 * ai) / (1.9 * ai) * (x - rule.nodes[i - 2]);
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for Laguerre polynomials: p1 = L_n(x), pp = L_n'(x).
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1 - x) * p2 - j * p3) / (j + 1);
            }
            pp = n * (p1 - p2) / x;
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15 * std::max(1.0, std::fabs(x))) break;
        }
        rule.nodes[i] = x;
        // w_i = x_i / ((n+1)^2 [L_{n+1}(x_i)]^2) reduces to the form below.
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p3 = p2;
            p2 = p1;
            p1 = ((2 * j + 1 - x) * p2 - j * p3) / (j + 1);
        }
        pp = n * (p1 - p2) / x;
        rule.weights[i] = 1.0 / (x * pp * pp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double expectation_exponential(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    const GaussLaguerreRule& rule = gauss_laguerre(spec.fading_nodes);
    double sum = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(rule.nodes[i]);
    }
    return sum;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::fabs(a) + std::fabs(b))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace imsim
