#include "imsim/similarity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace imsim {

ErrorStats error_stats_from_counts(const OutageCounts& counts) {
    ErrorStats s;
    s.n_h0 = counts.n_h0;
    s.n_h1 = counts.n_h1;
    std::uint64_t n = counts.n_h0 + counts.n_h1;
    if (n == 0) throw std::invalid_argument("error_stats_from_counts: no samples");
    s.xi = static_cast<double>(counts.n_h0) / n;
    if (counts.n_h0 > 0) {
        s.p_fa = static_cast<double>(counts.n_false_alarm) / counts.n_h0;
        s.se_fa = std::sqrt(s.p_fa * (1.0 - s.p_fa) / counts.n_h0);
    } else {
        s.p_fa = 0.0; // weight xi = 0 nullifies it in the index
        s.p_fa_defined = false;
    }
    if (counts.n_h1 > 0) {
        s.p_md = static_cast<double>(counts.n_miss) / counts.n_h1;
        s.se_md = std::sqrt(s.p_md * (1.0 - s.p_md) / counts.n_h1);
    } else {
        s.p_md = 0.0;
        s.p_md_defined = false;
    }
    return s;
}

ErrorStats error_probs(const std::vector<SinrPair>& pairs, double beta) {
    if (pairs.empty()) throw std::invalid_argument("error_probs: no pairs");
    OutageCounts counts;
    for (const SinrPair& pair : pairs) {
        counts.add(outage(pair.gamma_x, beta), outage(pair.gamma_y, beta));
    }
    return error_stats_from_counts(counts);
}

IndexResult similarity_index(const ErrorStats& stats, std::optional<double> xi_override) {
    double xi = xi_override.value_or(stats.xi);
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("similarity_index: xi outside [0,1]");
    IndexResult r;
    r.xi_used = xi;
    r.value = 1.0 - xi * stats.p_fa - (1.0 - xi) * stats.p_md;
    return r;
}

std::pair<double, double> bhattacharyya(const std::vector<double>& f_x,
                                        const std::vector<double>& f_y) {
    if (f_x.size() != f_y.size()) throw std::invalid_argument("bhattacharyya: mismatched binning");
    double rho = 0.0;
    for (size_t i = 0; i < f_x.size(); ++i) rho += std::sqrt(f_x[i] * f_y[i]);
    if (rho > 1.0) rho = 1.0;
    double dist = rho > 0.0 ? -std::log(rho) : std::numeric_limits<double>::infinity();
    return {rho, dist};
}

std::pair<double, double> bhattacharyya(const Histogram& dist_x, const Histogram& dist_y) {
    if (dist_x.bins() != dist_y.bins() || dist_x.lo_db() != dist_y.lo_db() ||
        dist_x.hi_db() != dist_y.hi_db()) {
        throw std::invalid_argument("bhattacharyya: mismatched binning");
    }
    return bhattacharyya(dist_x.normalized(), dist_y.normalized());
}

double kl_divergence(const std::vector<double>& f_ref, const std::vector<double>& f_other) {
    if (f_ref.size() != f_other.size()) throw std::invalid_argument("kl_divergence: mismatched binning");
    double kl = 0.0;
    for (size_t i = 0; i < f_ref.size(); ++i) {
        if (f_other[i] > 0.0) {
            if (f_ref[i] <= 0.0) return std::numeric_limits<double>::infinity();
            kl += f_other[i] * std::log10(f_other[i] / f_ref[i]);
        }
    }
    return kl;
}

double kl_divergence(const Histogram& dist_ref, const Histogram& dist_other) {
    if (dist_ref.bins() != dist_other.bins() || dist_ref.lo_db() != dist_other.lo_db() ||
        dist_ref.hi_db() != dist_other.hi_db()) {
        throw std::invalid_argument("kl_divergence: mismatched binning");
    }
    return kl_divergence(dist_ref.normalized(), dist_other.normalized());
}

double euclidean_distance(const std::vector<double>& f_a, const std::vector<double>& f_b) {
    if (f_a.size() != f_b.size()) throw std::invalid_argument("euclidean_distance: mismatched binning");
    double sq = 0.0;
    for (size_t i = 0; i < f_a.size(); ++i) {
        double d = f_a[i] - f_b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

std::pair<double, double> bhattacharyya_index_bounds(double xi, double rho) {
    if (!(xi >= 0.0 && xi <= 1.0 && rho >= 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("bhattacharyya_index_bounds: inputs outside range");
    }
    double lower = 1.5 - xi - rho * std::sqrt(xi * (1.0 - xi));
    double upper = 1.0 - xi + std::sqrt(std::max(0.0, 0.25 - xi * (1.0 - xi) * rho * rho));
    auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
    return {clamp01(lower), clamp01(upper)};
}

} // namespace imsim
