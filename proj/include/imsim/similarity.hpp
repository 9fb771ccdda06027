#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "imsim/histogram.hpp"
#include "imsim/interference.hpp"

namespace imsim {

// Mergeable confusion counts for the outage hypothesis test.
struct OutageCounts {
    std::uint64_t n_h0 = 0;       // gamma_y >= beta
    std::uint64_t n_h1 = 0;       // gamma_y < beta
    std::uint64_t n_false_alarm = 0; // x declares outage under H0
    std::uint64_t n_miss = 0;        // x misses an outage under H1

    void add(bool x_outage, bool y_outage) {
        if (y_outage) {
            ++n_h1;
            if (!x_outage) ++n_miss;
        } else {
            ++n_h0;
            if (x_outage) ++n_false_alarm;
        }
    }
    void merge(const OutageCounts& o) {
        n_h0 += o.n_h0;
        n_h1 += o.n_h1;
        n_false_alarm += o.n_false_alarm;
        n_miss += o.n_miss;
    }
};

struct ErrorStats {
    double p_fa = 0.0;
    double p_md = 0.0;
    double xi = 0.0; // Pr[gamma_y >= beta]
    std::uint64_t n_h0 = 0;
    std::uint64_t n_h1 = 0;
    double se_fa = 0.0;
    double se_md = 0.0;
    bool p_fa_defined = true;
    bool p_md_defined = true;
};

enum class Provenance { monte_carlo, analytic, bound };

struct IndexResult {
    double value = 0.0;
    double beta_db = 0.0;
    double xi_used = 0.0;
    Provenance provenance = Provenance::monte_carlo;
};

ErrorStats error_stats_from_counts(const OutageCounts& counts);

ErrorStats error_probs(const std::vector<SinrPair>& pairs, double beta);

IndexResult similarity_index(const ErrorStats& stats,
                             std::optional<double> xi_override = std::nullopt);

// Bhattacharyya coefficient rho = sum sqrt(f_x f_y) and distance -ln(rho).
std::pair<double, double> bhattacharyya(const Histogram& dist_x, const Histogram& dist_y);
std::pair<double, double> bhattacharyya(const std::vector<double>& f_x,
                                        const std::vector<double>& f_y);

// KL divergence with the reference in the denominator and log base 10:
// sum f_other * log10(f_other / f_ref). This orientation and base reproduce
// the published comparison-table values (0.059, 0.098).
double kl_divergence(const Histogram& dist_ref, const Histogram& dist_other);
double kl_divergence(const std::vector<double>& f_ref, const std::vector<double>& f_other);

double euclidean_distance(const std::vector<double>& f_a, const std::vector<double>& f_b);

// Index sandwich from the Bhattacharyya coefficient (clamped to [0,1]):
// lower = 3/2 - xi - rho*sqrt(xi(1-xi)), upper = 1 - xi + sqrt(1/4 - xi(1-xi)rho^2).
std::pair<double, double> bhattacharyya_index_bounds(double xi, double rho);

} // namespace imsim
