#pragma once

#include "imsim/geometry.hpp"
#include "imsim/interference.hpp"
#include "imsim/quadrature.hpp"
#include "imsim/similarity.hpp"

namespace imsim {

// All fields linear / SI. Scenario 1: Rayleigh fading, omnidirectional.
struct Scenario1Params {
    double lambda_t = 0.0; // interferers per m^2
    double d0 = 20.0;      // typical link length, m
    double alpha = 3.6;
    double c = 1.0;        // linear attenuation at the reference distance
    double a = 1.0;        // singularity radius, m
    double p = 0.1;        // W
    double sigma = 1e-14;  // W
    double beta = 1.0;     // linear SINR threshold
    double r_ibm = 60.0;
    double r_prm = 40.0;
    void validate() const;
};

// Scenario 2/3 add directionality (sector antennas, zero side lobe in the
// closed forms) and exponential blockage with parameter eps_lambda_o.
struct Scenario2Params : Scenario1Params {
    double theta = kTwoPi; // beamwidth, radians
    double eps_lambda_o = 0.0;
    void validate() const;
};

struct AnalyticResult {
    double value = 0.0;
    double tolerance = 0.0;
};

struct AnalyticIndex {
    double p_fa = 0.0;
    double p_md = 0.0;
    double xi = 0.0; // Pr[gamma_y >= beta]
    double value = 0.0;
};

// ---- Scenario 1 closed forms ----
AnalyticResult s1_outage(ModelKind model, const Scenario1Params& params,
                         const QuadratureSpec& quad = {});
AnalyticResult s1_cond_phym_given_prm_ok(const Scenario1Params& params,
                                         const QuadratureSpec& quad = {});
AnalyticIndex s1_index(ModelKind model, const Scenario1Params& params,
                       const QuadratureSpec& quad = {});

// ---- Region measures / far field ----
double region_measure(double theta, double lambda_t, double eps_lambda_o, double R);
struct FarField {
    double measure = 0.0;
    double p_empty = 0.0;
};
FarField far_field(double theta, double lambda_t, double eps_lambda_o, double R);

// ---- Scenario 2 closed forms ----
AnalyticResult s2_outage(ModelKind model, const Scenario2Params& params,
                         const QuadratureSpec& quad = {});
AnalyticResult s2_cond_phym_given_prm_ok(const Scenario2Params& params,
                                         const QuadratureSpec& quad = {});
AnalyticIndex s2_index(ModelKind model, const Scenario2Params& params,
                       const QuadratureSpec& quad = {});

// ---- Scenario 3 (deterministic channel) ----
struct ZetaThreshold {
    double zeta = 0.0;
    double r_max = 0.0; // zeta^{-1/alpha}, largest zero-false-alarm PRM radius
};
ZetaThreshold zeta_threshold(const Scenario2Params& params);

// Chernoff lower bound on Pr[gamma_IBM < beta] under the deterministic channel.
double s3_chernoff_ibm_lower(const Scenario2Params& params, double r_ibm,
                             const QuadratureSpec& quad = {});
// Chernoff upper bound on Pr[gamma_PhyM < beta].
double s3_chernoff_phym_upper(const Scenario2Params& params, const QuadratureSpec& quad = {});

// Index sandwich for the PRM in Scenario 3:
// lower = max(Pr[gamma_PRM < beta], bound on Pr[gamma_PhyM >= beta]), upper = 1.
std::pair<double, double> s3_prm_index_bounds(const Scenario2Params& params,
                                              const QuadratureSpec& quad = {});

} // namespace imsim
