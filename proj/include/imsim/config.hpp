#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace imsim {

enum class ScenarioId { S1, S2, S3, S4 };

// Flat experiment description. User-facing powers/gains are dB/dBm (suffixed
// _db/_dbm); conversion to linear happens once inside the engines.
struct ScenarioConfig {
    ScenarioId scenario = ScenarioId::S1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int threads = 1;

    // densities and link geometry
    double d_t = 80.0; // average inter-transmitter distance, 1/sqrt(lambda_t)
    double d0 = 20.0;
    double alpha = 3.6;
    double c_db = -22.7;
    double a = 1.0;
    double p_dbm = 20.0;
    double sigma_dbm = -111.0;
    double beta_db = 5.0;

    // reference-model fading
    std::string fading = "rayleigh"; // rayleigh | nakagami | deterministic
    double nakagami_m = 3.0;
    double fading_c0 = 1.0; // deterministic value when fading = deterministic

    // directionality / blockage (Scenarios 2-4)
    double theta_deg = 360.0;
    double z_db = -1e9; // side-lobe gain; <= -1e8 means exactly zero
    double eps_lambda_o = 0.0;

    // Scenario-4 obstacles and multipath
    double d_o = 20.0; // average inter-obstacle distance, 1/sqrt(lambda_o)
    double l_o_db = 10.0;
    double refl_coeff = 0.63;
    double refl_prob = 0.1;
    double shadow_db = 5.8;
    double window = 500.0;

    // model under test
    std::string x_model = "ibm"; // phym | ibm | prm | tim
    double r_ibm = 60.0;
    double r_prm = 40.0; // <= 0 with scenario s3 means "auto" (zeta^{-1/alpha})
    double tim_eps_db = -130.0;

    // channel/antenna simplifications applied to x only
    bool x_no_reflection = false;
    bool x_impenetrable = false;
    bool x_no_sidelobe = false;
    std::string x_fading; // empty = same channel as y; "deterministic" = replace h by x_c0
    double x_c0 = 1.0;

    // numerics
    double truncation_radius = 0.0; // 0 = per-scenario auto rule
    bool collect_histograms = true;

    double lambda_t() const { return 1.0 / (d_t * d_t); }
    double lambda_o() const { return 1.0 / (d_o * d_o); }
    double z_linear() const;
    void validate() const;
};

ScenarioConfig preset(ScenarioId id);

// Flat key=value config file ('#' comments). Unknown keys are rejected.
ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base = {});
ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});
void apply_override(ScenarioConfig& config, const std::string& key, const std::string& value);
std::map<std::string, std::string> config_to_map(const ScenarioConfig& config);
std::vector<std::string> config_keys();

} // namespace imsim
