#include "imsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "imsim/propagation.hpp"

namespace imsim {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "-inf") return -std::numeric_limits<double>::infinity();
    if (value == "inf") return std::numeric_limits<double>::infinity();
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config: bad boolean value for '" + key + "': " + value);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

ScenarioId parse_scenario(const std::string& value) {
    if (value == "s1") return ScenarioId::S1;
    if (value == "s2") return ScenarioId::S2;
    if (value == "s3") return ScenarioId::S3;
    if (value == "s4") return ScenarioId::S4;
    throw std::invalid_argument("config: unknown scenario '" + value + "' (want s1|s2|s3|s4)");
}

std::string scenario_name(ScenarioId id) {
    switch (id) {
        case ScenarioId::S1: return "s1";
        case ScenarioId::S2: return "s2";
        case ScenarioId::S3: return "s3";
        case ScenarioId::S4: return "s4";
    }
    return "s1";
}

} // namespace

double ScenarioConfig::z_linear() const {
    if (z_db <= -1e8) return 0.0;
    return db_to_linear(z_db);
}

void ScenarioConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("config: ") + what);
    };
    require(trials > 0, "trials must be positive");
    require(threads >= 1, "threads must be >= 1");
    require(d_t > 0, "d_t must be positive");
    require(d0 >= a && a > 0, "need d0 >= a > 0");
    require(alpha > 0, "alpha must be positive");
    require(theta_deg > 0 && theta_deg <= 360.0, "theta_deg must be in (0, 360]");
    require(z_linear() >= 0 && z_linear() <= 1, "side-lobe gain must be in [0, 1]");
    require(eps_lambda_o >= 0, "eps_lambda_o must be >= 0");
    require(fading == "rayleigh" || fading == "nakagami" || fading == "deterministic",
            "fading must be rayleigh|nakagami|deterministic");
    require(nakagami_m >= 0.5, "nakagami_m must be >= 0.5");
    require(fading_c0 > 0, "fading_c0 must be positive");
    require(x_model == "phym" || x_model == "ibm" || x_model == "prm" || x_model == "tim",
            "x_model must be phym|ibm|prm|tim");
    require(r_ibm > 0 || (scenario == ScenarioId::S3 && r_ibm <= 0), "r_ibm must be positive");
    require(r_prm > 0 || (scenario == ScenarioId::S3 && r_prm <= 0), "r_prm must be positive");
    require(x_fading.empty() || x_fading == "deterministic",
            "x_fading must be empty or deterministic");
    require(x_c0 > 0, "x_c0 must be positive");
    require(d_o > 0, "d_o must be positive");
    require(refl_coeff > 0 && refl_coeff <= 1, "refl_coeff must be in (0, 1]");
    require(refl_prob >= 0 && refl_prob <= 1, "refl_prob must be in [0, 1]");
    require(shadow_db >= 0, "shadow_db must be >= 0");
    require(window > d0, "window must exceed d0");
    require(truncation_radius >= 0, "truncation_radius must be >= 0");
    if (scenario == ScenarioId::S2 || scenario == ScenarioId::S3) {
        require(z_linear() == 0.0,
                "scenarios s2/s3 assume zero side lobe (set z_db=-inf)");
        require(eps_lambda_o > 0, "scenarios s2/s3 need eps_lambda_o > 0");
    }
}

ScenarioConfig preset(ScenarioId id) {
    ScenarioConfig cfg;
    cfg.scenario = id;
    switch (id) {
        case ScenarioId::S1:
            break; // defaults already describe the omnidirectional setup
        case ScenarioId::S2:
            cfg.d_t = 30.0;
            cfg.c_db = -61.4;
            cfg.alpha = 2.0;
            cfg.sigma_dbm = -84.0;
            cfg.theta_deg = 20.0;
            cfg.eps_lambda_o = 0.008;
            cfg.r_prm = 40.0;
            cfg.r_ibm = 80.0;
            break;
        case ScenarioId::S3:
            cfg.d_t = 30.0;
            cfg.c_db = -61.4;
            cfg.alpha = 2.0;
            cfg.sigma_dbm = -84.0;
            cfg.theta_deg = 20.0;
            cfg.eps_lambda_o = 0.008;
            cfg.fading = "deterministic";
            cfg.fading_c0 = 1.0;
            cfg.r_prm = 0.0; // auto: largest radius with zero false alarm
            cfg.r_ibm = 0.0; // auto: twice the PRM radius
            cfg.x_model = "prm";
            break;
        case ScenarioId::S4:
            cfg.d_t = 50.0;
            cfg.c_db = -61.4;
            cfg.alpha = 2.0;
            cfg.sigma_dbm = -84.0;
            cfg.theta_deg = 20.0;
            cfg.z_db = -10.0;
            cfg.d_o = 20.0;
            cfg.l_o_db = 10.0;
            cfg.refl_coeff = 0.63;
            cfg.x_model = "phym";
            cfg.x_no_reflection = true;
            break;
    }
    return cfg;
}

void apply_override(ScenarioConfig& c, const std::string& key, const std::string& value) {
    if (key == "scenario") c.scenario = parse_scenario(value);
    else if (key == "trials") {
        c.trials = parse_u64(key, value);
        if (c.trials == 0) throw std::invalid_argument("config: trials must be >= 1");
    }
    else if (key == "seed") c.seed = parse_u64(key, value);
    else if (key == "threads") c.threads = static_cast<int>(parse_u64(key, value));
    else if (key == "d_t") c.d_t = parse_double(key, value);
    else if (key == "d0") c.d0 = parse_double(key, value);
    else if (key == "alpha") c.alpha = parse_double(key, value);
    else if (key == "c_db") c.c_db = parse_double(key, value);
    else if (key == "a") c.a = parse_double(key, value);
    else if (key == "p_dbm") c.p_dbm = parse_double(key, value);
    else if (key == "sigma_dbm") c.sigma_dbm = parse_double(key, value);
    else if (key == "beta_db") c.beta_db = parse_double(key, value);
    else if (key == "fading") c.fading = value;
    else if (key == "nakagami_m") c.nakagami_m = parse_double(key, value);
    else if (key == "fading_c0") c.fading_c0 = parse_double(key, value);
    else if (key == "theta_deg") c.theta_deg = parse_double(key, value);
    else if (key == "z_db") c.z_db = parse_double(key, value);
    else if (key == "eps_lambda_o") c.eps_lambda_o = parse_double(key, value);
    else if (key == "d_o") c.d_o = parse_double(key, value);
    else if (key == "l_o_db") c.l_o_db = parse_double(key, value);
    else if (key == "refl_coeff") c.refl_coeff = parse_double(key, value);
    else if (key == "refl_prob") c.refl_prob = parse_double(key, value);
    else if (key == "shadow_db") c.shadow_db = parse_double(key, value);
    else if (key == "window") c.window = parse_double(key, value);
    else if (key == "x_model") {
        if (value != "phym" && value != "ibm" && value != "prm" && value != "tim") {
            throw std::invalid_argument("config: x_model must be phym, ibm, prm, or tim");
        }
        c.x_model = value;
    }
    else if (key == "r_ibm") c.r_ibm = parse_double(key, value);
    else if (key == "r_prm") c.r_prm = parse_double(key, value);
    else if (key == "tim_eps_db") c.tim_eps_db = parse_double(key, value);
    else if (key == "x_no_reflection") c.x_no_reflection = parse_bool(key, value);
    else if (key == "x_impenetrable") c.x_impenetrable = parse_bool(key, value);
    else if (key == "x_no_sidelobe") c.x_no_sidelobe = parse_bool(key, value);
    else if (key == "x_fading") c.x_fading = value;
    else if (key == "x_c0") c.x_c0 = parse_double(key, value);
    else if (key == "truncation_radius") c.truncation_radius = parse_double(key, value);
    else if (key == "collect_histograms") c.collect_histograms = parse_bool(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value: " + line);
        }
        apply_override(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), base);
}

std::map<std::string, std::string> config_to_map(const ScenarioConfig& c) {
    std::map<std::string, std::string> m;
    m["scenario"] = scenario_name(c.scenario);
    m["trials"] = std::to_string(c.trials);
    m["seed"] = std::to_string(c.seed);
    m["threads"] = std::to_string(c.threads);
    m["d_t"] = format_double(c.d_t);
    m["d0"] = format_double(c.d0);
    m["alpha"] = format_double(c.alpha);
    m["c_db"] = format_double(c.c_db);
    m["a"] = format_double(c.a);
    m["p_dbm"] = format_double(c.p_dbm);
    m["sigma_dbm"] = format_double(c.sigma_dbm);
    m["beta_db"] = format_double(c.beta_db);
    m["fading"] = c.fading;
    m["nakagami_m"] = format_double(c.nakagami_m);
    m["fading_c0"] = format_double(c.fading_c0);
    m["theta_deg"] = format_double(c.theta_deg);
    m["z_db"] = c.z_db <= -1e8 ? "-inf" : format_double(c.z_db);
    m["eps_lambda_o"] = format_double(c.eps_lambda_o);
    m["d_o"] = format_double(c.d_o);
    m["l_o_db"] = format_double(c.l_o_db);
    m["refl_coeff"] = format_double(c.refl_coeff);
    m["refl_prob"] = format_double(c.refl_prob);
    m["shadow_db"] = format_double(c.shadow_db);
    m["window"] = format_double(c.window);
    m["x_model"] = c.x_model;
    m["r_ibm"] = format_double(c.r_ibm);
    m["r_prm"] = format_double(c.r_prm);
    m["tim_eps_db"] = format_double(c.tim_eps_db);
    m["x_no_reflection"] = c.x_no_reflection ? "true" : "false";
    m["x_impenetrable"] = c.x_impenetrable ? "true" : "false";
    m["x_no_sidelobe"] = c.x_no_sidelobe ? "true" : "false";
    m["x_fading"] = c.x_fading;
    m["x_c0"] = format_double(c.x_c0);
    m["truncation_radius"] = format_double(c.truncation_radius);
    m["collect_histograms"] = c.collect_histograms ? "true" : "false";
    return m;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, v] : config_to_map(ScenarioConfig{})) keys.push_back(k);
    return keys;
}

} // namespace imsim
