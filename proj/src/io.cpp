#include "imsim/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace imsim {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
    bool needs_quote = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    auto write_row = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(row[i]);
        }
        out << "\r\n";
    };
    write_row(header);
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw std::invalid_argument("write_csv: row width differs from header");
        }
        write_row(row);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string timestamp_name(const std::string& verb, const std::string& extension) {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return verb + "-" + buf + "." + extension;
}

std::vector<std::string> report_csv_header() {
    return {"scenario", "x_model", "d_t",   "beta_db", "r_ibm", "r_prm",
            "trials",   "seed",    "S",     "xi",      "p_fa",  "p_md",
            "se_fa",    "se_md",   "rate_x", "rate_y", "td_percent",
            "td_naive_percent", "bc", "bd", "kl", "euclid", "rho_cond",
            "truncation_radius"};
}

std::vector<std::string> report_csv_row(const RunReport& r) {
    auto m = config_to_map(r.config);
    const DistributionStats& d = r.distributions;
    return {m.at("scenario"),
            r.config.x_model,
            format_number(r.config.d_t),
            format_number(r.config.beta_db),
            format_number(r.config.r_ibm),
            format_number(r.config.r_prm),
            std::to_string(r.config.trials),
            std::to_string(r.config.seed),
            format_number(r.index.value),
            format_number(r.stats.xi),
            format_number(r.stats.p_fa),
            format_number(r.stats.p_md),
            format_number(r.stats.se_fa),
            format_number(r.stats.se_md),
            format_number(r.throughput.rate_x),
            format_number(r.throughput.rate_y),
            format_number(r.throughput.deviation_percent),
            format_number(r.throughput.naive_deviation_percent),
            d.available ? format_number(d.bc_marginal) : "",
            d.available ? format_number(d.bd_marginal) : "",
            d.available ? format_number(d.kl_marginal) : "",
            d.available ? format_number(d.euclid_marginal) : "",
            d.rho_cond_defined ? format_number(d.rho_cond) : "",
            format_number(r.truncation_radius)};
}

nlohmann::json config_json(const ScenarioConfig& config) {
    nlohmann::json j;
    for (const auto& [k, v] : config_to_map(config)) j[k] = v;
    return j;
}

nlohmann::json report_json(const RunReport& r) {
    nlohmann::json j;
    j["config"] = config_json(r.config);
    j["seed"] = r.config.seed;
    j["trials"] = r.config.trials;
    j["index"] = {{"S", r.index.value}, {"xi_used", r.index.xi_used},
                  {"beta_db", r.index.beta_db}};
    j["error_stats"] = {{"p_fa", r.stats.p_fa},
                        {"p_md", r.stats.p_md},
                        {"xi", r.stats.xi},
                        {"se_fa", r.stats.se_fa},
                        {"se_md", r.stats.se_md},
                        {"n_h0", r.stats.n_h0},
                        {"n_h1", r.stats.n_h1},
                        {"p_fa_defined", r.stats.p_fa_defined},
                        {"p_md_defined", r.stats.p_md_defined}};
    j["throughput"] = {{"rate_x", r.throughput.rate_x},
                       {"rate_y", r.throughput.rate_y},
                       {"gated_x", r.throughput.gated_x},
                       {"gated_y", r.throughput.gated_y},
                       {"deviation_percent", r.throughput.deviation_percent},
                       {"naive_deviation_percent", r.throughput.naive_deviation_percent}};
    if (r.distributions.available) {
        j["distributions"] = {{"bc", r.distributions.bc_marginal},
                              {"bd", r.distributions.bd_marginal},
                              {"kl", r.distributions.kl_marginal},
                              {"euclid", r.distributions.euclid_marginal}};
        if (r.distributions.rho_cond_defined) {
            j["distributions"]["rho_cond"] = r.distributions.rho_cond;
        }
    }
    j["truncation_radius"] = r.truncation_radius;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

nlohmann::json analytic_json(const AnalyticIndex& index) {
    return {{"S", index.value}, {"p_fa", index.p_fa}, {"p_md", index.p_md}, {"xi", index.xi}};
}

nlohmann::json fit_json(const FitC0Result& fit) {
    nlohmann::json j;
    j["c0"] = fit.c0;
    j["mean_index"] = fit.mean_index;
    j["beta_grid_db"] = fit.beta_grid_db;
    j["index_per_beta"] = fit.index_per_beta;
    j["throughput"] = {{"rate_x", fit.throughput.rate_x},
                       {"rate_y", fit.throughput.rate_y},
                       {"deviation_percent", fit.throughput.deviation_percent},
                       {"naive_deviation_percent", fit.throughput.naive_deviation_percent}};
    j["bc"] = fit.bc_marginal;
    j["bd"] = fit.bd_marginal;
    j["flat_objective"] = fit.flat_objective;
    j["wall_seconds"] = fit.wall_seconds;
    return j;
}

} // namespace imsim
