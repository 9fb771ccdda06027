#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "imsim/montecarlo.hpp"

namespace imsim {

// Deterministic shortest-roundtrip decimal formatting ('.' decimal point).
std::string format_number(double v);

// RFC-4180 style quoting: fields with commas, quotes, or newlines are quoted.
std::string csv_escape(const std::string& field);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text(const std::string& path, const std::string& text);

std::string timestamp_name(const std::string& verb, const std::string& extension);

std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_row(const RunReport& report);

nlohmann::json config_json(const ScenarioConfig& config);
nlohmann::json report_json(const RunReport& report);
nlohmann::json analytic_json(const AnalyticIndex& index);
nlohmann::json fit_json(const FitC0Result& fit);

} // namespace imsim
