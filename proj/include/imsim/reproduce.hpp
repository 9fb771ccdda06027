#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imsim/config.hpp"

namespace imsim {

// Configuration of one of the twelve simplified-mmWave experiments (1-based).
ScenarioConfig table3_config(int experiment, std::uint64_t seed = 1,
                             std::uint64_t trials = 100000, int threads = 1);

struct ReproduceOutput {
    std::string csv_path;
    std::string json_path;
};

std::vector<std::string> reproduce_targets();

// Emits the data behind one published figure/table as CSV plus a JSON sidecar
// carrying the full configuration and seed.
ReproduceOutput reproduce(const std::string& target, const std::string& out_dir,
                          std::uint64_t seed = 1, std::uint64_t trials = 100000,
                          int threads = 1);

} // namespace imsim
