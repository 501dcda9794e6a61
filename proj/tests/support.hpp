#pragma once

// Shared helpers for the unit and acceptance suites.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "wsnsim/wsnsim.hpp"

namespace wsnsim::testing {

inline std::filesystem::path scenario_dir() { return WSNSIM_SCENARIO_DIR; }
inline std::filesystem::path data_dir() { return WSNSIM_TEST_DATA_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Scenario canonical() { return load_scenario(scenario_dir() / "canonical.json"); }

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("wsnsim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Value-semantics view of a noiseless constant environment.
inline Environment constant_env(const SensorType& type, double value) {
    FieldSpec f;
    f.sensor_type = type;
    f.baseline = value;
    return Environment({f}, {}, NoiseSource{0});
}

// Small property-test harness: draws `cases` inputs from a seeded engine.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>{lo, hi}(rng); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>{lo, hi}(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution{p}(rng); }
};

inline constexpr int kPropertyCases = 1000;

}  // namespace wsnsim::testing
