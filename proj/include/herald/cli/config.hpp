#pragma once

#include "herald/solvers/spec.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace herald::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Thresholds {
  double conf_threshold = 0.8;
  double tau_sym = 0.25;
  double eps_H = 0.1;
  double delta_H = 0.01;
  int k_max = 48;
  double eps_equiv = 1e-6;
  double gamma = 2.0;
  double fallback_confidence = 0.2;
};

struct RunConfig {
  std::string dataset;
  std::string output;
  std::vector<solvers::SolverSpec> solvers;
  Thresholds thresholds;
  std::uint64_t seed = 2024;
  int runs = 10;
  std::array<double, 3> split{0.8, 0.1, 0.1};
  int calibration_bins = 15;
  std::optional<std::string> router_path;
  int workers = 1;
  int max_in_flight = 8;
  bool cache = false;
  std::size_t cache_capacity = 4096;
  double min_cosine = 0.95;
  std::uint64_t hyperplane_seed = 0x4C5348;
  bool lenient = false;
  int max_failures = 0;
};

// Three simulated solvers, one per role, and the documented thresholds.
RunConfig default_config();

// Throws ConfigError naming the first offending field.
void validate(const RunConfig& config);

// With comments, every object gains a "_comments" member describing where
// each default comes from; config_from_json ignores it.
nlohmann::json to_json(const RunConfig& config, bool with_comments = false);

// Missing fields keep their defaults; unknown fields are rejected. Throws
// ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

nlohmann::json solver_to_json(const solvers::SolverSpec& spec);
solvers::SolverSpec solver_from_json(const nlohmann::json& j);

}  // namespace herald::cli
