#pragma once

#include "herald/common/roles.hpp"

#include <map>
#include <optional>
#include <string>

namespace herald::solvers {

enum class SolverKind { Simulated, Remote };

// Behaviour of a simulated solver.
struct SimulatedProfile {
  double default_accuracy = 0.7;
  std::map<std::string, double> accuracy_by_category;
  // Raw score f = scale * (+-signal + noise * N(0, 1)) + bias, with +signal
  // for a correct answer. With noise 1 the log-odds of correctness are
  // about 2 * signal * f / scale, so scale / (2 * signal) is the
  // temperature calibration should find.
  double signal = 0.5;
  double scale = 3.0;
  double bias = 0.0;
  double noise = 1.0;
  // Latency is log-normal around the median.
  double latency_median_ms = 1500;
  double latency_log_sigma = 0.3;

  double accuracy_for(const std::optional<std::string>& category) const;
};

struct SolverSpec {
  std::string id;
  SolverKind kind = SolverKind::Simulated;
  SolverRole role = SolverRole::Router;
  std::string endpoint;  // remote only, e.g. "http://127.0.0.1:8080/solve"
  int max_tokens = 1024;
  int timeout_ms = 30'000;
  int retries = 0;
  double memory_mb = 0;  // resident footprint, feeds the efficiency metric
  std::optional<SimulatedProfile> profile;  // simulated only

  // Throws std::invalid_argument when the kind-specific fields are missing.
  void validate() const;
};

}  // namespace herald::solvers
