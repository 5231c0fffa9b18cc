#pragma once

#include "herald/solvers/spec.hpp"
#include "herald/solvers/verdict.hpp"

#include <stdexcept>
#include <string>

namespace herald::solvers {

inline constexpr const char* kTokenEnvVar = "HERALD_API_TOKEN";

class SolverError : public std::runtime_error {
 public:
  SolverError(std::string solver_id, const std::string& what)
      : std::runtime_error(solver_id + ": " + what), solver_id_(std::move(solver_id)) {}
  const std::string& solver_id() const { return solver_id_; }

 private:
  std::string solver_id_;
};

class Timeout : public SolverError {
 public:
  using SolverError::SolverError;
};

class MalformedResponse : public SolverError {
 public:
  using SolverError::SolverError;
};

class TransportError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Maps a reported confidence in [0, 1] to a raw score through log-odds,
// clamped away from the endpoints.
double confidence_to_score(double confidence);

// POSTs {id, prompt, max_tokens} to spec.endpoint and reads
// {answer, confidence, tool_trace?}. The bearer token, when set, comes from
// HERALD_API_TOKEN. Timeout and TransportError are retried spec.retries
// times; MalformedResponse is not.
SolverVerdict solve_remote(const SolverSpec& spec, const std::string& prompt, int timeout_ms);

}  // namespace herald::solvers
