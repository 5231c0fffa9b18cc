#pragma once

#include "herald/calibration/calibration.hpp"
#include "herald/cli/config.hpp"
#include "herald/cli/dataset.hpp"
#include "herald/ensemble/success_stats.hpp"
#include "herald/metrics/metrics.hpp"
#include "herald/routing/features.hpp"
#include "herald/routing/router.hpp"
#include "herald/solvers/cache.hpp"
#include "herald/solvers/lsh.hpp"
#include "herald/solvers/verdict.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

namespace herald::cli {

struct SolverFailure {
  std::string solver_id;  // the role name for "unconfigured"
  std::string kind;       // "timeout", "malformed", "transport" or "unconfigured"
  std::string message;
};

struct Round {
  std::vector<solvers::SolverVerdict> verdicts;
  std::vector<double> confidence;  // calibrated, parallel to verdicts
  std::vector<double> weight;      // ensemble weight, parallel to verdicts
  std::vector<SolverFailure> failures;
};

struct RunOutcome {
  answer::AnswerValue answer;
  int iterations = 0;  // 0 for a single-solver route
  bool fallback = false;
  bool cache_hit = false;
  double support = 0;
  std::vector<double> entropy_history;
  int failed_rounds = 0;
  std::optional<bool> correct;  // empty without a reference answer
  std::optional<std::string> error;
  double elapsed_s = 0;
  double memory_mb = 0;
  bool tool_used = false;
  // Why a single-solver route fell back to the ensemble.
  std::vector<SolverFailure> route_failures;
  std::vector<preprocess::ReferenceStep> steps;
  std::vector<bool> step_correct;
  std::vector<Round> rounds;
};

struct ProblemResult {
  std::string id;
  std::optional<std::string> category;
  std::optional<std::string> reference_answer;
  std::optional<std::vector<preprocess::ReferenceStep>> reference_steps;
  routing::RoutingDecision route;
  double operator_density = 0;
  std::uint64_t signature = 0;
  std::uint32_t bucket = 0;
  std::vector<RunOutcome> runs;  // config.runs entries, first run first

  bool failed() const;
};

struct CalibrationOutcome {
  calibration::SolverCalibration fit;
  std::optional<std::string> fallback_reason;  // set when T = 1 was kept by necessity
  std::optional<double> ece_before;
  std::optional<double> ece_after;
};

struct RunResult {
  RunConfig config;
  std::size_t train_size = 0;
  std::size_t val_size = 0;
  std::size_t test_size = 0;
  std::vector<SkippedLine> skipped;
  std::vector<CalibrationOutcome> calibrations;
  std::vector<ProblemResult> problems;
  std::optional<metrics::Summary> summary;
  int evaluated = 0;  // test problems with a reference answer
  int failures = 0;
};

// Everything a problem evaluation reads. Built once per run; only the
// cache is mutated while problems are evaluated.
class Engine {
 public:
  Engine(RunConfig config, routing::RouterModel router);

  const RunConfig& config() const { return config_; }
  const routing::RouterModel& router() const { return router_; }

  // One attempt per solver on each training problem with a reference.
  void learn_success_stats(const std::vector<preprocess::Problem>& train);
  // R runs per solver on the validation split; T = 1 on degenerate data.
  std::vector<CalibrationOutcome> fit_calibrations(const std::vector<preprocess::Problem>& val);
  void set_temperatures(const std::vector<CalibrationOutcome>& fits);

  ProblemResult evaluate(const preprocess::Problem& problem) const;

  const ensemble::SuccessStats& success_stats() const { return stats_; }

 private:
  solvers::SolverVerdict call(const solvers::SolverSpec& spec, const preprocess::Problem& p,
                              std::uint64_t seed) const;
  Round run_round(const preprocess::Problem& p, std::uint32_t bucket, std::uint64_t seed) const;
  void weigh(Round& round, std::uint32_t bucket) const;
  RunOutcome run_once(const preprocess::Problem& p, const routing::RoutingDecision& route, std::uint64_t signature,
                      const std::vector<double>& features, std::uint64_t seed) const;

  RunConfig config_;
  routing::RouterModel router_;
  solvers::Hyperplanes planes_;
  std::vector<double> temperature_;  // parallel to config_.solvers
  ensemble::SuccessStats stats_;
  std::unique_ptr<solvers::ResponseCache> cache_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

// Router from config.router_path, or the built-in one.
routing::RouterModel load_router(const RunConfig& config);

// Ingests config.dataset (IoError, SchemaError), splits, learns success
// statistics on train, calibrates on val and evaluates test with
// config.workers threads. Per-problem failures are recorded, not thrown.
RunResult run_pipeline(const RunConfig& config);
RunResult run_pipeline(const RunConfig& config, Dataset dataset);

// Builds metric records from evaluated problems that carry a reference.
std::vector<metrics::RunRecord> metric_records(const std::vector<ProblemResult>& problems);

}  // namespace herald::cli
