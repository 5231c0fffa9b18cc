#pragma once

#include "herald/answer/equivalence.hpp"
#include "herald/answer/value.hpp"
#include "herald/preprocess/problem.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace herald::metrics {

inline constexpr double kStepTolerance = 1e-6;
inline constexpr int kDefaultRuns = 10;
inline constexpr double kEfficiencyFloor = 1e-6;

class EmptyRecords : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoEligibleRecords : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunRecord {
  std::string problem_id;
  std::vector<answer::AnswerValue> predictions;  // one per run, first run first
  answer::AnswerValue reference;
  std::vector<bool> step_correct;
  std::vector<double> step_weights;  // empty means uniform
  // The solution's (expression, value) steps and the reference ones.
  std::vector<preprocess::ReferenceStep> steps;
  std::optional<std::vector<preprocess::ReferenceStep>> reference_steps;
  bool tool_used = false;
  double elapsed_s = 0;
  double memory_mb = 0;
};

// Fraction whose first prediction is equivalent to the reference.
double accuracy(const std::vector<RunRecord>& records, double eps_equiv = answer::kDefaultEpsEquiv);

// True when the record's first prediction matches its reference.
bool first_run_correct(const RunRecord& r, double eps_equiv = answer::kDefaultEpsEquiv);

// A step matches when its expression, evaluated by the answer kernel, is
// within 1e-6 relative tolerance of the reference step's value.
bool step_matches(const preprocess::ReferenceStep& step, const preprocess::ReferenceStep& reference);
bool steps_match(const std::vector<preprocess::ReferenceStep>& steps,
                 const std::vector<preprocess::ReferenceStep>& reference);

// Over records carrying reference steps: every step matches in order and
// the first prediction matches the reference answer.
double comp_acc(const std::vector<RunRecord>& records);

// Mean weighted step correctness. A record without step flags counts as a
// single step scored by its final correctness.
double pcs(const std::vector<RunRecord>& records, double eps_equiv = answer::kDefaultEpsEquiv);

// Mean over records of (size of the largest equivalence class among the
// runs) / R. Every record must carry exactly R predictions.
double consistency(const std::vector<RunRecord>& records, int runs = kDefaultRuns,
                   double eps_equiv = answer::kDefaultEpsEquiv);

// accuracy / max(ln(1 + seconds) * ln(1 + megabytes), 1e-6)
double efficiency(double accuracy, double time_s, double memory_mb);

// Correct fraction among tool-using records; empty when none used a tool.
std::optional<double> tue(const std::vector<RunRecord>& records, double eps_equiv = answer::kDefaultEpsEquiv);

struct Summary {
  double accuracy = 0;
  std::optional<double> comp_acc;
  double pcs = 0;
  double consistency = 0;
  double efficiency = 0;
  std::optional<double> tue;
  double mean_time_s = 0;
  double mean_memory_mb = 0;
};

// All six metrics; efficiency uses the mean time and memory per record.
Summary summarize(const std::vector<RunRecord>& records, int runs, double eps_equiv = answer::kDefaultEpsEquiv);

}  // namespace herald::metrics
