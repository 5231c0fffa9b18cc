#include "herald/metrics/metrics.hpp"

#include "herald/answer/simplify.hpp"

#include <algorithm>
#include <cmath>

namespace herald::metrics {

namespace {

void require_records(const std::vector<RunRecord>& records) {
  if (records.empty()) throw EmptyRecords("no run records");
}

}  // namespace

bool first_run_correct(const RunRecord& r, double eps_equiv) {
  return !r.predictions.empty() && answer::equivalent(r.predictions.front(), r.reference, eps_equiv);
}

double accuracy(const std::vector<RunRecord>& records, double eps_equiv) {
  require_records(records);
  const auto hits = std::count_if(records.begin(), records.end(),
                                  [&](const RunRecord& r) { return first_run_correct(r, eps_equiv); });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

bool step_matches(const preprocess::ReferenceStep& step, const preprocess::ReferenceStep& reference) {
  const auto got = answer::normalize_or_unparsed(step.expression);
  const auto want = answer::normalize_or_unparsed(reference.value);
  if (got.is_unparsed() || want.is_unparsed()) return false;
  return answer::within_tolerance(got, want, kStepTolerance);
}

bool steps_match(const std::vector<preprocess::ReferenceStep>& steps,
                 const std::vector<preprocess::ReferenceStep>& reference) {
  if (steps.size() != reference.size()) return false;
  for (std::size_t j = 0; j < steps.size(); ++j)
    if (!step_matches(steps[j], reference[j])) return false;
  return true;
}

double comp_acc(const std::vector<RunRecord>& records) {
  int eligible = 0;
  int correct = 0;
  for (const auto& r : records) {
    if (!r.reference_steps) continue;
    ++eligible;
    if (steps_match(r.steps, *r.reference_steps) && !r.predictions.empty() &&
        answer::within_tolerance(r.predictions.front(), r.reference, kStepTolerance)) {
      ++correct;
    }
  }
  if (eligible == 0) throw NoEligibleRecords("no record carries reference steps");
  return static_cast<double>(correct) / eligible;
}

double pcs(const std::vector<RunRecord>& records, double eps_equiv) {
  require_records(records);
  double total = 0;
  for (const auto& r : records) {
    if (r.step_correct.empty()) {
      total += first_run_correct(r, eps_equiv) ? 1.0 : 0.0;
      continue;
    }
    if (!r.step_weights.empty() && r.step_weights.size() != r.step_correct.size()) {
      throw std::invalid_argument("step weights and flags differ in length");
    }
    double num = 0;
    double den = 0;
    for (std::size_t j = 0; j < r.step_correct.size(); ++j) {
      const double w = r.step_weights.empty() ? 1.0 : r.step_weights[j];
      if (!(w > 0)) throw std::invalid_argument("step weights must be positive");
      den += w;
      if (r.step_correct[j]) num += w;
    }
    total += num / den;
  }
  return total / static_cast<double>(records.size());
}

double consistency(const std::vector<RunRecord>& records, int runs, double eps_equiv) {
  require_records(records);
  if (runs < 1) throw std::invalid_argument("R must be >= 1");
  double total = 0;
  for (const auto& r : records) {
    if (r.predictions.size() != static_cast<std::size_t>(runs)) {
      throw std::invalid_argument("record " + r.problem_id + " does not carry R predictions");
    }
    std::vector<std::pair<const answer::AnswerValue*, int>> classes;
    for (const auto& p : r.predictions) {
      auto it = std::find_if(classes.begin(), classes.end(),
                             [&](const auto& c) { return answer::equivalent(*c.first, p, eps_equiv); });
      if (it == classes.end()) {
        classes.emplace_back(&p, 1);
      } else {
        ++it->second;
      }
    }
    int modal = 0;
    for (const auto& c : classes) modal = std::max(modal, c.second);
    total += static_cast<double>(modal) / runs;
  }
  return total / static_cast<double>(records.size());
}

double efficiency(double accuracy, double time_s, double memory_mb) {
  if (time_s < 0 || memory_mb < 0) throw std::invalid_argument("time and memory must be >= 0");
  const double den = std::log1p(time_s) * std::log1p(memory_mb);
  return accuracy / std::max(den, kEfficiencyFloor);
}

std::optional<double> tue(const std::vector<RunRecord>& records, double eps_equiv) {
  int used = 0;
  int correct = 0;
  for (const auto& r : records) {
    if (!r.tool_used) continue;
    ++used;
    if (first_run_correct(r, eps_equiv)) ++correct;
  }
  if (used == 0) return std::nullopt;
  return static_cast<double>(correct) / used;
}

Summary summarize(const std::vector<RunRecord>& records, int runs, double eps_equiv) {
  require_records(records);
  Summary s;
  s.accuracy = accuracy(records, eps_equiv);
  try {
    s.comp_acc = comp_acc(records);
  } catch (const NoEligibleRecords&) {
  }
  s.pcs = pcs(records, eps_equiv);
  s.consistency = consistency(records, runs, eps_equiv);
  for (const auto& r : records) {
    s.mean_time_s += r.elapsed_s;
    s.mean_memory_mb += r.memory_mb;
  }
  s.mean_time_s /= static_cast<double>(records.size());
  s.mean_memory_mb /= static_cast<double>(records.size());
  s.efficiency = efficiency(s.accuracy, s.mean_time_s, s.mean_memory_mb);
  s.tue = tue(records, eps_equiv);
  return s;
}

}  // namespace herald::metrics
