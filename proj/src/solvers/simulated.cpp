#include "herald/solvers/simulated.hpp"

#include "herald/answer/parse.hpp"
#include "herald/answer/simplify.hpp"
#include "herald/common/random.hpp"

#include <cmath>
#include <stdexcept>

namespace herald::solvers {

namespace {

// The reference moved by `offset`, as text the answer kernel can read.
std::string shifted(const std::string& reference, int offset) {
  const auto v = answer::normalize_or_unparsed(reference);
  if (v.is_exact()) return answer::render(v.as_exact() + offset);
  if (v.is_decimal()) return answer::render(answer::Decimal::from_rational(v.as_decimal().to_rational() + offset, answer::kAnswerDigits));
  const std::string sign = offset < 0 ? " - " : " + ";
  return "(" + reference + ")" + sign + std::to_string(std::abs(offset));
}

int nonzero_offset(Rng& rng) {
  const int k = 1 + static_cast<int>(rng.below(9));
  return rng.bernoulli(0.5) ? k : -k;
}

}  // namespace

double SimulatedProfile::accuracy_for(const std::optional<std::string>& category) const {
  if (category) {
    const auto it = accuracy_by_category.find(*category);
    if (it != accuracy_by_category.end()) return it->second;
  }
  return default_accuracy;
}

void SolverSpec::validate() const {
  if (id.empty()) throw std::invalid_argument("solver id is empty");
  if (kind == SolverKind::Simulated && !profile) throw std::invalid_argument("simulated solver " + id + " has no profile");
  if (kind == SolverKind::Remote && endpoint.empty()) throw std::invalid_argument("remote solver " + id + " has no endpoint");
}

SolverVerdict solve_simulated(const SolverSpec& spec, const preprocess::Problem& problem, std::uint64_t seed) {
  if (spec.kind != SolverKind::Simulated || !spec.profile) throw std::invalid_argument("not a simulated solver");
  const SimulatedProfile& prof = *spec.profile;
  Rng rng(derive_seed(derive_seed(seed, spec.id), problem.id));

  const bool correct = rng.uniform() < prof.accuracy_for(problem.category);
  const int offset = nonzero_offset(rng);
  const std::string reference =
      problem.reference_answer ? *problem.reference_answer : std::to_string(fnv1a64(problem.id) % 1000);
  const std::string final_text = correct ? reference : shifted(reference, offset);

  SolverVerdict v;
  v.solver_id = spec.id;
  v.role = spec.role;
  if (problem.reference_steps) {
    v.steps = *problem.reference_steps;
    if (!correct && !v.steps.empty()) {
      v.steps.back().expression = shifted(v.steps.back().expression, offset);
      v.steps.back().value = shifted(v.steps.back().value, offset);
    }
  }
  v.raw_answer = "Reasoning step by step.\nThe answer is \\boxed{" + final_text + "}";
  v.answer = answer::normalize_or_unparsed(answer::extract_answer_text(v.raw_answer));
  const double direction = correct ? 1.0 : -1.0;
  v.raw_score = prof.scale * (direction * prof.signal + prof.noise * rng.normal()) + prof.bias;
  v.latency_ms = prof.latency_median_ms * std::exp(prof.latency_log_sigma * rng.normal());
  if (spec.role == SolverRole::ToolIntegrated) {
    const int calls = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < calls; ++i) {
      ToolCall c;
      c.action = "python";
      c.duration_ms = 50 + 200 * rng.uniform();
      c.success = correct || rng.bernoulli(0.5);
      v.tool_trace.push_back(c);
    }
  }
  return v;
}

}  // namespace herald::solvers
