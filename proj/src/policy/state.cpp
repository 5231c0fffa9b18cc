#include "herald/policy/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace herald::policy {

namespace {

double unit(double x) { return std::isfinite(x) ? std::clamp(x, 0.0, 1.0) : 0.0; }

}  // namespace

std::optional<std::size_t> coarse_topic(std::string_view c) {
  if (c == "algebra" || c == "linear_algebra" || c == "sequences") return 0;
  if (c == "geometry" || c == "trigonometry") return 1;
  if (c == "calculus") return 2;
  if (c == "probability" || c == "statistics" || c == "combinatorics") return 3;
  if (c == "number_theory") return 4;
  if (c == "arithmetic") return 5;
  if (c == "word_problems") return 6;
  return std::nullopt;
}

PolicyState make_state(const StateInputs& in) {
  PolicyState s{};
  s[kTokenLength] = unit(in.token_length / 512.0);
  s[kDensity] = unit(in.operator_density);
  s[kMagnitude] = unit(std::log10(1.0 + std::abs(in.max_magnitude)) / 9.0);
  if (in.topic && *in.topic < kTopicCount) s[kTopicBegin + *in.topic] = 1.0;
  s[kStepIndex] = unit(in.step_index / 32.0);
  s[kReasoningLength] = unit(in.reasoning_length / 2048.0);
  s[kLastConfidence] = unit(in.last_confidence);
  s[kEnsembleEntropy] = unit(in.ensemble_entropy / std::log(3.0));
  s[kToolCalls] = unit(in.tool_calls / 16.0);
  s[kToolSuccess] = unit(in.mean_tool_success);
  s[kToolTime] = unit(std::log1p(std::max(in.tool_ms, 0.0)) / 10.0);
  return s;
}

}  // namespace herald::policy
