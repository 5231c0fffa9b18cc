#include "herald/policy/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace herald::policy {

double brevity(double output_tokens) { return std::exp(-std::max(output_tokens, 0.0) / 512.0); }

double reward(bool correct, double elapsed_s, double brevity, const RewardWeights& weights, double tau_time,
              std::optional<double> deadline_s) {
  if (!(elapsed_s >= 0)) throw std::invalid_argument("elapsed time must be >= 0");
  double r = weights.correct * (correct ? 1.0 : 0.0) + weights.efficiency * std::exp(-tau_time * elapsed_s) +
             weights.elegance * brevity;
  if (deadline_s && elapsed_s > *deadline_s) r += kDeadlinePenalty;
  return r;
}

}  // namespace herald::policy
