#pragma once

#include <optional>

namespace herald::policy {

struct RewardWeights {
  double correct = 0.7;
  double efficiency = 0.2;
  double elegance = 0.1;
};

inline constexpr double kDefaultTauTime = 0.1;  // per second
inline constexpr double kDeadlinePenalty = -0.05;

// exp(-output_tokens / 512)
double brevity(double output_tokens);

// w_c * [correct] + w_e * exp(-tau * t) + w_g * brevity, plus the deadline
// penalty when a deadline is given and elapsed_s exceeds it.
double reward(bool correct, double elapsed_s, double brevity, const RewardWeights& weights = {},
              double tau_time = kDefaultTauTime, std::optional<double> deadline_s = std::nullopt);

}  // namespace herald::policy
