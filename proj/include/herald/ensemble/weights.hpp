#pragma once

#include <array>

namespace herald::ensemble {

inline constexpr double kDefaultGamma = 2.0;

struct EnsembleWeights {
  std::array<double, 3> w{};
  double gamma = kDefaultGamma;
  std::array<double, 3> confidence{};
  std::array<double, 3> success_rate{};
};

// softmax(gamma * c_i * s_i). c and s must lie in [0, 1].
EnsembleWeights ensemble_weights(const std::array<double, 3>& c, const std::array<double, 3>& s,
                                 double gamma = kDefaultGamma);

}  // namespace herald::ensemble
