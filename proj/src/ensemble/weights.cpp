#include "herald/ensemble/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace herald::ensemble {

EnsembleWeights ensemble_weights(const std::array<double, 3>& c, const std::array<double, 3>& s, double gamma) {
  EnsembleWeights out;
  out.gamma = gamma;
  out.confidence = c;
  out.success_rate = s;
  std::array<double, 3> z{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(c[i] >= 0 && c[i] <= 1) || !(s[i] >= 0 && s[i] <= 1)) {
      throw std::invalid_argument("confidences and success rates must lie in [0, 1]");
    }
    z[i] = gamma * c[i] * s[i];
  }
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.w[i] = std::exp(z[i] - top);
    sum += out.w[i];
  }
  for (double& v : out.w) v /= sum;
  return out;
}

}  // namespace herald::ensemble
