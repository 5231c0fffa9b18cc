#pragma once

#include "herald/common/random.hpp"
#include "herald/losses/losses.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace herald::testing {

struct GradientCheck {
  int points = 0;
  double worst_relative_error = 0;
};

// Compares the analytic kd_loss gradient against central differences at
// random logit vectors. The relative error of each component is measured
// against max(|fd|, |analytic|, 1e-3) so tiny components do not dominate.
inline GradientCheck check_kd_gradient(std::uint64_t seed, int points, double h = 1e-5,
                                       double alpha = losses::kDefaultKdAlpha,
                                       double tau = losses::kDefaultKdTau) {
  Rng rng(seed);
  GradientCheck out;
  for (int p = 0; p < points; ++p) {
    const std::size_t n = 2 + rng.below(6);
    std::vector<double> zs(n), zt(n);
    for (std::size_t i = 0; i < n; ++i) {
      zs[i] = rng.normal(0, 3);
      zt[i] = rng.normal(0, 3);
    }
    const std::size_t label = rng.below(n);
    const auto analytic = losses::kd_loss(zs, zt, label, alpha, tau);
    for (std::size_t i = 0; i < n; ++i) {
      auto up = zs, down = zs;
      up[i] += h;
      down[i] -= h;
      const double fd = (losses::kd_loss(up, zt, label, alpha, tau).value -
                         losses::kd_loss(down, zt, label, alpha, tau).value) /
                        (2 * h);
      const double scale = std::max({std::fabs(fd), std::fabs(analytic.gradient[i]), 1e-3});
      out.worst_relative_error = std::max(out.worst_relative_error, std::fabs(fd - analytic.gradient[i]) / scale);
    }
    ++out.points;
  }
  return out;
}

}  // namespace herald::testing
