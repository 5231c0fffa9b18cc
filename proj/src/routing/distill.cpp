#include "herald/routing/distill.hpp"

#include "herald/common/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace herald::routing {

NonFiniteLoss::NonFiniteLoss(int step)
    : std::runtime_error("distillation loss became non-finite at step " + std::to_string(step)), step_(step) {}

Objective distill_objective(const RouterModel& m, const DistillSet& data, double alpha, double tau) {
  const std::size_t n = data.features.size();
  if (n == 0) throw EmptyTrainingSet("no distillation samples");
  if (data.teacher_logits.size() != n || data.hard_labels.size() != n) {
    throw std::invalid_argument("distillation inputs are not aligned");
  }
  Objective out;
  out.weight_gradient.assign(m.weights.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = data.features[i];
    const Simplex3 z = logits(m, x);
    const auto& t = data.teacher_logits[i];
    const auto kd = losses::kd_loss({z.begin(), z.end()}, {t.begin(), t.end()}, data.hard_labels[i], alpha, tau);
    out.value += kd.value;
    for (std::size_t r = 0; r < kRegimeCount; ++r) {
      out.bias_gradient[r] += kd.gradient[r];
      for (std::size_t j = 0; j < m.features; ++j) out.weight_gradient[r * m.features + j] += kd.gradient[r] * x[j];
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  out.value *= inv;
  for (double& g : out.weight_gradient) g *= inv;
  for (double& g : out.bias_gradient) g *= inv;
  return out;
}

RouterModel distill_router(const DistillSet& data, const DistillHyper& hyper) {
  if (data.features.empty()) throw EmptyTrainingSet("no distillation samples");
  if (!(hyper.alpha >= 0 && hyper.alpha <= 1)) throw std::invalid_argument("alpha must be in [0, 1]");
  if (!(hyper.tau > 0)) throw std::invalid_argument("tau must be > 0");
  if (hyper.steps < 0 || !(hyper.lr > 0)) throw std::invalid_argument("steps must be >= 0 and lr > 0");

  RouterModel m = RouterModel::zeros(data.features.front().size());
  for (int step = 0; step < hyper.steps; ++step) {
    const Objective obj = distill_objective(m, data, hyper.alpha, hyper.tau);
    if (!std::isfinite(obj.value)) throw NonFiniteLoss(step);
    const double lr = hyper.lr * 0.5 * (1.0 + std::cos(std::numbers::pi * step / hyper.steps));
    for (std::size_t k = 0; k < m.weights.size(); ++k) m.weights[k] -= lr * obj.weight_gradient[k];
    for (std::size_t r = 0; r < kRegimeCount; ++r) m.bias[r] -= lr * obj.bias_gradient[r];
  }
  return m;
}

double teacher_agreement(const RouterModel& m, const DistillSet& data) {
  if (data.features.empty()) throw EmptyTrainingSet("agreement over an empty set");
  int agree = 0;
  for (std::size_t i = 0; i < data.features.size(); ++i) {
    const Simplex3 z = logits(m, data.features[i]);
    const Simplex3& t = data.teacher_logits[i];
    if (std::max_element(z.begin(), z.end()) - z.begin() == std::max_element(t.begin(), t.end()) - t.begin()) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(data.features.size());
}

DistillSet synthetic_routing_set(std::size_t rows, std::uint64_t centre_seed, std::uint64_t sample_seed) {
  Rng centre_rng(centre_seed);
  std::array<std::vector<double>, 3> centres;
  for (auto& c : centres) {
    c.resize(kRouteFeatureCount);
    for (double& x : c) x = centre_rng.uniform();
  }
  Rng rng(sample_seed);
  DistillSet set;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t k = rng.below(3);
    std::vector<double> x(kRouteFeatureCount);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = centres[k][j] + rng.normal(0, 0.15);
    Simplex3 t{};
    for (std::size_t r = 0; r < 3; ++r) t[r] = (r == k ? 3.0 : 0.0) + rng.normal(0, 0.5);
    set.features.push_back(std::move(x));
    set.teacher_logits.push_back(t);
    set.hard_labels.push_back(static_cast<std::size_t>(std::max_element(t.begin(), t.end()) - t.begin()));
  }
  return set;
}

}  // namespace herald::routing
