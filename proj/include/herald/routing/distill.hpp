#pragma once

#include "herald/losses/losses.hpp"
#include "herald/routing/router.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace herald::routing {

class EmptyTrainingSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteLoss : public std::runtime_error {
 public:
  explicit NonFiniteLoss(int step);
  int step() const { return step_; }

 private:
  int step_;
};

struct DistillHyper {
  double alpha = losses::kDefaultKdAlpha;
  double tau = losses::kDefaultKdTau;
  int steps = 3000;
  double lr = 0.1;
};

struct DistillSet {
  std::vector<std::vector<double>> features;
  std::vector<Simplex3> teacher_logits;
  std::vector<std::size_t> hard_labels;
};

// Mean kd_loss over the set, with its gradient in RouterModel layout
// (weights then bias).
struct Objective {
  double value = 0;
  std::vector<double> weight_gradient;
  Simplex3 bias_gradient{};
};

Objective distill_objective(const RouterModel& m, const DistillSet& data, double alpha, double tau);

// Full-batch gradient descent from zero weights with a cosine-decayed
// learning rate lr * (1 + cos(pi * t / steps)) / 2.
RouterModel distill_router(const DistillSet& data, const DistillHyper& hyper = {});

// Fraction of rows where the student's argmax equals the teacher's.
double teacher_agreement(const RouterModel& m, const DistillSet& data);

// Three regime clusters with centres drawn from Rng(centre_seed) in
// [0, 1]^17 and per-feature noise N(0, 0.15); teacher logits are
// 3 * onehot + N(0, 0.5) and the hard label is the teacher's argmax.
// Rows come from Rng(sample_seed), so sets sharing centre_seed share
// clusters.
DistillSet synthetic_routing_set(std::size_t rows, std::uint64_t centre_seed, std::uint64_t sample_seed);

}  // namespace herald::routing
