#pragma once

#include "herald/policy/qmodel.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace herald::policy {

inline constexpr double kPriorityExponent = 0.6;
inline constexpr double kImportanceBeta = 0.4;
inline constexpr std::size_t kReplayCapacity = 10'000;
inline constexpr double kPriorityFloor = 1e-3;

class EmptyBuffer : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fixed-capacity ring of transitions with sum and min trees over
// priority^alpha, so sampling costs O(log n) per draw. Not synchronized:
// callers serialize writers themselves.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = kReplayCapacity, double alpha = kPriorityExponent);

  // Stores with the transition's own priority.
  void add(Transition tr);
  // Stores with the largest priority seen so far, so new data is sampled
  // at least once soon.
  void add_with_max_priority(Transition tr);

  void set_priority(std::size_t index, double priority);
  // priority = |delta| + 1e-3
  void update_from_td(std::size_t index, double delta);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Transition& at(std::size_t i) const { return items_[i]; }

  double alpha() const { return alpha_; }
  // Sum of priority^alpha over stored items.
  double total_mass() const { return sum_[1]; }
  // Smallest positive priority^alpha, or 0 when there is none.
  double min_positive_mass() const;
  double mass(std::size_t i) const { return sum_[leaves_ + i]; }
  // The item whose cumulative-mass interval contains u, for u in
  // [0, total_mass()).
  std::size_t find(double u) const;

 private:
  void set_mass(std::size_t i, double priority);

  std::size_t capacity_;
  double alpha_;
  std::size_t leaves_;
  std::size_t next_ = 0;
  double max_priority_ = 1.0;
  std::vector<Transition> items_;
  std::vector<double> sum_;
  std::vector<double> min_;
};

struct SampledBatch {
  std::vector<std::size_t> indices;
  std::vector<double> importance;  // (N * P(i))^-beta divided by the buffer maximum
};

// Draws `batch` indices with replacement, P(i) proportional to
// priority^alpha with the buffer's alpha.
SampledBatch sample_prioritized(const ReplayBuffer& buffer, std::size_t batch, std::uint64_t rng_seed,
                                double beta = kImportanceBeta);

}  // namespace herald::policy
