#include "herald/policy/replay.hpp"

#include "herald/common/random.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <limits>

namespace herald::policy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_priority(double p) {
  if (!(p >= 0) || !std::isfinite(p)) throw std::invalid_argument("priority must be finite and >= 0");
}

}  // namespace

ReplayBuffer::ReplayBuffer(std::size_t capacity, double alpha) : capacity_(capacity), alpha_(alpha) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be > 0");
  if (!(alpha >= 0)) throw std::invalid_argument("priority exponent must be >= 0");
  leaves_ = std::bit_ceil(capacity);
  sum_.assign(2 * leaves_, 0.0);
  min_.assign(2 * leaves_, kInf);
  items_.reserve(capacity);
}

void ReplayBuffer::set_mass(std::size_t i, double priority) {
  const double m = priority == 0 ? 0.0 : std::pow(priority, alpha_);
  std::size_t node = leaves_ + i;
  sum_[node] = m;
  min_[node] = m > 0 ? m : kInf;
  for (node /= 2; node >= 1; node /= 2) {
    sum_[node] = sum_[2 * node] + sum_[2 * node + 1];
    min_[node] = std::min(min_[2 * node], min_[2 * node + 1]);
  }
}

void ReplayBuffer::add(Transition tr) {
  check_priority(tr.priority);
  max_priority_ = std::max(max_priority_, tr.priority);
  const double p = tr.priority;
  std::size_t slot = next_;
  if (items_.size() < capacity_) {
    slot = items_.size();
    items_.push_back(std::move(tr));
  } else {
    items_[slot] = std::move(tr);
  }
  set_mass(slot, p);
  next_ = (slot + 1) % capacity_;
}

void ReplayBuffer::add_with_max_priority(Transition tr) {
  tr.priority = max_priority_;
  add(std::move(tr));
}

void ReplayBuffer::set_priority(std::size_t index, double priority) {
  check_priority(priority);
  items_.at(index).priority = priority;
  max_priority_ = std::max(max_priority_, priority);
  set_mass(index, priority);
}

void ReplayBuffer::update_from_td(std::size_t index, double delta) { set_priority(index, std::abs(delta) + kPriorityFloor); }

double ReplayBuffer::min_positive_mass() const { return min_[1] == kInf ? 0.0 : min_[1]; }

std::size_t ReplayBuffer::find(double u) const {
  std::size_t node = 1;
  while (node < leaves_) {
    const std::size_t left = 2 * node;
    if (u < sum_[left] || sum_[left + 1] == 0) {
      node = left;
    } else {
      u -= sum_[left];
      node = left + 1;
    }
  }
  std::size_t i = node - leaves_;
  // Rounding can land on an empty or zero-mass leaf; step back to a live one.
  while (i > 0 && (i >= items_.size() || sum_[leaves_ + i] == 0)) --i;
  return i;
}

SampledBatch sample_prioritized(const ReplayBuffer& buffer, std::size_t batch, std::uint64_t rng_seed, double beta) {
  if (buffer.empty()) throw EmptyBuffer("cannot sample from an empty replay buffer");
  const double total = buffer.total_mass();
  if (!(total > 0)) throw std::invalid_argument("all priorities are zero");
  const double n = static_cast<double>(buffer.size());
  const double max_weight = std::pow(n * buffer.min_positive_mass() / total, -beta);

  Rng rng(rng_seed);
  SampledBatch out;
  out.indices.reserve(batch);
  out.importance.reserve(batch);
  for (std::size_t k = 0; k < batch; ++k) {
    const std::size_t i = buffer.find(rng.uniform() * total);
    out.indices.push_back(i);
    out.importance.push_back(std::pow(n * buffer.mass(i) / total, -beta) / max_weight);
  }
  return out;
}

}  // namespace herald::policy
