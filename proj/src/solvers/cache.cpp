#include "herald/solvers/cache.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace herald::solvers {

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return 0.0;
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

ResponseCache::ResponseCache(std::size_t capacity, double min_cosine) : capacity_(capacity), min_cosine_(min_cosine) {
  if (capacity == 0) throw std::invalid_argument("cache capacity must be positive");
  if (!(min_cosine > -1.0 && min_cosine <= 1.0)) throw std::invalid_argument("min_cosine must lie in (-1, 1]");
}

std::optional<std::vector<SolverVerdict>> ResponseCache::lookup(std::uint64_t signature,
                                                                std::span<const double> features) const {
  std::shared_lock lock(mutex_);
  const Entry* best = nullptr;
  double best_cos = min_cosine_;
  auto [lo, hi] = entries_.equal_range(signature);
  for (auto it = lo; it != hi; ++it) {
    const double c = cosine(features, it->second->features);
    if (c >= best_cos) {
      best = it->second.get();
      best_cos = c;
    }
  }
  if (!best) return std::nullopt;
  best->hits.fetch_add(1, std::memory_order_relaxed);
  best->last_use.store(clock_.fetch_add(1) + 1, std::memory_order_relaxed);
  return best->verdicts;
}

void ResponseCache::store(std::uint64_t signature, std::vector<double> features, std::vector<SolverVerdict> verdicts) {
  std::unique_lock lock(mutex_);
  auto [lo, hi] = entries_.equal_range(signature);
  for (auto it = lo; it != hi; ++it) {
    if (it->second->features == features) {
      it->second->verdicts = std::move(verdicts);
      it->second->last_use.store(clock_.fetch_add(1) + 1, std::memory_order_relaxed);
      return;
    }
  }
  if (entries_.size() >= capacity_) {
    auto victim = entries_.begin();
    for (auto it = entries_.begin(); it != entries_.end(); ++it)
      if (it->second->last_use.load(std::memory_order_relaxed) < victim->second->last_use.load(std::memory_order_relaxed))
        victim = it;
    entries_.erase(victim);
  }
  auto e = std::make_unique<Entry>();
  e->signature = signature;
  e->features = std::move(features);
  e->verdicts = std::move(verdicts);
  e->last_use.store(clock_.fetch_add(1) + 1, std::memory_order_relaxed);
  entries_.emplace(signature, std::move(e));
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::uint64_t ResponseCache::hit_count(std::uint64_t signature, std::span<const double> features) const {
  std::shared_lock lock(mutex_);
  auto [lo, hi] = entries_.equal_range(signature);
  for (auto it = lo; it != hi; ++it)
    if (std::equal(features.begin(), features.end(), it->second->features.begin(), it->second->features.end()))
      return it->second->hits.load();
  return 0;
}

}  // namespace herald::solvers
