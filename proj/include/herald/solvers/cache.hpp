#pragma once

#include "herald/solvers/verdict.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace herald::solvers {

inline constexpr std::size_t kDefaultCacheCapacity = 4096;
inline constexpr double kDefaultMinCosine = 0.95;

double cosine(std::span<const double> a, std::span<const double> b);

// Verdict cache keyed by LSH signature. A lookup hits only when the
// signature matches exactly and the stored features are within min_cosine.
// Lookups share a reader lock; stores are serialized. Eviction is least
// recently used.
class ResponseCache {
 public:
  explicit ResponseCache(std::size_t capacity = kDefaultCacheCapacity, double min_cosine = kDefaultMinCosine);

  std::optional<std::vector<SolverVerdict>> lookup(std::uint64_t signature, std::span<const double> features) const;
  void store(std::uint64_t signature, std::vector<double> features, std::vector<SolverVerdict> verdicts);

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  double min_cosine() const { return min_cosine_; }
  // Hits recorded against the entry holding exactly these features.
  std::uint64_t hit_count(std::uint64_t signature, std::span<const double> features) const;

 private:
  struct Entry {
    std::uint64_t signature = 0;
    std::vector<double> features;
    std::vector<SolverVerdict> verdicts;
    mutable std::atomic<std::uint64_t> hits{0};
    mutable std::atomic<std::uint64_t> last_use{0};
  };

  std::size_t capacity_;
  double min_cosine_;
  mutable std::shared_mutex mutex_;
  mutable std::atomic<std::uint64_t> clock_{0};
  std::unordered_multimap<std::uint64_t, std::unique_ptr<Entry>> entries_;
};

}  // namespace herald::solvers
