#pragma once

#include "herald/solvers/verdict.hpp"

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>

namespace herald::ensemble {

inline constexpr double kFallbackConfidence = 0.2;

// Problems are bucketed by the top 8 bits of their LSH signature.
std::uint32_t bucket_of(std::uint64_t signature);

struct SuccessCounts {
  int attempts = 0;
  int correct = 0;
};

// Per (solver, bucket) outcome counts. Reads may run concurrently; writes
// are serialized.
class SuccessStats {
 public:
  SuccessStats() = default;
  SuccessStats(const SuccessStats& other);
  SuccessStats& operator=(const SuccessStats& other);

  void record(const std::string& solver_id, std::uint32_t bucket, bool correct);
  SuccessCounts counts(const std::string& solver_id, std::uint32_t bucket) const;

  // (correct + 1) / (attempts + 2); 0.5 for an unseen bucket.
  double rate(const std::string& solver_id, std::uint32_t bucket) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::string, std::uint32_t>, SuccessCounts> counts_;
};

SuccessStats update_success_stats(SuccessStats stats, const std::string& solver_id, std::uint32_t bucket,
                                  bool correct);

// True when every calibrated confidence is below the fallback threshold.
bool needs_fallback(std::span<const double> calibrated, double threshold = kFallbackConfidence);

// The verdict of the solver with the best success rate in the bucket. Ties
// go to the tool-integrated solver, then by role order, then by position.
const solvers::SolverVerdict& fallback_answer(std::span<const solvers::SolverVerdict> verdicts,
                                              const SuccessStats& stats, std::uint32_t bucket);

}  // namespace herald::ensemble
