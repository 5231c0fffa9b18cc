#include "herald/ensemble/success_stats.hpp"

#include <mutex>
#include <stdexcept>

namespace herald::ensemble {

std::uint32_t bucket_of(std::uint64_t signature) { return static_cast<std::uint32_t>(signature >> 56); }

SuccessStats::SuccessStats(const SuccessStats& other) {
  std::shared_lock lock(other.mutex_);
  counts_ = other.counts_;
}

SuccessStats& SuccessStats::operator=(const SuccessStats& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  counts_ = other.counts_;
  return *this;
}

void SuccessStats::record(const std::string& solver_id, std::uint32_t bucket, bool correct) {
  std::scoped_lock lock(mutex_);
  SuccessCounts& c = counts_[{solver_id, bucket}];
  ++c.attempts;
  if (correct) ++c.correct;
}

SuccessCounts SuccessStats::counts(const std::string& solver_id, std::uint32_t bucket) const {
  std::shared_lock lock(mutex_);
  const auto it = counts_.find({solver_id, bucket});
  return it == counts_.end() ? SuccessCounts{} : it->second;
}

double SuccessStats::rate(const std::string& solver_id, std::uint32_t bucket) const {
  const SuccessCounts c = counts(solver_id, bucket);
  return (c.correct + 1.0) / (c.attempts + 2.0);
}

SuccessStats update_success_stats(SuccessStats stats, const std::string& solver_id, std::uint32_t bucket,
                                  bool correct) {
  stats.record(solver_id, bucket, correct);
  return stats;
}

bool needs_fallback(std::span<const double> calibrated, double threshold) {
  if (calibrated.empty()) return false;
  for (double c : calibrated) {
    if (!(c < threshold)) return false;
  }
  return true;
}

const solvers::SolverVerdict& fallback_answer(std::span<const solvers::SolverVerdict> verdicts,
                                              const SuccessStats& stats, std::uint32_t bucket) {
  if (verdicts.empty()) throw std::invalid_argument("fallback needs at least one verdict");
  std::size_t best = 0;
  double best_rate = stats.rate(verdicts[0].solver_id, bucket);
  for (std::size_t i = 1; i < verdicts.size(); ++i) {
    const double r = stats.rate(verdicts[i].solver_id, bucket);
    const bool better = r > best_rate ||
                        (r == best_rate && static_cast<int>(verdicts[i].role) < static_cast<int>(verdicts[best].role));
    if (better) {
      best = i;
      best_rate = r;
    }
  }
  return verdicts[best];
}

}  // namespace herald::ensemble
