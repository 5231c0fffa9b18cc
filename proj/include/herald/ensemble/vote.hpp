#pragma once

#include "herald/answer/equivalence.hpp"
#include "herald/answer/value.hpp"
#include "herald/solvers/verdict.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace herald::ensemble {

inline constexpr double kDefaultEpsH = 0.1;
inline constexpr double kDefaultDeltaH = 0.01;
inline constexpr int kDefaultKMax = 48;

class AllUnparsed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTally : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TallyClass {
  answer::AnswerValue representative;
  double weight = 0;
};

// Weighted equivalence classes in first-seen order. An answer joins the
// first class whose representative it is equivalent to.
class Tally {
 public:
  explicit Tally(double eps_equiv = answer::kDefaultEpsEquiv) : eps_equiv_(eps_equiv) {}

  // Unparsed answers are ignored; returns whether the answer was counted.
  bool add(const answer::AnswerValue& a, double weight);
  void merge(const Tally& other);

  bool empty() const { return classes_.empty(); }
  double total() const;
  const std::vector<TallyClass>& classes() const { return classes_; }

  // Heaviest class; the earliest one on ties. Throws EmptyTally.
  const TallyClass& leader() const;

 private:
  double eps_equiv_;
  std::vector<TallyClass> classes_;
};

struct WeightedAnswer {
  answer::AnswerValue answer;
  double weight = 0;
};

struct Combined {
  answer::AnswerValue answer;
  double support = 0;
  Tally tally;
};

Combined combine(std::span<const WeightedAnswer> ballot, double eps_equiv = answer::kDefaultEpsEquiv);
Combined combine(std::span<const solvers::SolverVerdict> verdicts, std::span<const double> weights,
                 double eps_equiv = answer::kDefaultEpsEquiv);

// Shannon entropy (natural log) of the normalized tally.
double vote_entropy(const Tally& tally);

// history holds H^(1..k). True iff H^(k) < eps_H, or k >= 2 and
// |H^(k) - H^(k-1)| < delta_H, or k >= k_max.
bool should_stop(std::span<const double> history, double eps_H, double delta_H, int k, int k_max);

struct VoteConfig {
  double eps_H = kDefaultEpsH;
  double delta_H = kDefaultDeltaH;
  int k_max = kDefaultKMax;
  double eps_equiv = answer::kDefaultEpsEquiv;
};

// `tally` accumulates every round. `entropy_history` holds the entropy of
// each counted round's own vote distribution; rounds in which every answer
// was unparsed add nothing to either and are listed in failed_rounds.
struct VoteState {
  int k = 0;
  Tally tally;
  std::vector<double> entropy_history;
  int failed_rounds = 0;
};

struct VoteResult {
  answer::AnswerValue answer;
  int iterations = 0;
  VoteState state;
};

// The sampler is called with the 1-based round index.
using Sampler = std::function<std::vector<WeightedAnswer>(int round)>;

// Runs rounds until should_stop fires on the per-round entropies, then
// returns the leader of the accumulated tally. Throws AllUnparsed when no
// round produced a parsable answer.
VoteResult iterative_vote(const Sampler& sampler, const VoteConfig& config = {});

}  // namespace herald::ensemble
