#include "herald/ensemble/vote.hpp"

#include <cmath>

namespace herald::ensemble {

bool Tally::add(const answer::AnswerValue& a, double weight) {
  if (a.is_unparsed()) return false;
  if (!(weight >= 0)) throw std::invalid_argument("vote weight must be >= 0");
  for (auto& c : classes_) {
    if (answer::equivalent(c.representative, a, eps_equiv_)) {
      c.weight += weight;
      return true;
    }
  }
  classes_.push_back({a, weight});
  return true;
}

void Tally::merge(const Tally& other) {
  for (const auto& c : other.classes_) add(c.representative, c.weight);
}

double Tally::total() const {
  double t = 0;
  for (const auto& c : classes_) t += c.weight;
  return t;
}

const TallyClass& Tally::leader() const {
  if (classes_.empty()) throw EmptyTally("tally is empty");
  const TallyClass* best = &classes_.front();
  for (const auto& c : classes_) {
    if (c.weight > best->weight) best = &c;
  }
  return *best;
}

Combined combine(std::span<const WeightedAnswer> ballot, double eps_equiv) {
  Combined out{answer::AnswerValue{}, 0, Tally(eps_equiv)};
  for (const auto& b : ballot) out.tally.add(b.answer, b.weight);
  if (out.tally.empty()) throw AllUnparsed("every answer failed normalization");
  const TallyClass& top = out.tally.leader();
  out.answer = top.representative;
  out.support = top.weight;
  return out;
}

Combined combine(std::span<const solvers::SolverVerdict> verdicts, std::span<const double> weights,
                 double eps_equiv) {
  if (verdicts.size() != weights.size()) throw std::invalid_argument("one weight per verdict required");
  std::vector<WeightedAnswer> ballot;
  ballot.reserve(verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) ballot.push_back({verdicts[i].answer, weights[i]});
  return combine(ballot, eps_equiv);
}

double vote_entropy(const Tally& tally) {
  const double total = tally.total();
  if (tally.empty() || !(total > 0)) throw EmptyTally("entropy of an empty tally");
  double h = 0;
  for (const auto& c : tally.classes()) {
    if (c.weight <= 0) continue;
    const double p = c.weight / total;
    h -= p * std::log(p);
  }
  return h < 0 ? 0.0 : h;
}

bool should_stop(std::span<const double> history, double eps_H, double delta_H, int k, int k_max) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k >= k_max) return true;
  if (history.empty()) return false;
  const double h = history.back();
  if (h < eps_H) return true;
  return history.size() >= 2 && std::abs(h - history[history.size() - 2]) < delta_H;
}

VoteResult iterative_vote(const Sampler& sampler, const VoteConfig& config) {
  if (config.k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  VoteResult out{answer::AnswerValue{}, 0, VoteState{0, Tally(config.eps_equiv), {}, 0}};
  VoteState& st = out.state;
  for (int k = 1; k <= config.k_max; ++k) {
    st.k = k;
    Tally round(config.eps_equiv);
    for (const auto& b : sampler(k)) round.add(b.answer, b.weight);
    if (round.empty() || !(round.total() > 0)) {
      ++st.failed_rounds;
    } else {
      st.tally.merge(round);
      st.entropy_history.push_back(vote_entropy(round));
    }
    if (should_stop(st.entropy_history, config.eps_H, config.delta_H, k, config.k_max)) break;
  }
  if (st.tally.empty()) throw AllUnparsed("no voting round produced a parsable answer");
  out.iterations = st.k;
  out.answer = st.tally.leader().representative;
  return out;
}

}  // namespace herald::ensemble
