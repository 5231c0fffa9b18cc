#include "vote_samplers.hpp"

#include "herald/ensemble/success_stats.hpp"
#include "herald/ensemble/vote.hpp"
#include "herald/ensemble/weights.hpp"

#include <doctest.h>

#include <cmath>
#include <thread>

using namespace herald::ensemble;
using herald::SolverRole;
using herald::testing::integer_answer;

namespace {

herald::solvers::SolverVerdict verdict(std::string id, SolverRole role, long value) {
  herald::solvers::SolverVerdict v;
  v.solver_id = std::move(id);
  v.role = role;
  v.answer = integer_answer(value);
  return v;
}

}  // namespace

TEST_CASE("ensemble weight examples") {
  const auto flat = ensemble_weights({0.9, 0.2, 0.4}, {0.3, 0.8, 0.5}, 0.0);
  for (double w : flat.w) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto equal = ensemble_weights({0.5, 0.25, 1.0}, {0.5, 1.0, 0.25}, 2.0);
  for (double w : equal.w) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto w = ensemble_weights({0.9, 0.5, 0.5}, {1, 1, 1}, 2.0);
  // softmax(1.8, 1.0, 1.0) to four places.
  CHECK(std::round(w.w[0] * 1e4) == 5267);
  CHECK(std::round(w.w[1] * 1e4) == 2367);
  CHECK(std::round(w.w[2] * 1e4) == 2367);
  const double z = std::exp(1.8) + 2 * std::exp(1.0);
  CHECK(w.w[0] == doctest::Approx(std::exp(1.8) / z).epsilon(1e-15));
  CHECK(w.gamma == 2.0);
  CHECK(w.confidence[0] == 0.9);
  CHECK(w.success_rate[1] == 1.0);
  CHECK(kDefaultGamma == 2.0);
}

TEST_CASE("ensemble weights form a simplex") {
  herald::Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const auto w = ensemble_weights({rng.uniform(), rng.uniform(), rng.uniform()},
                                    {rng.uniform(), rng.uniform(), rng.uniform()}, rng.uniform(0, 10));
    CHECK(std::fabs(w.w[0] + w.w[1] + w.w[2] - 1.0) < 1e-9);
    for (double x : w.w) CHECK(x >= 0.0);
  }
  CHECK_THROWS_AS(ensemble_weights({1.5, 0, 0}, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("combine examples") {
  const std::vector<WeightedAnswer> same{{integer_answer(5), 0.2}, {integer_answer(5), 0.5}, {integer_answer(5), 0.3}};
  const auto all = combine(same);
  CHECK(all.answer == integer_answer(5));
  CHECK(all.support == doctest::Approx(1.0));

  const double third = 1.0 / 3.0;
  const std::vector<WeightedAnswer> aab{{integer_answer(1), third}, {integer_answer(1), third}, {integer_answer(2), third}};
  const auto two = combine(aab);
  CHECK(two.answer == integer_answer(1));
  CHECK(two.support == doctest::Approx(2.0 / 3.0));

  const std::vector<WeightedAnswer> abc{{integer_answer(1), 0.6}, {integer_answer(2), 0.2}, {integer_answer(3), 0.2}};
  const auto one = combine(abc);
  CHECK(one.answer == integer_answer(1));
  CHECK(one.support == doctest::Approx(0.6));
}

TEST_CASE("combine pools equivalent forms and skips unparsed answers") {
  using herald::answer::AnswerValue;
  using herald::answer::Decimal;
  const std::vector<WeightedAnswer> ballot{
      {AnswerValue::exact(herald::answer::Rational(1, 2)), 0.3},
      {AnswerValue::decimal(Decimal::from_string("0.5", 10)), 0.3},
      {AnswerValue::unparsed("??"), 0.4},
  };
  const auto c = combine(ballot);
  CHECK(c.tally.classes().size() == 1);
  CHECK(c.support == doctest::Approx(0.6));
  const std::vector<WeightedAnswer> junk{{AnswerValue::unparsed("a"), 1.0}};
  CHECK_THROWS_AS(combine(junk), AllUnparsed);
}

TEST_CASE("combine over verdicts uses the parallel weights") {
  const std::vector<herald::solvers::SolverVerdict> vs{verdict("a", SolverRole::ToolIntegrated, 1),
                                                       verdict("b", SolverRole::AbstractReasoning, 2),
                                                       verdict("c", SolverRole::Router, 2)};
  const std::vector<double> w{0.5, 0.3, 0.2};
  const auto c = combine(vs, w);
  CHECK(c.answer == integer_answer(1));
  CHECK(c.support == 0.5);
  CHECK_THROWS_AS(combine(vs, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("the winner does not change when scores are scaled") {
  // With one verdict per class the winner is the argmax of the scores
  // gamma * c * s, whatever positive factor scales them.
  herald::Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    const std::array<double, 3> c{rng.uniform(), rng.uniform(), rng.uniform()};
    const std::array<double, 3> s{rng.uniform(), rng.uniform(), rng.uniform()};
    auto winner = [&](double gamma) {
      const auto w = ensemble_weights(c, s, gamma);
      std::vector<WeightedAnswer> ballot;
      for (int k = 0; k < 3; ++k) ballot.push_back({integer_answer(k), w.w[static_cast<std::size_t>(k)]});
      return combine(ballot).answer;
    };
    const auto reference = winner(2.0);
    for (double scale : {0.01, 0.5, 3.0, 40.0}) CHECK(winner(2.0 * scale) == reference);
  }
}

TEST_CASE("vote entropy examples") {
  Tally single;
  single.add(integer_answer(1), 3.0);
  CHECK(vote_entropy(single) == 0.0);

  Tally pair;
  pair.add(integer_answer(1), 1.0);
  pair.add(integer_answer(2), 1.0);
  CHECK(vote_entropy(pair) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  Tally three;
  three.add(integer_answer(1), 0.5);
  three.add(integer_answer(2), 0.25);
  three.add(integer_answer(3), 0.25);
  CHECK(vote_entropy(three) == doctest::Approx(1.0397).epsilon(1e-4));
  CHECK(vote_entropy(three) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-15));

  CHECK_THROWS_AS(vote_entropy(Tally{}), EmptyTally);
}

TEST_CASE("vote entropy is at most ln of the class count, with equality when uniform") {
  herald::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    Tally t;
    const int classes = 1 + static_cast<int>(rng.below(6));
    for (int k = 0; k < classes; ++k) t.add(integer_answer(k), rng.uniform(0.01, 1.0));
    CHECK(vote_entropy(t) <= std::log(static_cast<double>(classes)) + 1e-12);
    Tally u;
    for (int k = 0; k < classes; ++k) u.add(integer_answer(k), 0.7);
    CHECK(vote_entropy(u) == doctest::Approx(std::log(static_cast<double>(classes))).epsilon(1e-12));
  }
}

TEST_CASE("should_stop examples") {
  CHECK(should_stop(std::vector<double>{0.05}, 0.1, 0.01, 1, 48));
  CHECK(should_stop(std::vector<double>{0.9, 0.899}, 0.1, 0.01, 2, 48));
  CHECK_FALSE(should_stop(std::vector<double>{0.9}, 0.1, 0.01, 1, 48));
  CHECK(should_stop(std::vector<double>{0.9, 0.5}, 0.1, 0.01, 48, 48));
  CHECK_FALSE(should_stop(std::vector<double>{0.9, 0.5}, 0.1, 0.01, 2, 48));
  CHECK(kDefaultEpsH == 0.1);
  CHECK(kDefaultKMax == 48);
  CHECK(kDefaultDeltaH == 0.01);
}

TEST_CASE("a constant sampler stops after one round") {
  const auto r = iterative_vote([](int) { return std::vector<WeightedAnswer>{{integer_answer(7), 1.0}}; });
  CHECK(r.iterations == 1);
  CHECK(r.answer == integer_answer(7));
  CHECK(r.state.entropy_history == std::vector<double>{0.0});
}

TEST_CASE("the alternating sampler runs to k_max") {
  const auto r = iterative_vote(herald::testing::alternating_sampler());
  CHECK(r.iterations == 48);
  CHECK(r.state.k == 48);
  CHECK(r.state.entropy_history.size() == 48);
  CHECK(r.answer == integer_answer(1));
  VoteConfig short_run;
  short_run.k_max = 5;
  CHECK(iterative_vote(herald::testing::alternating_sampler(), short_run).iterations == 5);
}

TEST_CASE("the dominant-answer sampler usually stops early") {
  int early = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const auto r = iterative_vote(herald::testing::bernoulli_sampler(0.9, herald::derive_seed(7, trial)));
    CHECK(r.iterations <= 48);
    CHECK(r.state.entropy_history.size() == static_cast<std::size_t>(r.state.k));
    if (r.iterations <= 10) ++early;
  }
  CHECK(early >= 950);
}

TEST_CASE("iterative vote is deterministic for a deterministic sampler") {
  const auto a = iterative_vote(herald::testing::bernoulli_sampler(0.6, 99));
  const auto b = iterative_vote(herald::testing::bernoulli_sampler(0.6, 99));
  CHECK(a.iterations == b.iterations);
  CHECK(a.answer == b.answer);
  CHECK(a.state.entropy_history == b.state.entropy_history);
}

TEST_CASE("unparsed rounds are skipped and all-unparsed votes fail") {
  using herald::answer::AnswerValue;
  const Sampler flaky = [](int round) {
    if (round == 1) return std::vector<WeightedAnswer>{{AnswerValue::unparsed("?"), 1.0}};
    return std::vector<WeightedAnswer>{{integer_answer(3), 1.0}};
  };
  const auto r = iterative_vote(flaky);
  CHECK(r.answer == integer_answer(3));
  CHECK(r.state.failed_rounds == 1);
  CHECK(r.state.entropy_history.size() == 1);

  VoteConfig cfg;
  cfg.k_max = 4;
  const Sampler junk = [](int) { return std::vector<WeightedAnswer>{{AnswerValue::unparsed("?"), 1.0}}; };
  CHECK_THROWS_AS(iterative_vote(junk, cfg), AllUnparsed);
}

TEST_CASE("ties go to the first-seen class") {
  Tally t;
  t.add(integer_answer(9), 0.5);
  t.add(integer_answer(4), 0.5);
  CHECK(t.leader().representative == integer_answer(9));
}

TEST_CASE("success rate examples") {
  SuccessStats s;
  CHECK(s.rate("a", 3) == 0.5);
  for (int i = 0; i < 3; ++i) s = update_success_stats(s, "a", 3, true);
  CHECK(s.rate("a", 3) == doctest::Approx(0.8));
  s = update_success_stats(s, "b", 3, false);
  s = update_success_stats(s, "b", 3, false);
  CHECK(s.rate("b", 3) == doctest::Approx(0.25));
  CHECK(s.counts("a", 3).attempts == 3);
  CHECK(s.counts("a", 4).attempts == 0);
}

TEST_CASE("success rates stay strictly inside (0, 1)") {
  herald::Rng rng(5);
  SuccessStats s;
  for (int i = 0; i < 2000; ++i) {
    const auto bucket = static_cast<std::uint32_t>(rng.below(4));
    s.record("x", bucket, rng.bernoulli(0.97));
    const double r = s.rate("x", bucket);
    CHECK(r > 0.0);
    CHECK(r < 1.0);
    const auto c = s.counts("x", bucket);
    CHECK(c.correct <= c.attempts);
  }
}

TEST_CASE("success stats accept concurrent readers and writers") {
  SuccessStats s;
  std::vector<std::jthread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&s, t] {
      for (int i = 0; i < 1000; ++i) {
        s.record("w", 0, (i + t) % 2 == 0);
        (void)s.rate("w", 0);
      }
    });
  }
  threads.clear();
  CHECK(s.counts("w", 0).attempts == 4000);
  CHECK(s.counts("w", 0).correct == 2000);
}

TEST_CASE("buckets are the top eight signature bits") {
  CHECK(bucket_of(0xAB00000000000000ULL) == 0xABu);
  CHECK(bucket_of(0x00FFFFFFFFFFFFFFULL) == 0u);
}

TEST_CASE("fallback triggers only when every confidence is low") {
  CHECK(needs_fallback(std::vector<double>{0.1, 0.19, 0.05}));
  CHECK_FALSE(needs_fallback(std::vector<double>{0.1, 0.2, 0.05}));
  CHECK(kFallbackConfidence == 0.2);
}

TEST_CASE("fallback answer examples") {
  const std::vector<herald::solvers::SolverVerdict> vs{verdict("tool", SolverRole::ToolIntegrated, 1),
                                                       verdict("abstract", SolverRole::AbstractReasoning, 2),
                                                       verdict("router", SolverRole::Router, 3)};
  SuccessStats s;
  CHECK(fallback_answer(std::span(vs).subspan(1, 1), s, 0).solver_id == "abstract");
  CHECK(fallback_answer(vs, s, 0).solver_id == "tool");

  // Rates 0.9, 0.4, 0.4 in bucket 1; abstract leads in bucket 2.
  for (int i = 0; i < 8; ++i) s.record("tool", 1, true);
  s.record("abstract", 1, false);
  s.record("abstract", 1, false);
  s.record("abstract", 1, false);
  s.record("abstract", 1, true);
  s.record("router", 1, false);
  s.record("router", 1, false);
  s.record("router", 1, false);
  s.record("router", 1, true);
  CHECK(s.rate("tool", 1) == doctest::Approx(0.9));
  CHECK(s.rate("abstract", 1) == doctest::Approx(1.0 / 3.0));
  CHECK(fallback_answer(vs, s, 1).solver_id == "tool");
  s.record("abstract", 2, true);
  CHECK(fallback_answer(vs, s, 2).solver_id == "abstract");

  // Tool-integrated wins ties even when it is not first.
  const std::vector<herald::solvers::SolverVerdict> reordered{vs[2], vs[1], vs[0]};
  CHECK(fallback_answer(reordered, SuccessStats{}, 0).solver_id == "tool");
}
