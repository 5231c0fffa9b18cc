#pragma once

#include "herald/answer/value.hpp"
#include "herald/common/random.hpp"
#include "herald/ensemble/vote.hpp"

#include <memory>
#include <vector>

namespace herald::testing {

inline answer::AnswerValue integer_answer(long v) { return answer::AnswerValue::exact(answer::Rational(v)); }

// Three equally weighted verdicts per round; each is the dominant answer 42
// with probability p, otherwise 42 plus a non-zero offset in [-9, 9].
inline ensemble::Sampler bernoulli_sampler(double p, std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng, p](int) {
    std::vector<ensemble::WeightedAnswer> round;
    for (int i = 0; i < 3; ++i) {
      long v = 42;
      if (!rng->bernoulli(p)) {
        const long offset = 1 + static_cast<long>(rng->below(9));
        v += rng->bernoulli(0.5) ? offset : -offset;
      }
      round.push_back({integer_answer(v), 1.0 / 3.0});
    }
    return round;
  };
}

// Odd rounds split evenly over three answers (entropy ln 3), even rounds
// weigh them 4:1:1 (entropy 0.868). Both stay above eps_H = 0.1 and every
// step changes the entropy by 0.23, so no stopping rule fires before k_max.
inline ensemble::Sampler alternating_sampler() {
  return [](int round) {
    const bool even = round % 2 == 0;
    return std::vector<ensemble::WeightedAnswer>{
        {integer_answer(1), even ? 4.0 / 6.0 : 1.0 / 3.0},
        {integer_answer(2), even ? 1.0 / 6.0 : 1.0 / 3.0},
        {integer_answer(3), even ? 1.0 / 6.0 : 1.0 / 3.0},
    };
  };
}

}  // namespace herald::testing
