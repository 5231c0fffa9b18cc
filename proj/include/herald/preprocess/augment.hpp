#pragma once

#include "herald/preprocess/problem.hpp"

#include <cstdint>
#include <vector>

namespace herald::preprocess {

inline constexpr double kDefaultAugmentSigma = 0.1;
inline constexpr int kAugmentDigits = 6;

// Ordinals of the numeric literals in statement_en treated as critical:
// the caller's mask if present, else denominators and exponents.
std::vector<std::size_t> critical_literals(const Problem& p);

// Replaces every non-critical numeric literal n in statement_en by
// n*(1+eps), eps ~ Normal(0, sigma), rendered with 6 significant digits.
// One Gaussian draw is taken per non-critical literal, in text order, from
// Rng(rng_seed). Equal literals in statement_ru receive the same new value.
// When any value changes the reference answer and steps are dropped, since
// they no longer apply. sigma = 0 returns the problem unchanged.
Problem augment_numeric(const Problem& p, double sigma, std::uint64_t rng_seed);

}  // namespace herald::preprocess
