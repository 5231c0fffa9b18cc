#pragma once

#include "herald/answer/value.hpp"

#include <cstdint>

namespace herald::answer {

inline constexpr double kDefaultEpsEquiv = 1e-6;
inline constexpr int kSymbolicSamplePoints = 16;
inline constexpr std::uint64_t kSymbolicSampleSeed = 0xA11CE;

// |y1 - y2| / max(|y1|, |y2|, 1) < eps. Computed exactly when both values
// are rational (Exact or Decimal); otherwise at working precision.
// Expressions with free variables are compared at 16 seeded sample points
// drawn uniformly from [-2, 2], skipping points where either side is
// undefined. Unparsed values match only byte-identical Unparsed values.
// A DomainError on either side yields false.
bool within_tolerance(const AnswerValue& a, const AnswerValue& b, double eps);

// Exact pairs compare exactly; all other pairs use within_tolerance.
// eps must be > 0.
bool equivalent(const AnswerValue& a, const AnswerValue& b, double eps = kDefaultEpsEquiv);

}  // namespace herald::answer
