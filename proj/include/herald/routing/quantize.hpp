#pragma once

#include "herald/routing/router.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace herald::routing {

class ConstantWeights : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// code = round_half_away((w - w_min) / (w_max - w_min) * 255). Throws
// ConstantWeights when all values are equal and std::invalid_argument on
// empty or non-finite input.
QuantizationRecord quantize(std::span<const double> values);

// (w_min * (255 - c) + w_max * c) / 255, so codes 0 and 255 reproduce the
// endpoints exactly. A constant record expands to `count` copies.
std::vector<double> dequantize(const QuantizationRecord& q, std::size_t count);

// Quantizes W and b jointly. The result carries the record and the
// dequantized weights. Constant parameters get a constant record instead of
// an error.
RouterModel quantize_weights(const RouterModel& m);

// Expands the record back into plain weights and drops it.
RouterModel dequantize_weights(const RouterModel& m);

}  // namespace herald::routing
