#include "herald/routing/quantize.hpp"

#include <algorithm>
#include <cmath>

namespace herald::routing {

namespace {

constexpr int kLevels = 255;

std::vector<double> flatten(const RouterModel& m) {
  std::vector<double> all = m.weights;
  all.insert(all.end(), m.bias.begin(), m.bias.end());
  return all;
}

void unflatten(const std::vector<double>& all, RouterModel& m) {
  std::copy(all.begin(), all.begin() + static_cast<long>(m.weights.size()), m.weights.begin());
  std::copy(all.end() - kRegimeCount, all.end(), m.bias.begin());
}

}  // namespace

QuantizationRecord quantize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("nothing to quantize");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite weight");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  QuantizationRecord q;
  q.w_min = *lo;
  q.w_max = *hi;
  if (q.w_max == q.w_min) throw ConstantWeights("w_max equals w_min");
  const long double range = static_cast<long double>(q.w_max) - q.w_min;
  q.codes.reserve(values.size());
  for (double v : values) {
    const long double x = (static_cast<long double>(v) - q.w_min) / range * kLevels;
    const long double code = std::floor(x + 0.5L);  // x >= 0, so this is half away from zero
    q.codes.push_back(static_cast<std::uint8_t>(std::clamp(code, 0.0L, static_cast<long double>(kLevels))));
  }
  return q;
}

std::vector<double> dequantize(const QuantizationRecord& q, std::size_t count) {
  if (q.is_constant()) return std::vector<double>(count, q.w_min);
  if (q.codes.size() != count) throw std::invalid_argument("code count mismatch");
  std::vector<double> out;
  out.reserve(count);
  for (std::uint8_t c : q.codes) {
    const long double v = (static_cast<long double>(q.w_min) * (kLevels - c) + static_cast<long double>(q.w_max) * c) / kLevels;
    out.push_back(static_cast<double>(v));
  }
  return out;
}

RouterModel quantize_weights(const RouterModel& m) {
  const std::vector<double> all = flatten(m);
  RouterModel out = m;
  try {
    out.quantization = quantize(all);
  } catch (const ConstantWeights&) {
    QuantizationRecord q;
    q.w_min = q.w_max = all.front();
    out.quantization = q;
  }
  unflatten(dequantize(*out.quantization, all.size()), out);
  return out;
}

RouterModel dequantize_weights(const RouterModel& m) {
  RouterModel out = m;
  if (m.quantization) {
    unflatten(dequantize(*m.quantization, m.weights.size() + kRegimeCount), out);
    out.quantization.reset();
  }
  return out;
}

}  // namespace herald::routing
