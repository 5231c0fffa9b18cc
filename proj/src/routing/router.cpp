#include "herald/routing/router.hpp"

#include "herald/common/envelope.hpp"
#include "herald/routing/quantize.hpp"

#include <algorithm>
#include <cmath>

namespace herald::routing {

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::SymbolicHeavy: return "symbolic-heavy";
    case Regime::LanguageHeavy: return "language-heavy";
    case Regime::Mixed: return "mixed";
  }
  return "unknown";
}

RouterModel RouterModel::zeros(std::size_t features) {
  RouterModel m;
  m.features = features;
  m.weights.assign(kRegimeCount * features, 0.0);
  return m;
}

Simplex3 logits(const RouterModel& m, const std::vector<double>& x) {
  if (x.size() != m.features || m.weights.size() != kRegimeCount * m.features) {
    throw DimensionMismatch("feature vector length does not match the router");
  }
  Simplex3 z = m.bias;
  for (std::size_t r = 0; r < kRegimeCount; ++r) {
    for (std::size_t j = 0; j < m.features; ++j) z[r] += m.weight(r, j) * x[j];
  }
  return z;
}

Simplex3 softmax3(const Simplex3& z) {
  const double top = *std::max_element(z.begin(), z.end());
  Simplex3 p{};
  double sum = 0;
  for (std::size_t i = 0; i < kRegimeCount; ++i) {
    p[i] = std::exp(z[i] - top);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

Simplex3 regime_probabilities(const RouterModel& m, const std::vector<double>& x) { return softmax3(logits(m, x)); }

Simplex3 regime_probabilities(const RouterModel& m, const RouteFeatures& f) {
  return regime_probabilities(m, to_vector(f));
}

SolverRole solver_for(Regime r) {
  switch (r) {
    case Regime::SymbolicHeavy: return SolverRole::ToolIntegrated;
    case Regime::LanguageHeavy: return SolverRole::AbstractReasoning;
    case Regime::Mixed: return SolverRole::Router;
  }
  return SolverRole::Router;
}

RoutingDecision decide_route(const Simplex3& p, double density, double conf_threshold, double tau_sym) {
  if (!(conf_threshold > 0) || !(tau_sym > 0)) throw std::invalid_argument("thresholds must be positive");
  RoutingDecision d;
  d.p = p;
  const auto best = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  if (p[best] < conf_threshold) return d;
  const auto regime = static_cast<Regime>(best);
  if (regime == Regime::SymbolicHeavy && !(density > tau_sym)) return d;
  d.single = solver_for(regime);
  return d;
}

RouterModel default_router() {
  RouterModel m = RouterModel::zeros(kRouteFeatureCount);
  const auto sym = static_cast<std::size_t>(Regime::SymbolicHeavy);
  const auto lang = static_cast<std::size_t>(Regime::LanguageHeavy);
  m.weight(sym, 1) = 12.0;  // operator density
  m.bias[sym] = -2.0;
  m.weight(lang, 0) = 8.0;  // token length
  m.weight(lang, 4) = 16.0;  // sentence count
  m.bias[lang] = -1.0;
  return m;
}

std::vector<std::uint8_t> serialize(const RouterModel& m) {
  ByteWriter w;
  EnvelopeHeader h;
  h.model = ModelKind::Router;
  h.features = static_cast<std::uint32_t>(m.features);
  if (!m.quantization) {
    h.payload = PayloadKind::Raw;
    w.header(h);
    for (double v : m.weights) w.f64(v);
    for (double v : m.bias) w.f64(v);
  } else if (m.quantization->is_constant()) {
    h.payload = PayloadKind::Constant;
    w.header(h);
    w.f64(m.quantization->w_min);
  } else {
    h.payload = PayloadKind::Quantized;
    w.header(h);
    w.f64(m.quantization->w_min);
    w.f64(m.quantization->w_max);
    for (std::uint8_t c : m.quantization->codes) w.u8(c);
  }
  return w.take();
}

RouterModel deserialize_router(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  const EnvelopeHeader h = r.header();
  if (h.model != ModelKind::Router) throw FormatError("envelope does not hold a router model");
  RouterModel m = RouterModel::zeros(h.features);
  const std::size_t count = m.weights.size() + kRegimeCount;
  std::vector<double> params;
  switch (h.payload) {
    case PayloadKind::Raw:
      for (std::size_t i = 0; i < count; ++i) params.push_back(r.f64());
      break;
    case PayloadKind::Constant: {
      QuantizationRecord q;
      q.w_min = q.w_max = r.f64();
      params = dequantize(q, count);
      m.quantization = q;
      break;
    }
    case PayloadKind::Quantized: {
      QuantizationRecord q;
      q.w_min = r.f64();
      q.w_max = r.f64();
      for (std::size_t i = 0; i < count; ++i) q.codes.push_back(r.u8());
      params = dequantize(q, count);
      m.quantization = std::move(q);
      break;
    }
  }
  r.expect_end();
  std::copy(params.begin(), params.begin() + static_cast<long>(m.weights.size()), m.weights.begin());
  std::copy(params.end() - kRegimeCount, params.end(), m.bias.begin());
  return m;
}

}  // namespace herald::routing
