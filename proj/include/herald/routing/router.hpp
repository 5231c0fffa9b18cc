#pragma once

#include "herald/common/roles.hpp"
#include "herald/routing/features.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace herald::routing {

inline constexpr double kDefaultConfThreshold = 0.8;

enum class Regime { SymbolicHeavy = 0, LanguageHeavy = 1, Mixed = 2 };
inline constexpr std::size_t kRegimeCount = 3;

std::string_view regime_name(Regime r);

using Simplex3 = std::array<double, kRegimeCount>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Min/max affine 8-bit codes. An empty code list with w_min == w_max marks
// a constant tensor stored as that single value.
struct QuantizationRecord {
  double w_min = 0;
  double w_max = 0;
  std::vector<std::uint8_t> codes;

  bool is_constant() const { return codes.empty(); }
  friend bool operator==(const QuantizationRecord&, const QuantizationRecord&) = default;
};

// Linear softmax head. weights is 3 x features, row-major. When
// `quantization` is set, weights and bias hold the dequantized values.
struct RouterModel {
  std::size_t features = kRouteFeatureCount;
  std::vector<double> weights;
  Simplex3 bias{};
  std::optional<QuantizationRecord> quantization;

  static RouterModel zeros(std::size_t features);
  double weight(std::size_t regime, std::size_t feature) const { return weights[regime * features + feature]; }
  double& weight(std::size_t regime, std::size_t feature) { return weights[regime * features + feature]; }

  friend bool operator==(const RouterModel&, const RouterModel&) = default;
};

Simplex3 logits(const RouterModel& m, const std::vector<double>& x);

// softmax(Wx + b), max-subtracted.
Simplex3 regime_probabilities(const RouterModel& m, const std::vector<double>& x);
Simplex3 regime_probabilities(const RouterModel& m, const RouteFeatures& f);

Simplex3 softmax3(const Simplex3& z);

struct RoutingDecision {
  Simplex3 p{};
  // Set for a single-solver route, empty for the full ensemble.
  std::optional<SolverRole> single;

  bool full_ensemble() const { return !single.has_value(); }
};

SolverRole solver_for(Regime r);

// max p >= conf_threshold routes to that regime's solver; a symbolic-heavy
// route additionally needs density > tau_sym. Everything else goes to the
// full ensemble. A threshold above 1 therefore always yields the ensemble.
RoutingDecision decide_route(const Simplex3& p, double density, double conf_threshold = kDefaultConfThreshold,
                             double tau_sym = 0.25);

// Hand-set weights used when no distilled router is supplied: operator
// density favours symbolic-heavy, length and sentence count favour
// language-heavy, short statements favour mixed.
RouterModel default_router();

// HRLD envelope, model kind 1.
std::vector<std::uint8_t> serialize(const RouterModel& m);
RouterModel deserialize_router(const std::vector<std::uint8_t>& bytes);

}  // namespace herald::routing
