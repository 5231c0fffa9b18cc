#include "herald/common/envelope.hpp"
#include "herald/common/random.hpp"
#include "herald/routing/distill.hpp"
#include "herald/routing/features.hpp"
#include "herald/routing/quantize.hpp"
#include "herald/routing/router.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace herald::routing;
using herald::SolverRole;

namespace {

RouterModel with_bias(double b0, double b1, double b2) {
  RouterModel m = RouterModel::zeros(kRouteFeatureCount);
  m.bias = {b0, b1, b2};
  return m;
}

DistillSet separable_set(std::size_t rows, std::uint64_t seed) {
  herald::Rng rng(seed);
  DistillSet set;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t label = rng.below(3);
    std::vector<double> x(kRouteFeatureCount);
    for (auto& v : x) v = rng.uniform(0.0, 0.2);
    x[label] += 1.0;
    Simplex3 teacher{};
    teacher[label] = 5.0;
    set.features.push_back(std::move(x));
    set.teacher_logits.push_back(teacher);
    set.hard_labels.push_back(label);
  }
  return set;
}

RouterModel random_model(herald::Rng& rng, std::size_t features) {
  RouterModel m = RouterModel::zeros(features);
  for (auto& w : m.weights) w = rng.normal();
  for (auto& b : m.bias) b = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("regime probabilities examples") {
  const std::vector<double> x(kRouteFeatureCount, 0.3);
  const auto uniform = regime_probabilities(RouterModel::zeros(kRouteFeatureCount), x);
  for (double p : uniform) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto p = regime_probabilities(with_bias(2, 0, 0), x);
  CHECK(p[0] == doctest::Approx(0.7870).epsilon(1e-4));
  CHECK(p[1] == doctest::Approx(0.1065).epsilon(1e-3));
  CHECK(p[2] == doctest::Approx(0.1065).epsilon(1e-3));
  // Closed form: e^2 / (e^2 + 2).
  CHECK(p[0] == doctest::Approx(std::exp(2.0) / (std::exp(2.0) + 2.0)).epsilon(1e-15));

  const auto shifted = regime_probabilities(with_bias(2 + 700, 700, 700), x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(shifted[i] == doctest::Approx(p[i]).epsilon(1e-12));
}

TEST_CASE("probabilities form a simplex") {
  herald::Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const RouterModel m = random_model(rng, kRouteFeatureCount);
    std::vector<double> x(kRouteFeatureCount);
    for (auto& v : x) v = rng.uniform();
    const auto p = regime_probabilities(m, x);
    CHECK(std::fabs(p[0] + p[1] + p[2] - 1.0) < 1e-9);
  }
}

TEST_CASE("feature length must match the model") {
  CHECK_THROWS_AS(regime_probabilities(RouterModel::zeros(4), std::vector<double>(5, 0.0)), DimensionMismatch);
}

TEST_CASE("decide_route examples") {
  const auto single = decide_route({0.9, 0.05, 0.05}, 0.4);
  REQUIRE(single.single.has_value());
  CHECK(*single.single == SolverRole::ToolIntegrated);
  CHECK(decide_route({1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.9).full_ensemble());
  CHECK(decide_route({0.9, 0.05, 0.05}, 0.1).full_ensemble());
  CHECK(decide_route({0.05, 0.9, 0.05}, 0.0).single == SolverRole::AbstractReasoning);
  CHECK(decide_route({0.05, 0.05, 0.9}, 0.0).single == SolverRole::Router);
  CHECK(decide_route({0.8, 0.1, 0.1}, 0.3).single == SolverRole::ToolIntegrated);
  CHECK(decide_route({0.9, 0.05, 0.05}, 0.25).full_ensemble());
}

TEST_CASE("a threshold above 1 always yields the ensemble") {
  herald::Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const Simplex3 p = softmax3({rng.normal(0, 10), rng.normal(0, 10), rng.normal(0, 10)});
    CHECK(decide_route(p, rng.uniform(), 1.0 + 1e-9).full_ensemble());
  }
  CHECK(decide_route({1.0, 0.0, 0.0}, 1.0, 1.0 + 1e-12).full_ensemble());
}

TEST_CASE("routing is invariant under a uniform logit shift") {
  herald::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Simplex3 z{rng.normal(0, 3), rng.normal(0, 3), rng.normal(0, 3)};
    const double c = rng.normal(0, 50);
    const double density = rng.uniform();
    const auto a = decide_route(softmax3(z), density);
    const auto b = decide_route(softmax3({z[0] + c, z[1] + c, z[2] + c}), density);
    CHECK(a.single == b.single);
  }
}

TEST_CASE("features of a short Russian algebra problem") {
  herald::preprocess::Problem p;
  p.id = "f";
  p.statement_en = "Solve 2x + 3 = 11. Give x.";
  p.statement_ru = "Решите 2x + 3 = 11.";
  p.category = "algebra";
  const RouteFeatures f = extract_features(p);
  CHECK(f.has_russian);
  CHECK(f.sentence_count == 2);
  CHECK(f.max_magnitude == 11.0);
  CHECK(f.category[0] == 1.0);
  const auto v = to_vector(f);
  REQUIRE(v.size() == kRouteFeatureCount);
  CHECK(v[0] == doctest::Approx(f.token_length / 512.0));
  CHECK(v[2] == doctest::Approx(std::log10(12.0) / 9.0));
  CHECK(v[3] == 1.0);
  CHECK(v[4] == doctest::Approx(2.0 / 16.0));
  CHECK(category_index("word_problems") == 11u);
  CHECK_FALSE(category_index("poetry").has_value());
}

TEST_CASE("distillation objective gradient matches central differences") {
  herald::Rng rng(4);
  const DistillSet data = synthetic_routing_set(30, 11, 12);
  const double h = 1e-5;
  for (int point = 0; point < 50; ++point) {
    const RouterModel m = random_model(rng, kRouteFeatureCount);
    const Objective obj = distill_objective(m, data, 0.3, 4.0);
    // Check a random weight and a random bias per point.
    const std::size_t wi = rng.below(m.weights.size());
    RouterModel up = m, down = m;
    up.weights[wi] += h;
    down.weights[wi] -= h;
    const double fd_w = (distill_objective(up, data, 0.3, 4.0).value - distill_objective(down, data, 0.3, 4.0).value) / (2 * h);
    CHECK(std::fabs(fd_w - obj.weight_gradient[wi]) <= 1e-4 * std::max(std::fabs(fd_w), 1e-3));

    const std::size_t bi = rng.below(3);
    up = m;
    down = m;
    up.bias[bi] += h;
    down.bias[bi] -= h;
    const double fd_b = (distill_objective(up, data, 0.3, 4.0).value - distill_objective(down, data, 0.3, 4.0).value) / (2 * h);
    CHECK(std::fabs(fd_b - obj.bias_gradient[bi]) <= 1e-4 * std::max(std::fabs(fd_b), 1e-3));
  }
}

TEST_CASE("alpha = 1 reduces the objective to cross-entropy") {
  herald::Rng rng(5);
  const DistillSet data = synthetic_routing_set(40, 1, 2);
  const RouterModel m = random_model(rng, kRouteFeatureCount);
  long double ce = 0;
  for (std::size_t i = 0; i < data.features.size(); ++i) {
    long double z[3];
    for (std::size_t r = 0; r < 3; ++r) {
      z[r] = m.bias[r];
      for (std::size_t f = 0; f < kRouteFeatureCount; ++f) z[r] += static_cast<long double>(m.weight(r, f)) * data.features[i][f];
    }
    const long double lse = std::log(std::exp(z[0]) + std::exp(z[1]) + std::exp(z[2]));
    ce += lse - z[data.hard_labels[i]];
  }
  ce /= static_cast<long double>(data.features.size());
  CHECK(std::fabs(distill_objective(m, data, 1.0, 4.0).value - static_cast<double>(ce)) < 1e-10);
}

TEST_CASE("distilling one-hot teachers on separable data reproduces the labels") {
  const DistillSet data = separable_set(300, 6);
  const RouterModel m = distill_router(data);
  CHECK(teacher_agreement(m, data) >= 0.95);
}

TEST_CASE("distillation errors") {
  CHECK_THROWS_AS(distill_router(DistillSet{}), EmptyTrainingSet);
  DistillSet bad = separable_set(5, 1);
  bad.features[0][0] = std::numeric_limits<double>::infinity();
  try {
    distill_router(bad);
    FAIL("expected NonFiniteLoss");
  } catch (const NonFiniteLoss& e) {
    CHECK(e.step() == 0);
  }
}

TEST_CASE("quantization codes at the endpoints and midpoint") {
  const std::vector<double> w{-1.0, 3.0, 1.0};
  const auto q = quantize(w);
  CHECK(q.w_min == -1.0);
  CHECK(q.w_max == 3.0);
  CHECK(q.codes == std::vector<std::uint8_t>{0, 255, 128});
  const auto back = dequantize(q, 3);
  CHECK(back[0] == -1.0);
  CHECK(back[1] == 3.0);
}

TEST_CASE("quantization error stays within half a step") {
  herald::Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> w(1 + rng.below(60));
    const double scale = std::exp(rng.uniform(-10, 10));
    for (auto& v : w) v = rng.normal(0, scale);
    if (w.size() == 1) w.push_back(w[0] + scale);
    const auto q = quantize(w);
    const auto back = dequantize(q, w.size());
    const double bound = (q.w_max - q.w_min) / 255.0 / 2.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double err = std::fabs(back[i] - w[i]);
      CHECK(err <= bound + std::nextafter(std::fabs(w[i]), INFINITY) - std::fabs(w[i]));
    }
    CHECK(quantize(back).codes == q.codes);
  }
}

TEST_CASE("constant tensors") {
  const std::vector<double> w(4, 0.5);
  CHECK_THROWS_AS(quantize(w), ConstantWeights);
  CHECK_THROWS_AS(quantize(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(quantize(std::vector<double>{1.0, NAN}), std::invalid_argument);
  RouterModel m = RouterModel::zeros(2);
  const RouterModel q = quantize_weights(m);
  REQUIRE(q.quantization.has_value());
  CHECK(q.quantization->is_constant());
  CHECK(dequantize_weights(q) == m);
  CHECK(deserialize_router(serialize(q)) == q);
}

TEST_CASE("quantized router serializes to fixed bytes") {
  RouterModel m = RouterModel::zeros(1);
  m.weights = {0.0, 1.0, -1.0};
  m.bias = {0.5, 0.25, 2.0};
  const RouterModel q = quantize_weights(m);
  // Codes: round((w + 1) / 3 * 255) = 85, 170, 0, 127.5 -> 128, 106.25 -> 106, 255.
  const std::vector<std::uint8_t> want{
      'H', 'R', 'L', 'D', 1, 0, 1, 1, 1, 0, 0, 0,       // header, F = 1
      0, 0, 0, 0, 0, 0, 0xF0, 0xBF,                    // w_min = -1
      0, 0, 0, 0, 0, 0, 0x00, 0x40,                    // w_max = 2
      85, 170, 0, 128, 106, 255,
  };
  CHECK(serialize(q) == want);
  const RouterModel back = deserialize_router(want);
  CHECK(back == q);
  CHECK(back.weights[1] == doctest::Approx(1.0).epsilon(3.0 / 510));
}

TEST_CASE("raw router serializes to fixed bytes") {
  RouterModel m = RouterModel::zeros(1);
  m.weights = {1.0, 0.0, 0.0};
  m.bias = {0.0, 0.0, -2.0};
  const auto bytes = serialize(m);
  REQUIRE(bytes.size() == 12 + 6 * 8);
  CHECK(bytes[7] == 0);
  CHECK(bytes[12 + 6] == 0xF0);
  CHECK(bytes[12 + 7] == 0x3F);
  CHECK(bytes[12 + 5 * 8 + 7] == 0xC0);
  CHECK(deserialize_router(bytes) == m);
}

TEST_CASE("deserialization rejects other envelopes and trailing bytes") {
  herald::ByteWriter w;
  w.header({herald::ModelKind::QModel, herald::PayloadKind::Raw, 1});
  CHECK_THROWS_AS(deserialize_router(w.bytes()), herald::FormatError);
  auto bytes = serialize(RouterModel::zeros(1));
  bytes.push_back(0);
  CHECK_THROWS_AS(deserialize_router(bytes), herald::FormatError);
}

TEST_CASE("the built-in router separates symbolic from verbal statements") {
  herald::preprocess::Problem sym;
  sym.statement_en = "Compute (7.2 - 3.6)*15";
  herald::preprocess::Problem words;
  words.statement_en =
      "Anna has some apples. She gives half of them to her brother. Then she buys three more. "
      "Her friend gives her two. She counts them at home. Now she has ten apples. How many did she start with?";
  const auto ps = regime_probabilities(default_router(), extract_features(sym));
  const auto pw = regime_probabilities(default_router(), extract_features(words));
  CHECK(ps[0] > pw[0]);
  CHECK(pw[1] > ps[1]);
}
