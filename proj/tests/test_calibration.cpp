#include "calibration_data.hpp"

#include "herald/calibration/calibration.hpp"
#include "herald/common/random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace herald::calibration;
using herald::testing::reference_ece;
using herald::testing::scaled;
using herald::testing::synthetic_scores;

TEST_CASE("calibrate_confidence examples") {
  CHECK(calibrate_confidence(0.0, 0.3) == 0.5);
  CHECK(calibrate_confidence(0.0, 7.0) == 0.5);
  CHECK(calibrate_confidence(std::log(3.0), 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(calibrate_confidence(2.0, 2.0) == calibrate_confidence(1.0, 1.0));
  CHECK(calibrate_confidence(5.0, 1e12) == doctest::Approx(0.5));
  CHECK_THROWS_AS(calibrate_confidence(1.0, 0.0), NonPositiveTemperature);
  CHECK_THROWS_AS(calibrate_confidence(1.0, -1.0), NonPositiveTemperature);
}

TEST_CASE("calibrate_confidence is monotone in the score") {
  herald::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-20, 20), b = rng.uniform(-20, 20), t = rng.uniform(0.05, 20);
    if (a < b) CHECK(calibrate_confidence(a, t) <= calibrate_confidence(b, t));
    if (a > b) CHECK(calibrate_confidence(a, t) >= calibrate_confidence(b, t));
  }
}

TEST_CASE("ece examples") {
  CHECK(ece({{1.0, true}, {1.0, true}, {1.0, true}}) == 0.0);
  CHECK(ece({{0.9, true}, {0.6, false}}, 15) == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(kDefaultBins == 15);
  CHECK_THROWS_AS(ece({}), EmptySampleSet);
}

TEST_CASE("bins are right-open except the last") {
  CHECK(bin_index(0.0, 15) == 0);
  CHECK(bin_index(1.0 / 15.0 - 1e-12, 15) == 0);
  CHECK(bin_index(1.0 / 15.0, 15) == 1);
  CHECK(bin_index(0.5, 2) == 1);
  CHECK(bin_index(1.0, 15) == 14);
}

TEST_CASE("reliability bins partition the samples") {
  herald::Rng rng(2);
  std::vector<Sample> samples;
  for (int i = 0; i < 1000; ++i) samples.push_back({rng.uniform(), rng.bernoulli(0.5)});
  samples.push_back({1.0, true});
  const auto r = reliability(samples, 15);
  REQUIRE(r.per_bin.size() == 15);
  int total = 0;
  for (const auto& b : r.per_bin) total += b.count;
  CHECK(total == static_cast<int>(samples.size()));
}

TEST_CASE("ece matches an independent implementation, stays in [0, 1] and ignores order") {
  herald::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Sample> samples;
    const int n = 1 + static_cast<int>(rng.below(300));
    for (int i = 0; i < n; ++i) samples.push_back({rng.uniform(), rng.bernoulli(rng.uniform())});
    const int bins = 1 + static_cast<int>(rng.below(30));
    const double e = ece(samples, bins);
    CHECK(e == doctest::Approx(reference_ece(samples, bins)).epsilon(1e-12));
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
    std::reverse(samples.begin(), samples.end());
    CHECK(ece(samples, bins) == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("fitted temperature recovers T = 1 and T = 3") {
  for (double t_star : {1.0, 3.0}) {
    CAPTURE(t_star);
    const auto data = synthetic_scores(2000, t_star, 2024);
    const auto fit = fit_temperature(data, 15, "s");
    CHECK(fit.solver_id == "s");
    CHECK(fit.fitted_on == 2000);
    CHECK(fit.temperature >= t_star * 0.8);
    CHECK(fit.temperature <= t_star * 1.25);
    CHECK(ece_at(data, fit.temperature) <= ece_at(data, 1.0));

    // Grid oracle over ln T: the fit is at least as good as any grid point
    // up to the search width.
    double best = 1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = std::exp(kMinLogTemperatureBound + (kMaxLogTemperatureBound - kMinLogTemperatureBound) * i / 2000.0);
      best = std::min(best, reference_ece(scaled(data, t), 15));
    }
    CHECK(reference_ece(scaled(data, fit.temperature), 15) <= best + 2e-3);
  }
}

TEST_CASE("fitting never makes its own data worse than T = 1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    herald::Rng rng(seed);
    const double t_star = std::exp(rng.uniform(-2, 2.5));
    const auto data = synthetic_scores(200 + static_cast<int>(rng.below(500)), t_star, seed);
    const auto fit = fit_temperature(data);
    CHECK(fit.temperature > 0);
    CHECK(ece_at(data, fit.temperature) <= ece_at(data, 1.0));
  }
}

TEST_CASE("a single repeated score ends at the search boundary") {
  std::vector<ScoredSample> data;
  for (int i = 0; i < 40; ++i) data.push_back({1.5, i % 2 == 0});
  const auto fit = fit_temperature(data);
  CHECK(fit.temperature == doctest::Approx(20.0).epsilon(2e-3));
}

TEST_CASE("fit_temperature rejects degenerate input") {
  std::vector<ScoredSample> same;
  for (int i = 0; i < 40; ++i) same.push_back({static_cast<double>(i), true});
  CHECK_THROWS_AS(fit_temperature(same), DegenerateLabels);
  std::vector<ScoredSample> few{{1.0, true}, {-1.0, false}};
  CHECK_THROWS_AS(fit_temperature(few), std::invalid_argument);
}
