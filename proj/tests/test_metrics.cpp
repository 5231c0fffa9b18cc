#include "herald/common/random.hpp"
#include "herald/metrics/metrics.hpp"
#include "metrics_fixture.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace herald::metrics;
using herald::testing::make_record;

namespace {

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12; }

RunRecord with_steps(std::vector<herald::preprocess::ReferenceStep> steps,
                     std::vector<herald::preprocess::ReferenceStep> reference, const std::string& answer) {
  RunRecord r = make_record("s", {answer}, answer, {}, {}, false, 1, 1);
  r.steps = std::move(steps);
  r.reference_steps = std::move(reference);
  return r;
}

}  // namespace

TEST_CASE("the ten-record fixture reproduces the hand-computed values") {
  const auto records = herald::testing::metrics_fixture();
  const herald::testing::MetricsExpectation want;
  CHECK(close(accuracy(records), want.accuracy));
  CHECK(close(comp_acc(records), want.comp_acc));
  CHECK(close(pcs(records), want.pcs));
  CHECK(close(consistency(records, herald::testing::kFixtureRuns), want.consistency));
  REQUIRE(tue(records).has_value());
  CHECK(close(*tue(records), want.tue));

  const Summary s = summarize(records, herald::testing::kFixtureRuns);
  CHECK(close(s.accuracy, want.accuracy));
  REQUIRE(s.comp_acc.has_value());
  CHECK(close(*s.comp_acc, want.comp_acc));
  CHECK(close(s.mean_time_s, want.mean_time_s));
  CHECK(close(s.mean_memory_mb, want.mean_memory_mb));
  CHECK(close(s.efficiency, want.efficiency));
}

TEST_CASE("metrics are permutation invariant") {
  auto records = herald::testing::metrics_fixture();
  const Summary base = summarize(records, herald::testing::kFixtureRuns);
  herald::Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    for (std::size_t k = records.size() - 1; k > 0; --k) std::swap(records[k], records[rng.below(k + 1)]);
    const Summary s = summarize(records, herald::testing::kFixtureRuns);
    CHECK(close(s.accuracy, base.accuracy));
    CHECK(close(*s.comp_acc, *base.comp_acc));
    CHECK(close(s.pcs, base.pcs));
    CHECK(close(s.consistency, base.consistency));
    CHECK(close(s.efficiency, base.efficiency));
    CHECK(close(*s.tue, *base.tue));
  }
}

TEST_CASE("accuracy examples") {
  std::vector<RunRecord> records;
  for (int i = 0; i < 8; ++i) {
    records.push_back(make_record("a", {i < 5 ? "3" : "4"}, "3", {}, {}, false, 1, 1));
  }
  CHECK(accuracy(records) == 0.625);
  CHECK(accuracy({make_record("a", {"1"}, "1", {}, {}, false, 1, 1)}) == 1.0);
  CHECK(accuracy({make_record("a", {"2"}, "1", {}, {}, false, 1, 1)}) == 0.0);
  // Only the first run counts.
  CHECK(accuracy({make_record("a", {"2", "1", "1"}, "1", {}, {}, false, 1, 1)}) == 0.0);
  CHECK_THROWS_AS(accuracy({}), EmptyRecords);
}

TEST_CASE("comp_acc examples") {
  using Steps = std::vector<herald::preprocess::ReferenceStep>;
  const Steps reference{{"6*7", "42"}, {"42/2", "21"}};
  CHECK(comp_acc({with_steps(reference, reference, "21")}) == 1.0);
  CHECK(comp_acc({with_steps({{"42.001", "42"}, {"42/2", "21"}}, reference, "21")}) == 0.0);
  CHECK(comp_acc({with_steps({{"6*7+0.001", "42"}, {"42/2", "21"}}, reference, "21")}) == 0.0);
  CHECK(comp_acc({with_steps({{"6*7"}}, reference, "21")}) == 0.0);
  CHECK(kStepTolerance == 1e-6);
  CHECK_THROWS_AS(comp_acc({make_record("x", {"1"}, "1", {}, {}, false, 1, 1)}), NoEligibleRecords);
}

TEST_CASE("comp_acc tolerance boundary") {
  using Steps = std::vector<herald::preprocess::ReferenceStep>;
  const Steps reference{{"1000", "1000"}};
  CHECK(step_matches({"1000.0009", "1000"}, {"1000", "1000"}));
  CHECK_FALSE(step_matches({"1000.0011", "1000"}, {"1000", "1000"}));
  CHECK(comp_acc({with_steps({{"1000.0009", "1000"}}, reference, "1000")}) == 1.0);
  CHECK(comp_acc({with_steps({{"1000.0011", "1000"}}, reference, "1000")}) == 0.0);
  CHECK(step_matches({"sqrt(2)", ""}, {"", "1.414213562"}));
}

TEST_CASE("pcs examples") {
  CHECK(pcs({make_record("p", {"1"}, "1", {true, true, true}, {}, false, 1, 1)}) == 1.0);
  CHECK(pcs({make_record("p", {"1"}, "1", {true, false}, {}, false, 1, 1)}) == 0.5);
  CHECK(pcs({make_record("p", {"1"}, "1", {true, false}, {3, 1}, false, 1, 1)}) == 0.75);
  CHECK(pcs({make_record("p", {"1"}, "1", {}, {}, false, 1, 1)}) == 1.0);
  CHECK(pcs({make_record("p", {"2"}, "1", {}, {}, false, 1, 1)}) == 0.0);
  CHECK_THROWS_AS(pcs({make_record("p", {"1"}, "1", {true}, {0}, false, 1, 1)}), std::invalid_argument);
}

TEST_CASE("consistency examples") {
  CHECK(consistency({make_record("c", std::vector<std::string>(10, "5"), "5", {}, {}, false, 1, 1)}) == 1.0);
  std::vector<std::string> six_of_ten{"5", "5", "5", "5", "5", "5", "1", "2", "1", "3"};
  CHECK(consistency({make_record("c", six_of_ten, "5", {}, {}, false, 1, 1)}) == 0.6);
  CHECK(consistency({make_record("c", {"9"}, "5", {}, {}, false, 1, 1)}, 1) == 1.0);
  CHECK(kDefaultRuns == 10);
  CHECK_THROWS_AS(consistency({make_record("c", {"9", "9"}, "5", {}, {}, false, 1, 1)}, 3), std::invalid_argument);
}

TEST_CASE("efficiency examples") {
  const double em1 = std::exp(1.0) - 1;
  CHECK(efficiency(1.0, em1, em1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(efficiency(0.0, 5, 5) == 0.0);
  const double floored = efficiency(0.5, 0.0, 100);
  CHECK(std::isfinite(floored));
  CHECK(floored == 0.5 / kEfficiencyFloor);
  CHECK_THROWS_AS(efficiency(1, -1, 1), std::invalid_argument);
}

TEST_CASE("tue examples") {
  std::vector<RunRecord> records;
  for (int i = 0; i < 4; ++i) records.push_back(make_record("t", {i < 3 ? "1" : "2"}, "1", {}, {}, true, 1, 1));
  records.push_back(make_record("t", {"2"}, "1", {}, {}, false, 1, 1));
  CHECK(tue(records) == 0.75);
  records.resize(3);
  CHECK(tue(records) == 1.0);
  CHECK_FALSE(tue({make_record("t", {"1"}, "1", {}, {}, false, 1, 1)}).has_value());
}

TEST_CASE("bounded metrics stay in [0, 1]") {
  herald::Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RunRecord> records;
    const std::size_t n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> preds;
      for (int r = 0; r < 3; ++r) preds.push_back(std::to_string(rng.below(3)));
      std::vector<bool> flags;
      std::vector<double> weights;
      const std::size_t steps = rng.below(4);
      for (std::size_t j = 0; j < steps; ++j) {
        flags.push_back(rng.bernoulli(0.5));
        weights.push_back(rng.uniform(0.1, 5));
      }
      records.push_back(make_record("r", preds, std::to_string(rng.below(3)), flags, weights, rng.bernoulli(0.5),
                                    rng.uniform(0, 10), rng.uniform(0, 100)));
    }
    const Summary s = summarize(records, 3);
    for (double v : {s.accuracy, s.pcs, s.consistency}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    if (s.tue) CHECK((*s.tue >= 0.0 && *s.tue <= 1.0));
    CHECK(s.efficiency >= 0.0);
  }
}
