#include "support.hpp"

#include "herald/common/random.hpp"
#include "herald/preprocess/augment.hpp"
#include "herald/preprocess/density.hpp"
#include "herald/preprocess/embedding.hpp"
#include "herald/preprocess/notation.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

using namespace herald::preprocess;

namespace {

std::string random_statement(herald::Rng& rng) {
  static constexpr std::array<const char*, 22> kPieces{
      "tg(x)",  "ctg(2x)", "arctg(1)", "3,5",      "1,2,3",      " + ",     " × ",          "2·3",
      "Найти ", "значение ", "speed ", "is ",      "0,25 км",    "sin(x)",  "tgx",          "x^2",
      " = ",    "(1, 2)",   "ctg",    "12,75",    " arctg(x) ", "Вычислите tg(π/4)",
  };
  std::string s;
  const auto n = 1 + rng.below(8);
  for (std::uint64_t i = 0; i < n; ++i) s += kPieces[rng.below(kPieces.size())];
  return s;
}

// Independent Box-Muller over the raw engine.
double oracle_normal(std::mt19937_64& engine) {
  const double u1 = 1.0 - static_cast<double>(engine() >> 11) / 9007199254740992.0;
  const double u2 = static_cast<double>(engine() >> 11) / 9007199254740992.0;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Problem statement(std::string en) {
  Problem p;
  p.id = "t";
  p.statement_en = std::move(en);
  return p;
}

}  // namespace

TEST_CASE("standardize_notation examples") {
  CHECK(standardize_notation("tg(x)") == "tan(x)");
  CHECK(standardize_notation("3,5 + 1") == "3.5 + 1");
  CHECK(standardize_notation("tan(x)") == "tan(x)");
  CHECK(standardize_notation("ctg(x) + arctg(y)") == "cot(x) + arctan(y)");
  CHECK(standardize_notation("2·3 × 4") == "2*3 * 4");
}

TEST_CASE("standardize_notation leaves lists and partial words alone") {
  CHECK(standardize_notation("1,2,3") == "1,2,3");
  CHECK(standardize_notation("tgx") == "tgx");
  CHECK(standardize_notation("stg(x)") == "stg(x)");
}

TEST_CASE("standardize_notation is idempotent on 1000 statements") {
  herald::Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const std::string s = random_statement(rng);
    const std::string once = standardize_notation(s);
    CAPTURE(s);
    CHECK(standardize_notation(once) == once);
  }
  for (const auto& row : herald::testing::read_jsonl(herald::testing::fixture("problems50.jsonl"))) {
    for (const char* key : {"statement_en", "statement_ru"}) {
      if (!row.contains(key)) continue;
      const std::string once = standardize_notation(row[key].get<std::string>());
      CHECK(standardize_notation(once) == once);
    }
  }
}

TEST_CASE("Cyrillic detection") {
  CHECK(has_cyrillic("Найти x"));
  CHECK_FALSE(has_cyrillic("find x"));
}

TEST_CASE("operator_density examples") {
  CHECK(operator_density("") == 0.0);
  CHECK(operator_density("x + 1") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(operator_density("a = b") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Brackets are not tokens for the ratio.
  CHECK(operator_density("(x + 1)") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(operator_density("the cat sat") == 0.0);
  CHECK(kDefaultTauSym == 0.25);
}

TEST_CASE("operator_density stays in [0, 1]") {
  herald::Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    const double d = operator_density(random_statement(rng));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("alignment_score examples") {
  const EmbeddingVector v{{1, 0, 0}, "p"};
  const EmbeddingVector w{{0, 2, 0}, "p"};
  CHECK(alignment_score(v, v) == doctest::Approx(1.0));
  CHECK(alignment_score(v, w) == 0.0);
  CHECK(kAlignmentReviewThreshold == 0.85);
  CHECK(needs_review(0.849));
  CHECK_FALSE(needs_review(0.85));
}

TEST_CASE("alignment_score errors") {
  const EmbeddingVector v{{1, 0, 0}, "p"};
  CHECK_THROWS_AS(alignment_score(v, EmbeddingVector{{1, 0}, "p"}), DimensionMismatch);
  CHECK_THROWS_AS(alignment_score(v, EmbeddingVector{{1, 0, 0}, "q"}), DimensionMismatch);
  CHECK_THROWS_AS(alignment_score(v, EmbeddingVector{{0, 0, 0}, "p"}), ZeroVector);
}

TEST_CASE("alignment_score is symmetric and bounded") {
  herald::Rng rng(10);
  for (int i = 0; i < 500; ++i) {
    EmbeddingVector a{{}, "p"}, b{{}, "p"};
    for (int k = 0; k < 8; ++k) {
      a.values.push_back(rng.normal());
      b.values.push_back(rng.normal());
    }
    const double ab = alignment_score(a, b);
    CHECK(ab == alignment_score(b, a));
    CHECK(std::fabs(ab) <= 1.0);
  }
}

TEST_CASE("embed_bow is a deterministic bag of words") {
  const auto a = embed_bow("the train leaves at noon");
  CHECK(a.values.size() == 256);
  CHECK(a.values == embed_bow("the train leaves at noon").values);
  CHECK(a.values == embed_bow("noon at leaves train the").values);
  CHECK(a.values == embed_bow("The TRAIN leaves at noon").values);
  double norm = 0;
  for (double x : a.values) norm += x * x;
  CHECK(norm == doctest::Approx(1.0));
  CHECK(a.values != embed_bow("the train leaves at noon", 256, 1).values);
  const auto blank = embed_bow("   ");
  for (double x : blank.values) CHECK(x == 0.0);
}

TEST_CASE("disjoint vocabularies embed nearly orthogonally") {
  herald::Rng rng(12);
  for (int pair = 0; pair < 100; ++pair) {
    std::string left, right;
    for (int k = 0; k < 8; ++k) {
      left += "l" + std::to_string(pair) + "w" + std::to_string(rng.below(100000)) + " ";
      right += "r" + std::to_string(pair) + "w" + std::to_string(rng.below(100000)) + " ";
    }
    CHECK(std::fabs(alignment_score(embed_bow(left), embed_bow(right))) < 0.3);
  }
}

TEST_CASE("BoW provider forwards to embed_bow") {
  const BowEmbeddingProvider provider(64, 3);
  CHECK(provider.embed("a b c").values == embed_bow("a b c", 64, 3).values);
}

TEST_CASE("augment_numeric with sigma 0 is the identity") {
  Problem p = statement("A train covers 120 km in 2 hours.");
  p.reference_answer = "60";
  CHECK(augment_numeric(p, 0.0, 42) == p);
  CHECK(kDefaultAugmentSigma == 0.1);
  CHECK_THROWS_AS(augment_numeric(p, -1.0, 42), std::invalid_argument);
}

TEST_CASE("augment_numeric reproduces the seeded Gaussian oracle") {
  const Problem out = augment_numeric(statement("speed is 60 km"), 0.1, 42);
  std::mt19937_64 engine(42);
  const double value = 60.0 * (1.0 + 0.1 * oracle_normal(engine));
  char want[64];
  std::snprintf(want, sizeof want, "%.6g", value);
  const std::string prefix = "speed is ";
  REQUIRE(out.statement_en.rfind(prefix, 0) == 0);
  const std::string got = out.statement_en.substr(prefix.size(), out.statement_en.size() - prefix.size() - 3);
  CAPTURE(out.statement_en);
  CAPTURE(want);
  CHECK(std::stod(got) == std::stod(want));
  CHECK(out.statement_en.substr(out.statement_en.size() - 3) == " km");
}

TEST_CASE("augment_numeric with a full mask is the identity") {
  Problem p = statement("Add 3 and 4 then multiply by 5.");
  p.critical_value_mask = std::vector<std::size_t>{0, 1, 2};
  p.reference_answer = "35";
  CHECK(augment_numeric(p, 0.1, 7) == p);
}

TEST_CASE("augment_numeric keeps denominators and exponents by default") {
  const Problem p = statement("Compute 7/8 + 5^2 and 13");
  CHECK(critical_literals(p) == std::vector<std::size_t>{1, 3});
  const Problem out = augment_numeric(p, 0.1, 9);
  CHECK(out.statement_en.find("/8 + ") != std::string::npos);
  CHECK(out.statement_en.find("^2 and ") != std::string::npos);
  CHECK(out.statement_en != p.statement_en);
}

TEST_CASE("augment_numeric mirrors values into the Russian statement and drops the reference") {
  Problem p = statement("A rope of 12.5 m is cut into 5 pieces.");
  p.statement_ru = "Верёвку длиной 12,5 м режут на 5 частей.";
  p.reference_answer = "2.5";
  p.reference_steps = std::vector<ReferenceStep>{{"12.5/5", "2.5"}};
  p.critical_value_mask = std::vector<std::size_t>{1};
  const Problem out = augment_numeric(p, 0.1, 3);
  CHECK_FALSE(out.reference_answer.has_value());
  CHECK_FALSE(out.reference_steps.has_value());
  const auto en_value = out.statement_en.substr(std::string("A rope of ").size());
  std::string number = en_value.substr(0, en_value.find(' '));
  std::string comma = number;
  std::replace(comma.begin(), comma.end(), '.', ',');
  CHECK(out.statement_ru->find(comma + " м") != std::string::npos);
  CHECK(out.statement_ru->find("на 5 частей") != std::string::npos);
  CHECK(augment_numeric(p, 0.1, 3) == out);
}
