#include "herald/common/envelope.hpp"
#include "herald/common/random.hpp"
#include "herald/common/roles.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <set>

using namespace herald;

TEST_CASE("Rng reproduces the standard mt19937_64 stream") {
  // The standard fixes the 10000th output of a default-seeded engine.
  std::mt19937_64 reference;
  Rng rng(std::mt19937_64::default_seed);
  std::uint64_t last = 0;
  for (int i = 0; i < 10000; ++i) last = rng.next_u64();
  CHECK(last == 9981545732273789042ULL);
  for (int i = 0; i < 10000; ++i) reference();
  CHECK(rng.next_u64() == reference());
}

TEST_CASE("uniform draws use the top 53 bits") {
  std::mt19937_64 reference(17);
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    CHECK(rng.uniform() == static_cast<double>(reference() >> 11) / 9007199254740992.0);
  }
}

TEST_CASE("normal draws follow Box-Muller over two uniforms") {
  std::mt19937_64 reference(3);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double u1 = 1.0 - static_cast<double>(reference() >> 11) / 9007199254740992.0;
    const double u2 = static_cast<double>(reference() >> 11) / 9007199254740992.0;
    CHECK(rng.normal() == std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2));
  }
}

TEST_CASE("normal draws have unit variance") {
  Rng rng(8);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::fabs(sum / n) < 0.01);
  CHECK(std::fabs(sq / n - 1.0) < 0.02);
}

TEST_CASE("below stays in range and covers it") {
  Rng rng(4);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("derived seeds separate keys") {
  CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
  CHECK(derive_seed(1, "a") != derive_seed(2, "a"));
  CHECK(derive_seed(1, std::uint64_t{0}) != derive_seed(1, std::uint64_t{1}));
  CHECK(derive_seed(5, "train") == derive_seed(5, "train"));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("envelope fields are little-endian") {
  ByteWriter w;
  w.header({ModelKind::QModel, PayloadKind::Quantized, 0x01020304});
  w.f64(1.0);
  const std::vector<std::uint8_t> want{'H', 'R', 'L', 'D', 1, 0, 2, 1, 4, 3, 2, 1,
                                       0, 0, 0, 0, 0, 0, 0xF0, 0x3F};
  CHECK(w.bytes() == want);

  ByteReader r(w.bytes());
  const auto h = r.header();
  CHECK(h.model == ModelKind::QModel);
  CHECK(h.payload == PayloadKind::Quantized);
  CHECK(h.features == 0x01020304u);
  CHECK(r.f64() == 1.0);
  CHECK(r.at_end());
}

TEST_CASE("malformed envelopes raise FormatError") {
  std::vector<std::uint8_t> bytes{'H', 'R', 'L', 'X', 1, 0, 1, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(ByteReader(bytes).header(), FormatError);
  bytes[3] = 'D';
  bytes[4] = 9;
  CHECK_THROWS_AS(ByteReader(bytes).header(), FormatError);
  bytes[4] = 1;
  bytes.resize(9);
  CHECK_THROWS_AS(ByteReader(bytes).header(), FormatError);
}

TEST_CASE("file bytes round trip") {
  const auto path = (std::filesystem::temp_directory_path() / "herald_common_bytes.bin").string();
  const std::vector<std::uint8_t> bytes{0, 1, 2, 255, 128};
  write_file_bytes(path, bytes);
  CHECK(read_file_bytes(path) == bytes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file_bytes(path), std::runtime_error);
}

TEST_CASE("role names round trip") {
  for (auto r : {SolverRole::ToolIntegrated, SolverRole::AbstractReasoning, SolverRole::Router}) {
    CHECK(role_from_name(role_name(r)) == r);
  }
  CHECK_FALSE(role_from_name("oracle").has_value());
}
