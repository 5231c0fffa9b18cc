#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace herald {

// Seeded generator whose output is reproducible across standard libraries.
// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so uniform and Gaussian draws are derived here by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  // Standard normal via Box-Muller; the sine branch is discarded so every
  // draw consumes exactly two uniforms.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Combines a seed with a string key (FNV-1a over the bytes, then mixed).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace herald
