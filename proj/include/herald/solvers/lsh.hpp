#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace herald::solvers {

inline constexpr int kSignatureBits = 64;
inline constexpr std::uint64_t kDefaultHyperplaneSeed = 0x4C5348;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// 64 Gaussian hyperplanes through the origin, row-major 64 x dim.
class Hyperplanes {
 public:
  Hyperplanes(std::size_t dim, std::uint64_t seed = kDefaultHyperplaneSeed);
  std::size_t dim() const { return dim_; }
  std::span<const double> row(int b) const { return {normals_.data() + static_cast<std::size_t>(b) * dim_, dim_}; }

 private:
  std::size_t dim_;
  std::vector<double> normals_;
};

// Bit b is set iff features . hyperplane_b > 0.
std::uint64_t lsh_signature(std::span<const double> features, const Hyperplanes& planes);

int hamming(std::uint64_t a, std::uint64_t b);

}  // namespace herald::solvers
