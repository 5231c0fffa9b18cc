#include "herald/solvers/lsh.hpp"

#include "herald/common/random.hpp"

#include <bit>
#include <string>

namespace herald::solvers {

Hyperplanes::Hyperplanes(std::size_t dim, std::uint64_t seed) : dim_(dim), normals_(kSignatureBits * dim) {
  if (dim == 0) throw std::invalid_argument("hyperplane dimension must be positive");
  Rng rng(seed);
  for (double& x : normals_) x = rng.normal();
}

std::uint64_t lsh_signature(std::span<const double> features, const Hyperplanes& planes) {
  if (features.size() != planes.dim())
    throw DimensionMismatch("features have " + std::to_string(features.size()) + " entries, hyperplanes expect " +
                            std::to_string(planes.dim()));
  std::uint64_t sig = 0;
  for (int b = 0; b < kSignatureBits; ++b) {
    const auto h = planes.row(b);
    double dot = 0;
    for (std::size_t j = 0; j < features.size(); ++j) dot += features[j] * h[j];
    if (dot > 0) sig |= std::uint64_t{1} << b;
  }
  return sig;
}

int hamming(std::uint64_t a, std::uint64_t b) { return std::popcount(a ^ b); }

}  // namespace herald::solvers
