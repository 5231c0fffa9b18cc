#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace herald::preprocess {

inline constexpr int kDefaultEmbeddingDim = 256;
inline constexpr double kAlignmentReviewThreshold = 0.85;

struct EmbeddingVector {
  std::vector<double> values;
  std::string provider;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroVector : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cosine similarity, clamped to [-1, 1]. Throws DimensionMismatch when the
// providers or lengths differ and ZeroVector when either norm is zero.
double alignment_score(const EmbeddingVector& a, const EmbeddingVector& b);

bool needs_review(double score);

// Signed feature hashing of lower-cased word tokens, L2-normalized. Word
// order does not matter. Whitespace-only text maps to the zero vector.
EmbeddingVector embed_bow(std::string_view text, int dim = kDefaultEmbeddingDim, std::uint64_t seed = 0);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

class BowEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit BowEmbeddingProvider(int dim = kDefaultEmbeddingDim, std::uint64_t seed = 0) : dim_(dim), seed_(seed) {}
  EmbeddingVector embed(std::string_view text) const override { return embed_bow(text, dim_, seed_); }

 private:
  int dim_;
  std::uint64_t seed_;
};

}  // namespace herald::preprocess
