#include "herald/preprocess/embedding.hpp"

#include "herald/common/random.hpp"

#include <algorithm>
#include <cmath>

namespace herald::preprocess {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// ASCII and Cyrillic А-Я/Ё lower-casing; other bytes pass through.
std::string lower(std::string_view w) {
  std::string out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto c = static_cast<unsigned char>(w[i]);
    if (c >= 'A' && c <= 'Z') {
      out += static_cast<char>(c - 'A' + 'a');
    } else if (c == 0xD0 && i + 1 < w.size()) {
      const auto n = static_cast<unsigned char>(w[i + 1]);
      if (n >= 0x90 && n <= 0x9F) {  // А-П -> а-п
        out += '\xD0';
        out += static_cast<char>(n + 0x20);
      } else if (n >= 0xA0 && n <= 0xAF) {  // Р-Я -> р-я
        out += '\xD1';
        out += static_cast<char>(n - 0x20);
      } else if (n == 0x81) {  // Ё -> ё
        out += "\xD1\x91";
      } else {
        out += static_cast<char>(c);
        out += static_cast<char>(n);
      }
      ++i;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
    } else if (is_word_byte(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back(lower(text.substr(i, j - i)));
      i = j;
    } else {
      out.emplace_back(1, text[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

double alignment_score(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.provider != b.provider) throw DimensionMismatch("embeddings from different providers");
  if (a.values.size() != b.values.size()) throw DimensionMismatch("embedding lengths differ");
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0 || nb == 0) throw ZeroVector("zero-norm embedding");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

bool needs_review(double score) { return score < kAlignmentReviewThreshold; }

EmbeddingVector embed_bow(std::string_view text, int dim, std::uint64_t seed) {
  if (dim < 16) throw std::invalid_argument("embedding dimension must be >= 16");
  EmbeddingVector v;
  v.provider = "bow-" + std::to_string(dim) + "-" + std::to_string(seed);
  v.values.assign(static_cast<std::size_t>(dim), 0.0);
  for (const auto& w : words(text)) {
    const std::uint64_t h = derive_seed(seed, w);
    const auto slot = static_cast<std::size_t>(h % static_cast<std::uint64_t>(dim));
    v.values[slot] += (h >> 63) ? -1.0 : 1.0;
  }
  double norm = 0;
  for (double x : v.values) norm += x * x;
  if (norm > 0) {
    norm = std::sqrt(norm);
    for (double& x : v.values) x /= norm;
  }
  return v;
}

}  // namespace herald::preprocess
