#pragma once

#include "herald/preprocess/problem.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace herald::routing {

inline constexpr std::size_t kCategoryCount = 12;
inline constexpr std::size_t kRouteFeatureCount = 5 + kCategoryCount;

// Primary problem categories, in one-hot order.
inline constexpr std::array<std::string_view, kCategoryCount> kCategories{
    "algebra",      "geometry",      "calculus",       "probability",   "statistics", "number_theory",
    "combinatorics", "trigonometry", "linear_algebra", "sequences",     "arithmetic", "word_problems",
};

std::optional<std::size_t> category_index(std::string_view name);

struct RouteFeatures {
  int token_length = 0;
  double operator_density = 0;
  double max_magnitude = 0;  // largest absolute numeric literal
  bool has_russian = false;
  int sentence_count = 0;
  std::array<double, kCategoryCount> category{};  // all zero when unknown
};

RouteFeatures extract_features(const preprocess::Problem& p);

// [len/512, density, log10(1+magnitude)/9, russian, sentences/16,
// category one-hot], the scaled entries clamped to [0, 1].
std::vector<double> to_vector(const RouteFeatures& f);

}  // namespace herald::routing
