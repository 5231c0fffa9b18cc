#include "herald/routing/features.hpp"

#include "herald/answer/lexer.hpp"
#include "herald/preprocess/density.hpp"
#include "herald/preprocess/notation.hpp"

#include <algorithm>
#include <cmath>

namespace herald::routing {

namespace {

using answer::TokenKind;

int sentences(std::string_view text) {
  int count = 0;
  bool content = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      const bool ends = i + 1 == text.size() || text[i + 1] == ' ' || text[i + 1] == '\n';
      if (ends && content) {
        ++count;
        content = false;
      }
    } else if (c != ' ' && c != '\n' && c != '\t' && c != '\r') {
      content = true;
    }
  }
  return count + (content ? 1 : 0);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

std::optional<std::size_t> category_index(std::string_view name) {
  for (std::size_t i = 0; i < kCategories.size(); ++i) {
    if (kCategories[i] == name) return i;
  }
  return std::nullopt;
}

RouteFeatures extract_features(const preprocess::Problem& p) {
  const std::string text = preprocess::standardize_notation(p.primary_statement());
  RouteFeatures f;
  for (const auto& t : answer::tokenize_permissive(text)) {
    switch (t.kind) {
      case TokenKind::LParen:
      case TokenKind::RParen:
      case TokenKind::LBrace:
      case TokenKind::RBrace:
      case TokenKind::Punct:
        break;
      case TokenKind::Number:
        f.max_magnitude = std::max(f.max_magnitude, std::abs(static_cast<double>(t.value)));
        ++f.token_length;
        break;
      default:
        ++f.token_length;
        break;
    }
  }
  f.operator_density = preprocess::operator_density(text);
  f.has_russian = (p.statement_ru && !p.statement_ru->empty()) || preprocess::has_cyrillic(text);
  f.sentence_count = sentences(text);
  if (p.category) {
    if (const auto i = category_index(*p.category)) f.category[*i] = 1.0;
  }
  return f;
}

std::vector<double> to_vector(const RouteFeatures& f) {
  std::vector<double> v;
  v.reserve(kRouteFeatureCount);
  v.push_back(clamp01(f.token_length / 512.0));
  v.push_back(clamp01(f.operator_density));
  v.push_back(clamp01(std::log10(1.0 + f.max_magnitude) / 9.0));
  v.push_back(f.has_russian ? 1.0 : 0.0);
  v.push_back(clamp01(f.sentence_count / 16.0));
  v.insert(v.end(), f.category.begin(), f.category.end());
  return v;
}

}  // namespace herald::routing
