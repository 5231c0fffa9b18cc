#include "herald/preprocess/augment.hpp"

#include "herald/answer/lexer.hpp"
#include "herald/answer/value.hpp"
#include "herald/common/random.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace herald::preprocess {

namespace {

using answer::Locale;
using answer::Rational;
using answer::Token;
using answer::TokenKind;

const std::string kEmpty;

struct Literal {
  std::size_t position;
  std::size_t length;
  Rational value;
};

std::vector<Literal> literals(const std::vector<Token>& tokens) {
  std::vector<Literal> out;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Number) out.push_back({t.position, t.text.size(), t.value});
  }
  return out;
}

// Denominators and exponents: a literal right after "/" or "^", after "^{",
// or opening the second brace group of \frac.
std::vector<std::size_t> default_critical(const std::vector<Token>& tokens) {
  std::vector<std::size_t> out;
  std::size_t ordinal = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::Number) continue;
    bool critical = false;
    if (i >= 1) {
      const TokenKind prev = tokens[i - 1].kind;
      if (prev == TokenKind::Divide || prev == TokenKind::Power) critical = true;
      if (prev == TokenKind::LBrace && i >= 2) {
        const TokenKind before = tokens[i - 2].kind;
        if (before == TokenKind::Power || before == TokenKind::RBrace) critical = true;
      }
    }
    if (critical) out.push_back(ordinal);
    ++ordinal;
  }
  return out;
}

std::string render_value(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  const auto d = answer::Decimal::from_string(std::string(buf, res.ptr), kAugmentDigits);
  return answer::render(d);
}

// Rewrites [position, position+length) spans right to left.
std::string splice(std::string text, std::vector<std::pair<Literal, std::string>> edits) {
  std::sort(edits.begin(), edits.end(),
            [](const auto& a, const auto& b) { return a.first.position > b.first.position; });
  for (const auto& [lit, replacement] : edits) text.replace(lit.position, lit.length, replacement);
  return text;
}

}  // namespace

const std::string& Problem::primary_statement() const {
  if (!statement_en.empty()) return statement_en;
  return statement_ru ? *statement_ru : kEmpty;
}

std::vector<std::size_t> critical_literals(const Problem& p) {
  if (p.critical_value_mask) return *p.critical_value_mask;
  return default_critical(answer::tokenize_permissive(p.statement_en, Locale::Point));
}

Problem augment_numeric(const Problem& p, double sigma, std::uint64_t rng_seed) {
  if (!(sigma >= 0)) throw std::invalid_argument("sigma must be >= 0");
  if (sigma == 0) return p;

  const auto tokens = answer::tokenize_permissive(p.statement_en, Locale::Point);
  const auto lits = literals(tokens);
  const auto critical = p.critical_value_mask ? *p.critical_value_mask : default_critical(tokens);

  Rng rng(rng_seed);
  std::vector<std::pair<Literal, std::string>> edits;
  std::map<Rational, std::string> replaced;
  for (std::size_t k = 0; k < lits.size(); ++k) {
    if (std::find(critical.begin(), critical.end(), k) != critical.end()) continue;
    const double eps = rng.normal(0.0, sigma);
    const double original = static_cast<double>(lits[k].value);
    const std::string text = render_value(original * (1.0 + eps));
    edits.emplace_back(lits[k], text);
    replaced.emplace(lits[k].value, text);
  }
  if (edits.empty()) return p;

  Problem out = p;
  out.statement_en = splice(p.statement_en, edits);
  if (p.statement_ru) {
    std::vector<std::pair<Literal, std::string>> ru_edits;
    for (const auto& lit : literals(answer::tokenize_permissive(*p.statement_ru, Locale::Comma))) {
      const auto it = replaced.find(lit.value);
      if (it == replaced.end()) continue;
      std::string text = it->second;
      std::replace(text.begin(), text.end(), '.', ',');
      ru_edits.emplace_back(lit, text);
    }
    out.statement_ru = splice(*p.statement_ru, ru_edits);
  }
  out.reference_answer.reset();
  out.reference_steps.reset();
  return out;
}

}  // namespace herald::preprocess
