#include "herald/answer/parse.hpp"

#include "herald/answer/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

namespace herald::answer {

namespace {

using Kind = Expr::Kind;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Expr parse_all() {
    if (tokens_.empty()) throw ParseError("empty expression");
    Expr e = additive();
    if (!at_end()) throw ParseError("unexpected token '" + peek().text + "'");
    return e;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool next_is(TokenKind k) const { return !at_end() && peek().kind == k; }

  const Token& advance() {
    if (at_end()) throw ParseError("unexpected end of expression");
    return tokens_[pos_++];
  }

  void expect(TokenKind k, const char* what) {
    if (!next_is(k)) throw ParseError(std::string("expected ") + what);
    ++pos_;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    while (next_is(TokenKind::Plus) || next_is(TokenKind::Minus)) {
      const Kind k = advance().kind == TokenKind::Plus ? Kind::Add : Kind::Sub;
      lhs = Expr::binary(k, std::move(lhs), multiplicative());
    }
    return lhs;
  }

  bool starts_implicit_factor() const {
    if (at_end()) return false;
    switch (peek().kind) {
      case TokenKind::Identifier:
      case TokenKind::Constant:
      case TokenKind::Function:
      case TokenKind::LParen:
      case TokenKind::Frac:
      case TokenKind::Root:
        return true;
      default:
        return false;
    }
  }

  Expr multiplicative() {
    Expr lhs = unary();
    for (;;) {
      if (next_is(TokenKind::Times) || next_is(TokenKind::Divide)) {
        const Kind k = advance().kind == TokenKind::Times ? Kind::Mul : Kind::Div;
        lhs = Expr::binary(k, std::move(lhs), unary());
      } else if (starts_implicit_factor()) {
        lhs = Expr::binary(Kind::Mul, std::move(lhs), power());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (next_is(TokenKind::Minus)) {
      ++pos_;
      return Expr::negate(unary());
    }
    if (next_is(TokenKind::Plus)) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (next_is(TokenKind::Power)) {
      ++pos_;
      Expr exponent = next_is(TokenKind::LBrace) ? braced() : unary();
      return Expr::binary(Kind::Pow, std::move(base), std::move(exponent));
    }
    return base;
  }

  Expr braced() {
    expect(TokenKind::LBrace, "'{'");
    Expr e = additive();
    expect(TokenKind::RBrace, "'}'");
    return e;
  }

  Expr parenthesized() {
    expect(TokenKind::LParen, "'('");
    Expr e = additive();
    expect(TokenKind::RParen, "')'");
    return e;
  }

  Expr primary() {
    const Token& t = advance();
    switch (t.kind) {
      case TokenKind::Number:
        return Expr::number(t.value);
      case TokenKind::Constant:
        return Expr::constant_node(t.constant);
      case TokenKind::Identifier:
        return Expr::variable(t.text);
      case TokenKind::LParen: {
        --pos_;
        return parenthesized();
      }
      case TokenKind::Function: {
        const Function f = t.function;
        if (next_is(TokenKind::LParen)) return Expr::call(f, parenthesized());
        if (next_is(TokenKind::LBrace)) return Expr::call(f, braced());
        return Expr::call(f, power());
      }
      case TokenKind::Root:
        return Expr::call(Function::Sqrt, primary());
      case TokenKind::Frac: {
        Expr num = braced();
        Expr den = braced();
        return Expr::binary(Kind::Div, std::move(num), std::move(den));
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Content of the last \boxed{...} (or \fbox{...}); nullopt when absent,
// throws ParseError when the braces do not balance.
std::optional<std::string> last_boxed(std::string_view s) {
  std::size_t best = std::string_view::npos;
  std::size_t open = 0;
  for (std::string_view cmd : {"\\boxed{", "\\fbox{"}) {
    const std::size_t at = s.rfind(cmd);
    if (at != std::string_view::npos && (best == std::string_view::npos || at > best)) {
      best = at;
      open = at + cmd.size();
    }
  }
  if (best == std::string_view::npos) return std::nullopt;
  int depth = 1;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return std::string(s.substr(open, i - open));
  }
  throw ParseError("unbalanced \\boxed group");
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view after_last_marker(std::string_view s) {
  static constexpr std::array<std::string_view, 5> kMarkers{
      "answer:", "answer is", "ответ:", "Ответ:", "ОТВЕТ:"};
  const std::string lower = ascii_lower(s);
  std::size_t cut = std::string_view::npos;
  for (std::string_view m : kMarkers) {
    const std::size_t at = lower.rfind(m);
    if (at != std::string::npos && (cut == std::string_view::npos || at + m.size() > cut)) {
      cut = at + m.size();
    }
  }
  if (cut == std::string_view::npos) return s;
  std::string_view rest = trim(s.substr(cut));
  if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
  return rest;
}

std::string_view strip_delimiters(std::string_view s) {
  s = trim(s);
  for (;;) {
    bool changed = false;
    for (auto [open, close] : {std::pair<std::string_view, std::string_view>{"$$", "$$"},
                               {"$", "$"},
                               {"\\(", "\\)"},
                               {"\\[", "\\]"}}) {
      if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
        s = trim(s.substr(open.size(), s.size() - open.size() - close.size()));
        changed = true;
        break;
      }
    }
    if (!changed) return s;
  }
}

bool is_literal(const Expr& e) {
  return e.is_number() || (e.kind == Kind::Negate && e.args[0].is_number());
}

Rational literal_value(const Expr& e) {
  return e.is_number() ? e.value : Rational(-e.args[0].value);
}

// Lone literals and literal fractions are exact as written.
std::optional<Rational> numeric_form(const Expr& e) {
  if (is_literal(e)) return literal_value(e);
  const Expr* inner = &e;
  bool negative = false;
  if (e.kind == Kind::Negate) {
    inner = &e.args[0];
    negative = true;
  }
  if (inner->kind == Kind::Div && is_literal(inner->args[0]) && is_literal(inner->args[1])) {
    const Rational den = literal_value(inner->args[1]);
    if (den == 0) return std::nullopt;
    Rational v = literal_value(inner->args[0]) / den;
    return negative ? Rational(-v) : v;
  }
  return std::nullopt;
}

}  // namespace

Expr parse_expression(std::string_view text, Locale locale) {
  return Parser(tokenize(text, locale)).parse_all();
}

std::string extract_answer_text(std::string_view raw) {
  std::string_view s = trim(raw);
  std::string holder;
  if (auto boxed = last_boxed(s)) {
    holder = std::move(*boxed);
    s = holder;
  } else {
    s = after_last_marker(s);
  }
  s = strip_delimiters(s);
  if (s.size() > 1 && s.back() == '.') s = strip_delimiters(trim(s.substr(0, s.size() - 1)));
  return std::string(s);
}

AnswerValue parse(std::string_view raw, Locale locale) {
  try {
    const std::string text = extract_answer_text(raw);
    std::vector<Token> tokens = tokenize(text, locale);
    // "x = <expr>" states the answer for x.
    if (tokens.size() > 2 && tokens[0].kind == TokenKind::Identifier &&
        tokens[1].kind == TokenKind::Relation && tokens[1].text == "=") {
      tokens.erase(tokens.begin(), tokens.begin() + 2);
    }
    for (const auto& t : tokens) {
      if (t.kind == TokenKind::Relation) return AnswerValue::unparsed(std::string(raw));
    }
    Expr e = Parser(std::move(tokens)).parse_all();
    if (auto r = numeric_form(e)) return AnswerValue::exact(std::move(*r));
    return AnswerValue::symbolic(std::move(e));
  } catch (const LexError&) {
  } catch (const ParseError&) {
  }
  return AnswerValue::unparsed(std::string(raw));
}

}  // namespace herald::answer
