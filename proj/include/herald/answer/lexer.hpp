#pragma once

#include "herald/answer/expr.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace herald::answer {

// Decimal separator convention of the source text. Comma locale accepts both
// "3,5" and "3.5".
enum class Locale { Point, Comma };

enum class TokenKind {
  Number,
  Plus,
  Minus,
  Times,
  Divide,
  Power,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Frac,      // \frac, \dfrac, \tfrac
  Root,      // the radical sign
  Function,
  Constant,
  Identifier,
  Relation,  // = < > and their Unicode variants
  Word,      // permissive mode only: text that is not mathematics
  Punct,     // permissive mode only: punctuation outside the grammar
};

struct Token {
  TokenKind kind = TokenKind::Number;
  std::size_t position = 0;
  std::string text;
  Rational value{0};
  herald::answer::Function function = herald::answer::Function::Sin;
  herald::answer::Constant constant = herald::answer::Constant::Pi;
};

// Strict lexer for answer strings. Scientific forms "2e3", "2E-3",
// "2×10^3" and "2\cdot 10^{-3}" become a single Number token.
// Throws LexError on anything outside the grammar.
std::vector<Token> tokenize(std::string_view raw, Locale locale);

// Never throws: unknown letter runs become Word tokens and other unknown
// characters Punct tokens. Used for text statistics.
std::vector<Token> tokenize_permissive(std::string_view text, Locale locale = Locale::Point);

bool is_operator_token(const Token& t);

}  // namespace herald::answer
