#include "herald/preprocess/density.hpp"

#include "herald/answer/lexer.hpp"

namespace herald::preprocess {

using answer::TokenKind;

double operator_density(std::string_view text) {
  int total = 0;
  int operators = 0;
  for (const auto& t : answer::tokenize_permissive(text)) {
    switch (t.kind) {
      case TokenKind::LParen:
      case TokenKind::RParen:
      case TokenKind::LBrace:
      case TokenKind::RBrace:
      case TokenKind::Punct:
        continue;
      case TokenKind::Frac:
        ++operators;  // a fraction bar is a division
        break;
      default:
        if (answer::is_operator_token(t)) ++operators;
        break;
    }
    ++total;
  }
  return total == 0 ? 0.0 : static_cast<double>(operators) / total;
}

}  // namespace herald::preprocess
