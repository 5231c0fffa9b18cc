#pragma once

#include "herald/answer/expr.hpp"
#include "herald/common/random.hpp"

#include <array>

namespace herald::testing {

// Seeded random expression trees over small literals, pi, e, optional
// variables x and y, the field operations, small integer powers and the
// unary functions.
class ExprGenerator {
 public:
  ExprGenerator(std::uint64_t seed, bool variables, int max_depth = 4)
      : rng_(seed), variables_(variables), max_depth_(max_depth) {}

  answer::Expr next() { return node(0); }

 private:
  answer::Expr leaf() {
    using answer::Expr;
    const std::uint64_t pick = rng_.below(variables_ ? 10 : 8);
    switch (pick) {
      case 0:
      case 1:
      case 2:
        return Expr::number(answer::Rational(static_cast<long>(rng_.below(10))));
      case 3:
      case 4: {
        static constexpr std::array<long, 5> kDenominators{2, 4, 5, 10, 3};
        const long num = static_cast<long>(rng_.below(40)) + 1;
        return Expr::number(answer::Rational(num, kDenominators[rng_.below(kDenominators.size())]));
      }
      case 5:
        return Expr::number(answer::Rational(static_cast<long>(rng_.below(900)) + 100));
      case 6:
        return Expr::constant_node(answer::Constant::Pi);
      case 7:
        return Expr::constant_node(answer::Constant::E);
      default:
        return Expr::variable(rng_.below(2) == 0 ? "x" : "y");
    }
  }

  answer::Expr node(int depth) {
    using answer::Expr;
    if (depth >= max_depth_ || rng_.uniform() < 0.3) return leaf();
    static constexpr std::array<answer::Function, 7> kFunctions{
        answer::Function::Sin, answer::Function::Cos, answer::Function::Tan,    answer::Function::Log,
        answer::Function::Sqrt, answer::Function::Exp, answer::Function::Arctan,
    };
    switch (rng_.below(8)) {
      case 0:
        return Expr::negate(node(depth + 1));
      case 1:
        return Expr::binary(Expr::Kind::Add, node(depth + 1), node(depth + 1));
      case 2:
        return Expr::binary(Expr::Kind::Sub, node(depth + 1), node(depth + 1));
      case 3:
        return Expr::binary(Expr::Kind::Mul, node(depth + 1), node(depth + 1));
      case 4:
        return Expr::binary(Expr::Kind::Div, node(depth + 1), node(depth + 1));
      case 5: {
        const long k = static_cast<long>(rng_.below(7)) - 3;
        const Expr exponent = k < 0 ? Expr::negate(Expr::number(answer::Rational(-k))) : Expr::number(answer::Rational(k));
        return Expr::binary(Expr::Kind::Pow, node(depth + 1), exponent);
      }
      default: {
        const answer::Function f = kFunctions[rng_.below(kFunctions.size())];
        // exp of a deep subtree overflows too often to be useful.
        return Expr::call(f, f == answer::Function::Exp ? leaf() : node(depth + 1));
      }
    }
  }

  Rng rng_;
  bool variables_;
  int max_depth_;
};

}  // namespace herald::testing
