#include "herald/answer/simplify.hpp"

#include "herald/answer/errors.hpp"
#include "herald/answer/numeric.hpp"
#include "herald/answer/parse.hpp"

#include <boost/multiprecision/integer.hpp>

namespace herald::answer {

namespace {

namespace mp = boost::multiprecision;
using Kind = Expr::Kind;

constexpr long kMaxExactExponent = 4096;
constexpr std::size_t kMaxExactBits = 1u << 17;
constexpr long kMaxRootDegree = 64;

std::size_t bit_length(const BigInt& n) { return n == 0 ? 0 : mp::msb(mp::abs(n)) + 1; }

// floor(n^(1/k)) for n >= 0.
BigInt integer_root(const BigInt& n, unsigned k) {
  if (n < 2 || k == 1) return n;
  BigInt x = BigInt(1) << (bit_length(n) / k + 1);
  for (;;) {
    BigInt y = ((k - 1) * x + n / mp::pow(x, k - 1)) / k;
    if (y >= x) return x;
    x = y;
  }
}

std::optional<BigInt> exact_root(const BigInt& n, unsigned k) {
  const BigInt r = integer_root(n, k);
  if (mp::pow(r, k) == n) return r;
  return std::nullopt;
}

std::optional<Rational> integer_power(const Rational& base, const BigInt& exponent) {
  if (base == 0) {
    if (exponent < 0) throw DomainError("zero raised to a negative power");
    return Rational(exponent == 0 ? 1 : 0);
  }
  if (base == 1) return Rational(1);
  if (base == -1) return Rational(exponent % 2 == 0 ? 1 : -1);
  if (mp::abs(exponent) > kMaxExactExponent) return std::nullopt;
  const unsigned e = static_cast<unsigned>(mp::abs(exponent));
  const std::size_t bits = bit_length(numerator(base)) + bit_length(denominator(base));
  if (bits * e > kMaxExactBits) return std::nullopt;
  Rational r(mp::pow(numerator(base), e), mp::pow(denominator(base), e));
  if (exponent < 0) r = 1 / r;
  return r;
}

std::optional<Rational> exact_power(const Rational& base, const Rational& exponent) {
  if (denominator(exponent) == 1) return integer_power(base, numerator(exponent));
  if (base < 0) throw DomainError("negative base with non-integer exponent");
  if (base == 0) {
    if (exponent < 0) throw DomainError("zero raised to a negative power");
    return Rational(0);
  }
  const BigInt& q = denominator(exponent);
  if (q > kMaxRootDegree) return std::nullopt;
  const unsigned k = static_cast<unsigned>(q);
  auto num = exact_root(numerator(base), k);
  auto den = exact_root(denominator(base), k);
  if (!num || !den) return std::nullopt;
  return integer_power(Rational(*num, *den), numerator(exponent));
}

std::optional<Rational> exact_call(Function f, const Rational& x) {
  switch (f) {
    case Function::Sqrt:
      if (x < 0) throw DomainError("sqrt of a negative value");
      return exact_power(x, Rational(1, 2));
    case Function::Log:
      if (x <= 0) throw DomainError("log of a non-positive value");
      if (x == 1) return Rational(0);
      return std::nullopt;
    case Function::Sin:
    case Function::Tan:
    case Function::Arctan:
      if (x == 0) return Rational(0);
      return std::nullopt;
    case Function::Arcsin:
      if (x > 1 || x < -1) throw DomainError("arcsin outside [-1, 1]");
      if (x == 0) return Rational(0);
      return std::nullopt;
    case Function::Arccos:
      if (x > 1 || x < -1) throw DomainError("arccos outside [-1, 1]");
      if (x == 1) return Rational(0);
      return std::nullopt;
    case Function::Cos:
    case Function::Exp:
      if (x == 0) return Rational(1);
      return std::nullopt;
    case Function::Cot:
      if (x == 0) throw DomainError("cot at a pole");
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Rational> exact_binary(Kind kind, const Rational& a, const Rational& b) {
  switch (kind) {
    case Kind::Add: return a + b;
    case Kind::Sub: return a - b;
    case Kind::Mul: return a * b;
    case Kind::Div:
      if (b == 0) throw DomainError("division by zero");
      return a / b;
    case Kind::Pow: return exact_power(a, b);
    default: return std::nullopt;
  }
}

}  // namespace

Expr fold_constants(const Expr& e) {
  switch (e.kind) {
    case Kind::Number:
    case Kind::Constant:
    case Kind::Variable:
      return e;
    default:
      break;
  }
  Expr out = e;
  for (auto& child : out.args) child = fold_constants(child);

  if (out.kind == Kind::Negate) {
    if (out.args[0].is_number()) return Expr::number(-out.args[0].value);
    return out;
  }
  if (out.kind == Kind::Call) {
    if (out.args[0].is_number()) {
      if (auto v = exact_call(out.function, out.args[0].value)) return Expr::number(std::move(*v));
    }
    return out;
  }
  const Expr& lhs = out.args[0];
  const Expr& rhs = out.args[1];
  if (out.kind == Kind::Div && rhs.is_number() && rhs.value == 0) {
    throw DomainError("division by zero");
  }
  if (lhs.is_number() && rhs.is_number()) {
    if (auto v = exact_binary(out.kind, lhs.value, rhs.value)) return Expr::number(std::move(*v));
  }
  return out;
}

AnswerValue simplify(const AnswerValue& v) {
  if (!v.is_symbolic()) return v;
  Expr folded = fold_constants(v.as_symbolic());
  if (folded.is_number()) return AnswerValue::exact(folded.value);
  if (!has_variables(folded)) return AnswerValue::decimal(eval_numeric(folded, kAnswerDigits));
  return AnswerValue::symbolic(std::move(folded));
}

AnswerValue normalize(std::string_view raw, Locale locale) { return simplify(parse(raw, locale)); }

AnswerValue normalize_or_unparsed(std::string_view raw, Locale locale) {
  try {
    return normalize(raw, locale);
  } catch (const DomainError&) {
    return AnswerValue::unparsed(std::string(raw));
  }
}

}  // namespace herald::answer
