#include "herald/answer/numeric.hpp"

#include "herald/answer/errors.hpp"
#include "herald/answer/simplify.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <stdexcept>

namespace herald::answer {

namespace {

namespace mp = boost::multiprecision;

// Values this far below the operand scale are indistinguishable from
// rounding noise at working precision.
const BigFloat& noise_factor() {
  static const BigFloat f = mp::pow(BigFloat(10), -(kWorkingDigits - 10));
  return f;
}

BigFloat flush(const BigFloat& v, const BigFloat& scale) {
  return mp::abs(v) <= scale * noise_factor() ? BigFloat(0) : v;
}

bool is_integer(const BigFloat& x) { return mp::trunc(x) == x; }

BigFloat checked(const BigFloat& v, const char* op) {
  if (mp::isnan(v) || mp::isinf(v)) throw DomainError(std::string(op) + " is not a finite real");
  return v;
}

BigFloat power(const BigFloat& base, const BigFloat& exponent) {
  if (base == 0) {
    if (exponent < 0) throw DomainError("zero raised to a negative power");
    return exponent == 0 ? BigFloat(1) : BigFloat(0);
  }
  if (base < 0) {
    if (!is_integer(exponent)) throw DomainError("negative base with non-integer exponent");
    BigFloat magnitude = mp::pow(-base, exponent);
    const bool odd = mp::fmod(mp::abs(exponent), BigFloat(2)) == 1;
    return checked(odd ? BigFloat(-magnitude) : magnitude, "power");
  }
  return checked(mp::pow(base, exponent), "power");
}

BigFloat apply(Function f, const BigFloat& x) {
  const BigFloat arg_scale = std::max(BigFloat(mp::abs(x)), BigFloat(1));
  switch (f) {
    case Function::Sin:
      return flush(mp::sin(x), arg_scale);
    case Function::Cos:
      return flush(mp::cos(x), arg_scale);
    case Function::Tan: {
      const BigFloat c = flush(mp::cos(x), arg_scale);
      if (c == 0) throw DomainError("tan at a pole");
      return flush(mp::sin(x), arg_scale) / c;
    }
    case Function::Cot: {
      const BigFloat s = flush(mp::sin(x), arg_scale);
      if (s == 0) throw DomainError("cot at a pole");
      return flush(mp::cos(x), arg_scale) / s;
    }
    case Function::Arcsin:
      if (mp::abs(x) > 1) throw DomainError("arcsin outside [-1, 1]");
      return mp::asin(x);
    case Function::Arccos:
      if (mp::abs(x) > 1) throw DomainError("arccos outside [-1, 1]");
      return mp::acos(x);
    case Function::Arctan:
      return mp::atan(x);
    case Function::Log:
      if (x <= 0) throw DomainError("log of a non-positive value");
      return flush(mp::log(x), BigFloat(1));
    case Function::Sqrt:
      if (x < 0) throw DomainError("sqrt of a negative value");
      return mp::sqrt(x);
    case Function::Exp:
      return checked(mp::exp(x), "exp");
  }
  throw std::logic_error("unknown function");
}

BigFloat eval(const Expr& e, const Bindings& bindings) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return to_bigfloat(e.value);
    case Expr::Kind::Constant:
      return e.constant == Constant::Pi ? boost::math::constants::pi<BigFloat>()
                                        : boost::math::constants::e<BigFloat>();
    case Expr::Kind::Variable: {
      auto it = bindings.find(e.name);
      if (it == bindings.end()) throw std::invalid_argument("unbound variable " + e.name);
      return it->second;
    }
    case Expr::Kind::Negate:
      return -eval(e.args[0], bindings);
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      const BigFloat a = eval(e.args[0], bindings);
      const BigFloat b = eval(e.args[1], bindings);
      const BigFloat v = e.kind == Expr::Kind::Add ? BigFloat(a + b) : BigFloat(a - b);
      return flush(v, std::max(BigFloat(mp::abs(a)), BigFloat(mp::abs(b))));
    }
    case Expr::Kind::Mul:
      return checked(eval(e.args[0], bindings) * eval(e.args[1], bindings), "product");
    case Expr::Kind::Div: {
      const BigFloat a = eval(e.args[0], bindings);
      const BigFloat b = eval(e.args[1], bindings);
      if (b == 0) throw DomainError("division by zero");
      return checked(a / b, "quotient");
    }
    case Expr::Kind::Pow:
      return power(eval(e.args[0], bindings), eval(e.args[1], bindings));
    case Expr::Kind::Call:
      return apply(e.function, eval(e.args[0], bindings));
  }
  throw std::logic_error("unknown expression kind");
}

}  // namespace

BigFloat to_bigfloat(const Rational& r) {
  return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

BigFloat evaluate(const Expr& e, const Bindings& bindings) { return eval(e, bindings); }

Decimal round_to_decimal(const BigFloat& x, int precision) {
  if (x == 0) {
    Decimal d;
    d.precision = precision;
    return d;
  }
  // Guard digits beyond the request; the final rounding is decimal and
  // half away from zero.
  const std::string s = x.str(precision + 30, std::ios_base::scientific);
  return Decimal::from_string(s, precision);
}

Decimal eval_numeric(const Expr& e, int precision) {
  if (precision < 1 || precision > kMaxRequestedDigits) {
    throw std::invalid_argument("precision must be in [1, " + std::to_string(kMaxRequestedDigits) + "]");
  }
  if (has_variables(e)) throw std::invalid_argument("expression has free variables");
  const Expr folded = fold_constants(e);
  if (folded.is_number()) return Decimal::from_rational(folded.value, precision);
  return round_to_decimal(evaluate(folded), precision);
}

}  // namespace herald::answer
