#pragma once

#include "herald/answer/expr.hpp"
#include "herald/answer/value.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <string>

namespace herald::answer {

// Working precision for numeric evaluation, in decimal digits.
inline constexpr int kWorkingDigits = 110;
inline constexpr int kMaxRequestedDigits = 60;

using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<kWorkingDigits>,
                                               boost::multiprecision::et_off>;
using Bindings = std::map<std::string, BigFloat>;

BigFloat to_bigfloat(const Rational& r);

// Evaluates at working precision. Results whose magnitude is below the
// rounding noise of the largest intermediate are flushed to exact zero, so
// sin(pi) evaluates to 0 rather than 1e-110. Throws DomainError on undefined
// real operations and std::invalid_argument on an unbound variable.
BigFloat evaluate(const Expr& e, const Bindings& bindings = {});

// Rounds to `precision` significant digits, half away from zero.
Decimal round_to_decimal(const BigFloat& x, int precision);

// e must have no free variables. Correctly rounded to `precision`
// significant digits (1..60) except in cases closer to a rounding boundary
// than the working precision can resolve.
Decimal eval_numeric(const Expr& e, int precision);

}  // namespace herald::answer
