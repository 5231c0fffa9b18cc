#pragma once

#include "herald/answer/expr.hpp"

#include <string>
#include <variant>

namespace herald::answer {

inline constexpr int kAnswerDigits = 10;

// significand * 10^exponent with exactly `precision` significant digits in
// the significand (zero is stored as 0 * 10^0).
struct Decimal {
  BigInt significand{0};
  long exponent = 0;
  int precision = kAnswerDigits;

  // Rounds an exact value half away from zero.
  static Decimal from_rational(const Rational& r, int precision);
  // Parses a plain or scientific decimal string, then rounds it.
  static Decimal from_string(const std::string& text, int precision);

  Rational to_rational() const;
  bool is_zero() const { return significand == 0; }

  friend bool operator==(const Decimal&, const Decimal&) = default;
};

// Plain positional notation for moderate exponents, "d.ddde+N" otherwise.
std::string render(const Decimal& d);

struct Unparsed {
  std::string raw;
  friend bool operator==(const Unparsed&, const Unparsed&) = default;
};

// A normalized answer: an exact rational, a 10-digit decimal, a symbolic
// expression, or the raw text when parsing failed.
class AnswerValue {
 public:
  enum class Kind { Exact, Decimal, Symbolic, Unparsed };

  AnswerValue() : value_(Unparsed{}) {}
  static AnswerValue exact(Rational r) { return AnswerValue(Storage(std::move(r))); }
  static AnswerValue decimal(Decimal d) { return AnswerValue(Storage(std::move(d))); }
  static AnswerValue symbolic(Expr e) { return AnswerValue(Storage(std::move(e))); }
  static AnswerValue unparsed(std::string raw) { return AnswerValue(Storage(Unparsed{std::move(raw)})); }

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_exact() const { return kind() == Kind::Exact; }
  bool is_decimal() const { return kind() == Kind::Decimal; }
  bool is_symbolic() const { return kind() == Kind::Symbolic; }
  bool is_unparsed() const { return kind() == Kind::Unparsed; }

  const Rational& as_exact() const { return std::get<Rational>(value_); }
  const Decimal& as_decimal() const { return std::get<Decimal>(value_); }
  const Expr& as_symbolic() const { return std::get<Expr>(value_); }
  const std::string& as_unparsed() const { return std::get<Unparsed>(value_).raw; }

  friend bool operator==(const AnswerValue& a, const AnswerValue& b) { return a.value_ == b.value_; }

 private:
  using Storage = std::variant<Rational, Decimal, Expr, Unparsed>;
  explicit AnswerValue(Storage s) : value_(std::move(s)) {}

  Storage value_;
};

std::string render(const AnswerValue& v);
std::string_view kind_name(AnswerValue::Kind k);

}  // namespace herald::answer
