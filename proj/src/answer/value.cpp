#include "herald/answer/value.hpp"

#include <stdexcept>

namespace herald::answer {

namespace {

BigInt pow10_int(long n) { return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(n)); }

long digit_count(const BigInt& n) {
  if (n == 0) return 1;
  return static_cast<long>(n.str().size()) - (n < 0 ? 1 : 0);
}

// floor(n * 10^scale / d) and the remainder test for half-away rounding.
BigInt scaled_quotient(const BigInt& n, const BigInt& d, long scale, bool& round_up) {
  BigInt num = n;
  BigInt den = d;
  if (scale >= 0) {
    num *= pow10_int(scale);
  } else {
    den *= pow10_int(-scale);
  }
  BigInt q;
  BigInt r;
  boost::multiprecision::divide_qr(num, den, q, r);
  round_up = 2 * r >= den;
  return q;
}

}  // namespace

Decimal Decimal::from_rational(const Rational& r, int precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  Decimal d;
  d.precision = precision;
  if (r == 0) return d;
  const bool negative = r < 0;
  const BigInt n = boost::multiprecision::abs(numerator(r));
  const BigInt den = denominator(r);

  const BigInt lo = pow10_int(precision - 1);
  const BigInt hi = pow10_int(precision);
  long scale = precision - (digit_count(n) - digit_count(den));
  bool round_up = false;
  BigInt q = scaled_quotient(n, den, scale, round_up);
  while (q < lo) {
    ++scale;
    q = scaled_quotient(n, den, scale, round_up);
  }
  while (q >= hi) {
    --scale;
    q = scaled_quotient(n, den, scale, round_up);
  }
  if (round_up) {
    ++q;
    if (q == hi) {
      q /= 10;
      --scale;
    }
  }
  d.significand = negative ? BigInt(-q) : q;
  d.exponent = -scale;
  return d;
}

Decimal Decimal::from_string(const std::string& text, int precision) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw std::invalid_argument("not a decimal: " + text);
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    scale += std::stol(text.substr(i + 1));
    i = text.size();
  }
  if (i != text.size()) throw std::invalid_argument("not a decimal: " + text);
  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  Rational value{BigInt(first == std::string::npos ? std::string("0") : digits.substr(first))};
  if (scale >= 0) {
    value *= pow10_int(scale);
  } else {
    value /= pow10_int(-scale);
  }
  return from_rational(negative ? Rational(-value) : value, precision);
}

Rational Decimal::to_rational() const {
  Rational v(significand);
  if (exponent >= 0) return v * pow10_int(exponent);
  return v / pow10_int(-exponent);
}

std::string render(const Decimal& d) {
  if (d.is_zero()) return "0";
  const bool negative = d.significand < 0;
  const std::string digits = BigInt(boost::multiprecision::abs(d.significand)).str();
  const long len = static_cast<long>(digits.size());
  const long point = len + d.exponent;  // digits before the decimal point
  std::string body;
  if (d.exponent >= 0 && point <= 21) {
    body = digits + std::string(static_cast<std::size_t>(d.exponent), '0');
  } else if (point > 0 && point < len) {
    body = digits.substr(0, static_cast<std::size_t>(point)) + "." +
           digits.substr(static_cast<std::size_t>(point));
  } else if (point <= 0 && point > -7) {
    body = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
  } else {
    body = digits.substr(0, 1);
    if (len > 1) body += "." + digits.substr(1);
    const long e = point - 1;
    body += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  }
  return negative ? "-" + body : body;
}

std::string render(const AnswerValue& v) {
  switch (v.kind()) {
    case AnswerValue::Kind::Exact:
      return render(v.as_exact());
    case AnswerValue::Kind::Decimal:
      return render(v.as_decimal());
    case AnswerValue::Kind::Symbolic:
      return render(v.as_symbolic());
    case AnswerValue::Kind::Unparsed:
      return v.as_unparsed();
  }
  return {};
}

std::string_view kind_name(AnswerValue::Kind k) {
  switch (k) {
    case AnswerValue::Kind::Exact: return "exact";
    case AnswerValue::Kind::Decimal: return "decimal";
    case AnswerValue::Kind::Symbolic: return "symbolic";
    case AnswerValue::Kind::Unparsed: return "unparsed";
  }
  return "unknown";
}

}  // namespace herald::answer
