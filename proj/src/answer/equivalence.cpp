#include "herald/answer/equivalence.hpp"

#include "herald/answer/errors.hpp"
#include "herald/answer/numeric.hpp"
#include "herald/answer/simplify.hpp"
#include "herald/common/random.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <variant>

namespace herald::answer {

namespace {

namespace mp = boost::multiprecision;

// The decimal value the user wrote for eps, e.g. 1e-6 -> 1/1000000, rather
// than the nearest binary double.
Rational eps_as_rational(double eps) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, eps);
  return Decimal::from_string(std::string(buf, res.ptr), 40).to_rational();
}

using Numeric = std::variant<Rational, BigFloat>;

Numeric numeric_value(const AnswerValue& v, const Bindings& bindings) {
  switch (v.kind()) {
    case AnswerValue::Kind::Exact:
      return v.as_exact();
    case AnswerValue::Kind::Decimal:
      return v.as_decimal().to_rational();
    case AnswerValue::Kind::Symbolic: {
      const Expr& e = v.as_symbolic();
      if (!has_variables(e)) {
        Expr folded = fold_constants(e);
        if (folded.is_number()) return folded.value;
        return evaluate(folded);
      }
      return evaluate(e, bindings);
    }
    case AnswerValue::Kind::Unparsed:
      break;
  }
  throw std::logic_error("unparsed value has no numeric value");
}

BigFloat as_float(const Numeric& n) {
  if (const auto* r = std::get_if<Rational>(&n)) return to_bigfloat(*r);
  return std::get<BigFloat>(n);
}

bool close(const Numeric& a, const Numeric& b, const Rational& eps) {
  const auto* ra = std::get_if<Rational>(&a);
  const auto* rb = std::get_if<Rational>(&b);
  if (ra && rb) {
    Rational scale = std::max({Rational(mp::abs(*ra)), Rational(mp::abs(*rb)), Rational(1)});
    return mp::abs(*ra - *rb) < eps * scale;
  }
  const BigFloat fa = as_float(a);
  const BigFloat fb = as_float(b);
  const BigFloat scale = std::max({BigFloat(mp::abs(fa)), BigFloat(mp::abs(fb)), BigFloat(1)});
  return mp::abs(fa - fb) < to_bigfloat(eps) * scale;
}

bool sampled_close(const AnswerValue& a, const AnswerValue& b, const Rational& eps) {
  std::set<std::string> names;
  if (a.is_symbolic()) collect_variables(a.as_symbolic(), names);
  if (b.is_symbolic()) collect_variables(b.as_symbolic(), names);

  Rng rng(kSymbolicSampleSeed);
  int valid = 0;
  const int max_attempts = kSymbolicSamplePoints * 10;
  for (int attempt = 0; attempt < max_attempts && valid < kSymbolicSamplePoints; ++attempt) {
    Bindings bindings;
    for (const auto& name : names) bindings[name] = BigFloat(rng.uniform(-2.0, 2.0));
    Numeric va;
    Numeric vb;
    try {
      va = numeric_value(a, bindings);
      vb = numeric_value(b, bindings);
    } catch (const DomainError&) {
      continue;  // pole or outside the domain
    }
    if (!close(va, vb, eps)) return false;
    ++valid;
  }
  if (valid > 0) return true;
  // No admissible point in [-2, 2]: fall back to structural identity.
  if (!a.is_symbolic() || !b.is_symbolic()) return false;
  return fold_constants(a.as_symbolic()) == fold_constants(b.as_symbolic());
}

bool has_free_variables(const AnswerValue& v) { return v.is_symbolic() && has_variables(v.as_symbolic()); }

}  // namespace

bool within_tolerance(const AnswerValue& a, const AnswerValue& b, double eps) {
  if (a.is_unparsed() || b.is_unparsed()) {
    return a.is_unparsed() && b.is_unparsed() && a.as_unparsed() == b.as_unparsed();
  }
  const Rational eps_r = eps_as_rational(eps);
  try {
    if (has_free_variables(a) || has_free_variables(b)) {
      if (!a.is_symbolic() || !b.is_symbolic()) {
        // A constant can only match an expression whose variables cancel.
        return sampled_close(a.is_symbolic() ? a : b, a.is_symbolic() ? b : a, eps_r);
      }
      return sampled_close(a, b, eps_r);
    }
    return close(numeric_value(a, {}), numeric_value(b, {}), eps_r);
  } catch (const DomainError&) {
    return false;
  }
}

bool equivalent(const AnswerValue& a, const AnswerValue& b, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps_equiv must be > 0");
  if (a.is_exact() && b.is_exact()) return a.as_exact() == b.as_exact();
  return within_tolerance(a, b, eps);
}

}  // namespace herald::answer
