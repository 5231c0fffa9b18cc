#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace herald::answer {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
// Always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

enum class Function { Sin, Cos, Tan, Cot, Arcsin, Arccos, Arctan, Log, Sqrt, Exp };
enum class Constant { Pi, E };

std::string_view function_name(Function f);
std::optional<Function> function_from_name(std::string_view name);

// Expression tree. Number nodes hold the literal's exact value, never a
// binary floating approximation. Every Call node has exactly one argument,
// Negate one, and the binary kinds two.
struct Expr {
  enum class Kind { Number, Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  Rational value{0};
  herald::answer::Constant constant = herald::answer::Constant::Pi;
  Function function = Function::Sin;
  std::string name;
  std::vector<Expr> args;

  static Expr number(Rational v);
  static Expr constant_node(herald::answer::Constant c);
  static Expr variable(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr call(Function f, Expr arg);

  bool is_number() const { return kind == Kind::Number; }
  bool is_binary() const;

  friend bool operator==(const Expr& a, const Expr& b);
};

bool has_variables(const Expr& e);
void collect_variables(const Expr& e, std::set<std::string>& out);

// Renders with the minimal parentheses needed to parse back to an
// equivalent tree.
std::string render(const Expr& e);

// Renders an exact rational as "n" or "n/d".
std::string render(const Rational& r);

}  // namespace herald::answer
