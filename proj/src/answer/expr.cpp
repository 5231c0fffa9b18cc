#include "herald/answer/expr.hpp"

#include <array>
#include <utility>

namespace herald::answer {

namespace {

struct FunctionName {
  std::string_view name;
  Function function;
};

// Canonical names first; aliases (including the Russian-school spellings)
// after.
constexpr std::array<FunctionName, 14> kFunctionNames{{
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"tan", Function::Tan},
    {"cot", Function::Cot},
    {"arcsin", Function::Arcsin},
    {"arccos", Function::Arccos},
    {"arctan", Function::Arctan},
    {"log", Function::Log},
    {"sqrt", Function::Sqrt},
    {"exp", Function::Exp},
    {"ln", Function::Log},
    {"tg", Function::Tan},
    {"ctg", Function::Cot},
    {"arctg", Function::Arctan},
}};

enum Precedence { kAdditive = 1, kMultiplicative = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return kAdditive;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return kMultiplicative;
    case Expr::Kind::Negate:
      return kUnary;
    case Expr::Kind::Pow:
      return kPower;
    case Expr::Kind::Number:
      // Negative and fractional literals read as compound expressions.
      if (e.value < 0) return kUnary;
      if (denominator(e.value) != 1) return kMultiplicative;
      return kAtom;
    default:
      return kAtom;
  }
}

std::string wrap(const Expr& e, bool parens) {
  std::string s = render(e);
  return parens ? "(" + s + ")" : s;
}

}  // namespace

std::string_view function_name(Function f) {
  for (const auto& entry : kFunctionNames) {
    if (entry.function == f) return entry.name;
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
  for (const auto& entry : kFunctionNames) {
    if (entry.name == name) return entry.function;
  }
  return std::nullopt;
}

Expr Expr::number(Rational v) {
  Expr e;
  e.kind = Kind::Number;
  e.value = std::move(v);
  return e;
}

Expr Expr::constant_node(herald::answer::Constant c) {
  Expr e;
  e.kind = Kind::Constant;
  e.constant = c;
  return e;
}

Expr Expr::variable(std::string name) {
  Expr e;
  e.kind = Kind::Variable;
  e.name = std::move(name);
  return e;
}

Expr Expr::negate(Expr operand) {
  Expr e;
  e.kind = Kind::Negate;
  e.args.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(Function f, Expr arg) {
  Expr e;
  e.kind = Kind::Call;
  e.function = f;
  e.args.push_back(std::move(arg));
  return e;
}

bool Expr::is_binary() const {
  return kind == Kind::Add || kind == Kind::Sub || kind == Kind::Mul || kind == Kind::Div ||
         kind == Kind::Pow;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      return a.value == b.value;
    case Expr::Kind::Constant:
      return a.constant == b.constant;
    case Expr::Kind::Variable:
      return a.name == b.name;
    case Expr::Kind::Call:
      if (a.function != b.function) return false;
      break;
    default:
      break;
  }
  return a.args == b.args;
}

bool has_variables(const Expr& e) {
  if (e.kind == Expr::Kind::Variable) return true;
  for (const auto& child : e.args) {
    if (has_variables(child)) return true;
  }
  return false;
}

void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Variable) out.insert(e.name);
  for (const auto& child : e.args) collect_variables(child, out);
}

std::string render(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return render(e.value);
    case Expr::Kind::Constant:
      return e.constant == Constant::Pi ? "pi" : "e";
    case Expr::Kind::Variable:
      return e.name;
    case Expr::Kind::Call:
      return std::string(function_name(e.function)) + "(" + render(e.args[0]) + ")";
    case Expr::Kind::Negate:
      return "-" + wrap(e.args[0], precedence(e.args[0]) < kUnary ||
                                       (e.args[0].is_number() && e.args[0].value < 0));
    case Expr::Kind::Add:
      return wrap(e.args[0], precedence(e.args[0]) < kAdditive) + " + " +
             wrap(e.args[1], precedence(e.args[1]) < kAdditive);
    case Expr::Kind::Sub:
      return wrap(e.args[0], precedence(e.args[0]) < kAdditive) + " - " +
             wrap(e.args[1], precedence(e.args[1]) <= kAdditive);
    case Expr::Kind::Mul:
      return wrap(e.args[0], precedence(e.args[0]) < kMultiplicative) + "*" +
             wrap(e.args[1], precedence(e.args[1]) <= kMultiplicative);
    case Expr::Kind::Div:
      return wrap(e.args[0], precedence(e.args[0]) < kMultiplicative) + "/" +
             wrap(e.args[1], precedence(e.args[1]) <= kMultiplicative);
    case Expr::Kind::Pow:
      return wrap(e.args[0], precedence(e.args[0]) <= kPower) + "^" +
             wrap(e.args[1], precedence(e.args[1]) < kUnary);
  }
  return {};
}

}  // namespace herald::answer
