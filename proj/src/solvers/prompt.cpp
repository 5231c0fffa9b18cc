#include "herald/solvers/prompt.hpp"

#include <stdexcept>

namespace herald::solvers {

namespace {

std::string suffix() {
  std::string s = "\n";
  s += kStepByStep;
  s += "\n";
  s += kBoxedInstruction;
  return s;
}

}  // namespace

bool is_enhanced(std::string_view text) {
  const std::string tail = suffix();
  return text.size() >= tail.size() && text.substr(text.size() - tail.size()) == tail;
}

std::string enhance_prompt(std::string_view statement) {
  if (is_enhanced(statement)) throw std::invalid_argument("prompt is already enhanced");
  return std::string(statement) + suffix();
}

std::string enhance_prompt(const preprocess::Problem& problem) { return enhance_prompt(problem.primary_statement()); }

}  // namespace herald::solvers
