#pragma once

#include "herald/answer/value.hpp"
#include "herald/common/roles.hpp"
#include "herald/preprocess/problem.hpp"

#include <string>
#include <vector>

namespace herald::solvers {

struct ToolCall {
  std::string action;
  double duration_ms = 0;
  bool success = false;
};

struct SolverVerdict {
  std::string solver_id;
  SolverRole role = SolverRole::Router;
  std::string raw_answer;
  answer::AnswerValue answer;  // normalize(raw_answer)
  double raw_score = 0;        // f before temperature scaling
  double latency_ms = 0;
  std::vector<ToolCall> tool_trace;
  // Intermediate (expression, value) pairs when the solver reports them.
  std::vector<preprocess::ReferenceStep> steps;

  bool used_tool() const { return !tool_trace.empty(); }
};

}  // namespace herald::solvers
