#pragma once

#include "herald/preprocess/problem.hpp"

#include <string>
#include <string_view>

namespace herald::solvers {

inline constexpr std::string_view kStepByStep = "Reason step-by-step";
inline constexpr std::string_view kBoxedInstruction = "Put your final answer within \\boxed{}.";

// statement + "\n" + "Reason step-by-step" + "\n" + boxed instruction.
// Throws std::invalid_argument when the statement already ends with the
// template.
std::string enhance_prompt(std::string_view statement);
std::string enhance_prompt(const preprocess::Problem& problem);

bool is_enhanced(std::string_view text);

}  // namespace herald::solvers
