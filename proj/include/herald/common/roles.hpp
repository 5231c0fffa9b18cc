#pragma once

#include <optional>
#include <string_view>

namespace herald {

// The part a solver plays in the ensemble. Index order is the fallback
// tie-break order and the regime order of the router.
enum class SolverRole { ToolIntegrated = 0, AbstractReasoning = 1, Router = 2 };

inline constexpr int kSolverCount = 3;

std::string_view role_name(SolverRole r);
std::optional<SolverRole> role_from_name(std::string_view name);

}  // namespace herald
