#include "herald/common/roles.hpp"

namespace herald {

std::string_view role_name(SolverRole r) {
  switch (r) {
    case SolverRole::ToolIntegrated: return "tool-integrated";
    case SolverRole::AbstractReasoning: return "abstract-reasoning";
    case SolverRole::Router: return "router";
  }
  return "unknown";
}

std::optional<SolverRole> role_from_name(std::string_view name) {
  if (name == "tool-integrated") return SolverRole::ToolIntegrated;
  if (name == "abstract-reasoning") return SolverRole::AbstractReasoning;
  if (name == "router") return SolverRole::Router;
  return std::nullopt;
}

}  // namespace herald
