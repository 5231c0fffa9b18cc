#pragma once

#include "herald/preprocess/problem.hpp"
#include "herald/solvers/spec.hpp"
#include "herald/solvers/verdict.hpp"

#include <cstdint>

namespace herald::solvers {

// Deterministic test double. Draws from an Rng seeded by (seed, spec id,
// problem id): answers the reference with the profile's accuracy for the
// problem's category, otherwise the reference plus a non-zero integer in
// [-9, 9]. The raw answer ends in \boxed{...}. Tool-integrated solvers
// report one to three tool calls.
SolverVerdict solve_simulated(const SolverSpec& spec, const preprocess::Problem& problem, std::uint64_t seed);

}  // namespace herald::solvers
