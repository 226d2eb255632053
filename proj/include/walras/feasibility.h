#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "walras/linear_system.h"
#include "walras/market.h"

namespace walras {

struct Feasible {
  Pricing prices;  // one value per variable
};

struct Infeasible {
  // Indices of constraints that are jointly infeasible. Not necessarily
  // minimal; the whole system when no smaller certificate is available.
  std::vector<std::size_t> witness;
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;

inline bool IsFeasible(const FeasibilityResult& r) {
  return std::holds_alternative<Feasible>(r);
}

// Exact rational phase-1 simplex with Bland's rule. Variables are free unless
// a constraint bounds them below by a nonnegative constant. Infeasibility
// witnesses are the rows with a nonzero Farkas multiplier.
FeasibilityResult LpFeasibility(const LinearSystem& system);

struct FmOptions {
  int max_variables = 8;
  std::size_t max_constraints = 200'000;
};

enum class FmVerdict { kFeasible, kInfeasible };

// Fourier-Motzkin elimination in exact rationals. Throws BudgetExceeded over
// `max_variables` variables or when the working set grows past
// `max_constraints`.
FmVerdict FmEliminate(const LinearSystem& system, const FmOptions& options = {});

// The unit-demand pricing system written as difference constraints: for
// agent i holding {s}: p_j - p_s >= v_i(j) - v_i(s) for every item j != s and
// -p_s >= -v_i(s); for an agent holding nothing: p_j >= v_i(j) for every j;
// then p_j >= 0 / p_j = 0 as in BuildPricingSystem. Throws InvalidInput
// unless every agent is unit-demand and holds at most one item.
LinearSystem BuildDifferenceSystem(const Market& market,
                                   const Allocation& allocation);

// Solves a system whose constraints all have the form x_a - x_b >= c,
// x_a >= c or -x_a >= c (or equalities of those) by shortest paths from a
// ground vertex fixed at 0. Negative cycles give infeasibility, with the
// cycle's constraints as witness. Throws InvalidInput on any other shape.
FeasibilityResult SolveDifferenceSystem(const LinearSystem& system);

// SolveDifferenceSystem(BuildDifferenceSystem(market, allocation)).
FeasibilityResult DifferenceConstraintPricing(const Market& market,
                                              const Allocation& allocation);

}  // namespace walras
