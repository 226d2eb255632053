#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "walras/feasibility.h"
#include "walras/linear_system.h"
#include "walras/market.h"
#include "walras/winner_determination.h"

namespace walras {

struct WeRejection {
  enum class Kind {
    kNegativePrice,         // p_item < 0
    kUnallocatedItemPriced, // item unallocated but p_item != 0
    kAgentPrefersBundle,    // agent strictly prefers `bundle` to its own
  };
  Kind kind;
  int agent = -1;
  int item = -1;
  ItemSet bundle;
  std::string message;  // 1-based, human readable
};

struct WeVerdict {
  std::optional<WeRejection> rejection;
  bool accepted() const { return !rejection.has_value(); }
};

// Checks both equilibrium conditions exactly. Agents' alternatives are all
// bundles of size <= DemandBound (enumerated in size, then lexicographic
// order, empty bundle first); the first strictly better one is reported.
// Throws BudgetExceeded when an agent needs more than `budget` bundles and
// InvalidInput on malformed allocation or prices.
WeVerdict VerifyWe(const Market& market, const Allocation& allocation,
                   const Pricing& prices,
                   std::uint64_t budget = kDefaultDemandBudget);

enum class PricingMethod { kDifferenceConstraints, kSimplex };

struct Equilibrium {
  Allocation allocation;
  Pricing prices;
  Amount welfare = 0;
  WdAlgorithm algorithm = WdAlgorithm::kBruteForce;
  PricingMethod method = PricingMethod::kSimplex;
};

struct NoEquilibrium {
  Allocation allocation;  // an optimal allocation
  Amount welfare = 0;
  WdAlgorithm algorithm = WdAlgorithm::kBruteForce;
  LinearSystem system;    // infeasible pricing system for `allocation`
  std::vector<std::size_t> witness;
};

using EquilibriumResult = std::variant<Equilibrium, NoEquilibrium>;

struct SolveOptions {
  WdOptions wd;
  PricingSystemOptions system;
  std::uint64_t verify_budget = kDefaultDemandBudget;
  // Forces a winner-determination algorithm instead of dispatching.
  std::optional<WdAlgorithm> algorithm;
};

// Optimal allocation, then prices for it: difference constraints for
// unit-demand markets, simplex on the pricing system otherwise. A returned
// equilibrium has already passed VerifyWe.
EquilibriumResult SolveWalrasian(const Market& market,
                                 const SolveOptions& options = {});

// Pricing for a given allocation by the default method for the market.
struct PricingOutcome {
  LinearSystem system;
  FeasibilityResult result;
  PricingMethod method;
};
PricingOutcome PriceAllocation(const Market& market,
                               const Allocation& allocation,
                               const SolveOptions& options = {});

}  // namespace walras
