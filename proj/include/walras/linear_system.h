#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "walras/item_set.h"
#include "walras/market.h"
#include "walras/rational.h"

namespace walras {

enum class Relation { kGreaterEqual, kEqual };

// Where a constraint came from, for diagnostics and witnesses.
struct ConstraintOrigin {
  enum class Kind {
    kAgentBundle,  // agent prefers its bundle to `bundle`
    kPriceSign,    // p_item >= 0 for an allocated item
    kZeroPrice,    // p_item = 0 for an unallocated item
    kOther,
  };
  Kind kind = Kind::kOther;
  int agent = -1;
  ItemSet bundle;
  int item = -1;
};

// sum(coefficient * x_variable) relation bound. Terms are sorted by variable
// and have nonzero coefficients.
struct LinearConstraint {
  std::vector<std::pair<int, std::int64_t>> terms;
  Relation relation = Relation::kGreaterEqual;
  std::int64_t bound = 0;
  ConstraintOrigin origin;
};

struct LinearSystem {
  int variable_count = 0;
  std::vector<LinearConstraint> constraints;

  // Exact check of every constraint at `point` (one value per variable).
  bool IsSatisfiedBy(const std::vector<Rational>& point) const;
  // Index of the first violated constraint, or -1.
  int FirstViolated(const std::vector<Rational>& point) const;
  // The subsystem made of the listed constraints.
  LinearSystem Subsystem(const std::vector<std::size_t>& indices) const;
};

// Throws InvalidInput if a constraint has no terms, an out-of-range or
// repeated variable, or a zero coefficient.
void CheckSystem(const LinearSystem& system);

// "+1 x1 -1 x3 >= -2" with 1-based variables; origin appended as a comment.
std::string FormatConstraint(const LinearConstraint& constraint);

struct PricingSystemOptions {
  // Keep only the bundles that can bind for each valuation class (see
  // BuildPricingSystem); false enumerates every bundle of size <= k_cap.
  bool prune = true;
  // Maximum agent-bundle pairs enumerated.
  std::uint64_t bundle_budget = std::uint64_t{1} << 20;
};

// Largest DemandBound over the agents, capped at the item count.
int MarketDemandBound(const Market& market);

// Constraints under which `allocation` with prices p is a Walrasian
// equilibrium: for each agent i and bundle X with |X| <= k_cap,
// p(X) - p(S_i) >= v_i(X) - v_i(S_i) (X = {} included), then p_j >= 0 for
// allocated items and p_j = 0 for unallocated ones, in item order.
//
// With pruning, bundles are restricted to subsets of the agent's support of
// size at most its DemandBound; single-minded agents contribute only their
// target bundle and k-demand tables only their positive entries. Every
// dropped constraint is implied by a kept one together with p >= 0.
LinearSystem BuildPricingSystem(const Market& market,
                                const Allocation& allocation, int k_cap,
                                const PricingSystemOptions& options = {});

}  // namespace walras
