#include "walras/equilibrium.h"

#include <stdexcept>

#include "walras/errors.h"

namespace walras {
namespace {

std::string OneBased(ItemSet bundle) {
  std::string out = "{";
  bundle.ForEach([&](int j) {
    if (out.size() > 1) out += ',';
    out += std::to_string(j + 1);
  });
  return out + "}";
}

}  // namespace

WeVerdict VerifyWe(const Market& market, const Allocation& allocation,
                   const Pricing& prices, std::uint64_t budget) {
  CheckAllocation(market, allocation);
  const int m = market.item_count;
  if (prices.size() != m) {
    throw InvalidInput("pricing has " + std::to_string(prices.size()) +
                       " entries for " + std::to_string(m) + " items");
  }
  using Kind = WeRejection::Kind;
  for (int j = 0; j < m; ++j) {
    if (sgn(prices[j]) < 0) {
      return {WeRejection{Kind::kNegativePrice, -1, j, ItemSet(),
                          "item " + std::to_string(j + 1) +
                              " has negative price " + ToString(prices[j])}};
    }
  }
  const ItemSet unallocated = allocation.Unallocated(m);
  for (int j = 0; j < m; ++j) {
    if (unallocated.contains(j) && sgn(prices[j]) != 0) {
      return {WeRejection{Kind::kUnallocatedItemPriced, -1, j, ItemSet(),
                          "unallocated item " + std::to_string(j + 1) +
                              " has nonzero price " + ToString(prices[j])}};
    }
  }
  for (int i = 0; i < market.agent_count(); ++i) {
    const Valuation& v = market.valuations[i];
    const ItemSet held = allocation.bundles[i];
    const Rational held_utility = Utility(v, held, prices);
    // With nonnegative prices no bundle beats its best subset of size
    // DemandBound(v).
    const int cap = std::min(DemandBound(v), m);
    const std::uint64_t count = CountSubsetsUpTo(m, cap);
    if (count > budget) {
      throw BudgetExceeded("verifying agent " + std::to_string(i + 1) +
                           " needs " + std::to_string(count) +
                           " bundles, budget is " + std::to_string(budget));
    }
    std::optional<WeRejection> rejection;
    ForEachSubsetUpTo(ItemSet::FirstN(m), cap, [&](ItemSet x) {
      const Rational u = Utility(v, x, prices);
      if (u > held_utility) {
        rejection = WeRejection{
            Kind::kAgentPrefersBundle, i, -1, x,
            "agent " + std::to_string(i + 1) + " prefers bundle " +
                OneBased(x) + " (utility " + ToString(u) + ") to " +
                OneBased(held) + " (utility " + ToString(held_utility) + ")"};
        return false;
      }
      return true;
    });
    if (rejection) return {rejection};
  }
  return {};
}

PricingOutcome PriceAllocation(const Market& market,
                               const Allocation& allocation,
                               const SolveOptions& options) {
  CheckAllocation(market, allocation);
  bool single_items = true;
  for (ItemSet b : allocation.bundles) single_items &= b.size() <= 1;
  if (IsUnitDemandMarket(market) && single_items) {
    LinearSystem system = BuildDifferenceSystem(market, allocation);
    FeasibilityResult result = SolveDifferenceSystem(system);
    return {std::move(system), std::move(result),
            PricingMethod::kDifferenceConstraints};
  }
  LinearSystem system = BuildPricingSystem(
      market, allocation, MarketDemandBound(market), options.system);
  FeasibilityResult result = LpFeasibility(system);
  return {std::move(system), std::move(result), PricingMethod::kSimplex};
}

EquilibriumResult SolveWalrasian(const Market& market,
                                 const SolveOptions& options) {
  const WdResult wd = options.algorithm
                          ? WdRun(market, *options.algorithm, options.wd)
                          : WdDispatch(market, options.wd);
  PricingOutcome priced = PriceAllocation(market, wd.allocation, options);
  if (auto* feasible = std::get_if<Feasible>(&priced.result)) {
    const WeVerdict verdict = VerifyWe(market, wd.allocation, feasible->prices,
                                       options.verify_budget);
    if (!verdict.accepted()) {
      throw std::logic_error("pricing solver returned prices that fail "
                             "verification: " +
                             verdict.rejection->message);
    }
    return Equilibrium{wd.allocation, std::move(feasible->prices), wd.welfare,
                       wd.algorithm, priced.method};
  }
  return NoEquilibrium{wd.allocation, wd.welfare, wd.algorithm,
                       std::move(priced.system),
                       std::get<Infeasible>(priced.result).witness};
}

}  // namespace walras
