#include "walras/linear_system.h"

#include <algorithm>
#include <map>
#include <variant>

#include "walras/errors.h"

namespace walras {
namespace {

Rational Lhs(const LinearConstraint& c, const std::vector<Rational>& point) {
  Rational total = 0;
  for (const auto& [var, coef] : c.terms) {
    total += Rational(static_cast<long>(coef)) * point[var];
  }
  return total;
}

}  // namespace

int LinearSystem::FirstViolated(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != variable_count) {
    throw InvalidInput("point has " + std::to_string(point.size()) +
                       " coordinates, system has " +
                       std::to_string(variable_count) + " variables");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const LinearConstraint& c = constraints[i];
    const Rational lhs = Lhs(c, point);
    const Rational bound(static_cast<long>(c.bound));
    const bool ok =
        c.relation == Relation::kEqual ? lhs == bound : lhs >= bound;
    if (!ok) return static_cast<int>(i);
  }
  return -1;
}

bool LinearSystem::IsSatisfiedBy(const std::vector<Rational>& point) const {
  return FirstViolated(point) < 0;
}

LinearSystem LinearSystem::Subsystem(
    const std::vector<std::size_t>& indices) const {
  LinearSystem sub;
  sub.variable_count = variable_count;
  for (std::size_t i : indices) sub.constraints.push_back(constraints.at(i));
  return sub;
}

void CheckSystem(const LinearSystem& system) {
  if (system.variable_count < 0) {
    throw InvalidInput("negative variable count");
  }
  for (std::size_t i = 0; i < system.constraints.size(); ++i) {
    const LinearConstraint& c = system.constraints[i];
    const std::string where = "constraint " + std::to_string(i + 1);
    if (c.terms.empty()) throw InvalidInput(where + " has no terms");
    int last = -1;
    for (const auto& [var, coef] : c.terms) {
      if (var < 0 || var >= system.variable_count) {
        throw InvalidInput(where + " references variable " +
                           std::to_string(var) + " out of range");
      }
      if (var <= last) {
        throw InvalidInput(where + " has unsorted or repeated variables");
      }
      if (coef == 0) throw InvalidInput(where + " has a zero coefficient");
      last = var;
    }
  }
}

std::string FormatConstraint(const LinearConstraint& c) {
  std::string out;
  for (const auto& [var, coef] : c.terms) {
    if (!out.empty()) out += ' ';
    out += (coef > 0 ? "+" : "") + std::to_string(coef) + " p" +
           std::to_string(var + 1);
  }
  out += c.relation == Relation::kEqual ? " = " : " >= ";
  out += std::to_string(c.bound);
  switch (c.origin.kind) {
    case ConstraintOrigin::Kind::kAgentBundle: {
      std::string bundle;
      c.origin.bundle.ForEach([&](int j) {
        bundle += (bundle.empty() ? "" : ",") + std::to_string(j + 1);
      });
      out += "  # agent " + std::to_string(c.origin.agent + 1) + " vs {" +
             bundle + "}";
      break;
    }
    case ConstraintOrigin::Kind::kPriceSign:
      out += "  # price sign item " + std::to_string(c.origin.item + 1);
      break;
    case ConstraintOrigin::Kind::kZeroPrice:
      out += "  # unallocated item " + std::to_string(c.origin.item + 1);
      break;
    case ConstraintOrigin::Kind::kOther:
      break;
  }
  return out;
}

int MarketDemandBound(const Market& market) {
  int k = 1;
  for (const Valuation& v : market.valuations) {
    k = std::max(k, DemandBound(v));
  }
  return std::min(k, market.item_count);
}

namespace {

// Bundles whose constraints can bind for this valuation.
std::vector<ItemSet> CandidateBundles(const Valuation& v, int item_count,
                                      int k_cap, bool prune,
                                      std::uint64_t* remaining_budget) {
  std::vector<ItemSet> bundles{ItemSet()};
  auto charge = [&](std::uint64_t count) {
    if (count > *remaining_budget) {
      throw BudgetExceeded("pricing system exceeds the bundle budget");
    }
    *remaining_budget -= count;
  };
  if (prune) {
    if (const auto* s = std::get_if<SingleMinded>(&v)) {
      if (s->value > 0 && s->bundle.size() <= k_cap) bundles.push_back(s->bundle);
      charge(bundles.size());
      return bundles;
    }
    if (const auto* t = std::get_if<KDemandTable>(&v)) {
      for (const auto& [key, value] : t->entries) {
        if (value > 0 && key.size() <= k_cap) bundles.push_back(key);
      }
      charge(bundles.size());
      return bundles;
    }
    const ItemSet support = Support(v);
    const int cap = std::min(k_cap, DemandBound(v));
    charge(CountSubsetsUpTo(support.size(), cap));
    bundles.clear();
    ForEachSubsetUpTo(support, cap, [&](ItemSet b) {
      bundles.push_back(b);
      return true;
    });
    return bundles;
  }
  charge(CountSubsetsUpTo(item_count, k_cap));
  bundles.clear();
  ForEachSubsetUpTo(ItemSet::FirstN(item_count), k_cap, [&](ItemSet b) {
    bundles.push_back(b);
    return true;
  });
  return bundles;
}

}  // namespace

LinearSystem BuildPricingSystem(const Market& market,
                                const Allocation& allocation, int k_cap,
                                const PricingSystemOptions& options) {
  CheckAllocation(market, allocation);
  const int m = market.item_count;
  if (k_cap < 0 || k_cap > m) {
    throw InvalidInput("k_cap " + std::to_string(k_cap) + " outside [0, " +
                       std::to_string(m) + "]");
  }
  LinearSystem system;
  system.variable_count = m;
  std::uint64_t budget = options.bundle_budget;
  for (int i = 0; i < market.agent_count(); ++i) {
    const Valuation& v = market.valuations[i];
    const ItemSet held = allocation.bundles[i];
    const Amount held_value = Eval(v, held);
    for (ItemSet x : CandidateBundles(v, m, k_cap, options.prune, &budget)) {
      if (x == held) continue;
      LinearConstraint c;
      for (int j = 0; j < m; ++j) {
        const bool in_x = x.contains(j);
        const bool in_held = held.contains(j);
        if (in_x && !in_held) c.terms.emplace_back(j, 1);
        if (in_held && !in_x) c.terms.emplace_back(j, -1);
      }
      c.relation = Relation::kGreaterEqual;
      c.bound = Eval(v, x) - held_value;
      c.origin = {ConstraintOrigin::Kind::kAgentBundle, i, x, -1};
      system.constraints.push_back(std::move(c));
    }
  }
  const ItemSet unallocated = allocation.Unallocated(m);
  for (int j = 0; j < m; ++j) {
    LinearConstraint c;
    c.terms.emplace_back(j, 1);
    c.bound = 0;
    if (unallocated.contains(j)) {
      c.relation = Relation::kEqual;
      c.origin = {ConstraintOrigin::Kind::kZeroPrice, -1, ItemSet(), j};
    } else {
      c.relation = Relation::kGreaterEqual;
      c.origin = {ConstraintOrigin::Kind::kPriceSign, -1, ItemSet(), j};
    }
    system.constraints.push_back(std::move(c));
  }
  return system;
}

}  // namespace walras
