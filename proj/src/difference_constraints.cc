#include <algorithm>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "walras/errors.h"
#include "walras/feasibility.h"
#include "walras/winner_determination.h"

namespace walras {

LinearSystem BuildDifferenceSystem(const Market& market,
                                   const Allocation& allocation) {
  CheckAllocation(market, allocation);
  if (!IsUnitDemandMarket(market)) {
    throw InvalidInput("difference-constraint pricing requires a unit-demand "
                       "market");
  }
  const int m = market.item_count;
  LinearSystem system;
  system.variable_count = m;
  auto add = [&](std::vector<std::pair<int, std::int64_t>> terms,
                 Relation relation, Amount bound, ConstraintOrigin origin) {
    system.constraints.push_back(
        LinearConstraint{std::move(terms), relation, bound, origin});
  };
  for (int i = 0; i < market.agent_count(); ++i) {
    const auto& values = std::get<UnitDemand>(market.valuations[i]).values;
    const ItemSet held = allocation.bundles[i];
    if (held.size() > 1) {
      throw InvalidInput("agent " + std::to_string(i + 1) +
                         " holds more than one item");
    }
    using Kind = ConstraintOrigin::Kind;
    if (held.empty()) {
      for (int j = 0; j < m; ++j) {
        add({{j, 1}}, Relation::kGreaterEqual, values[j],
            {Kind::kAgentBundle, i, ItemSet({j}), -1});
      }
      continue;
    }
    const int s = held.Items()[0];
    add({{s, -1}}, Relation::kGreaterEqual, -values[s],
        {Kind::kAgentBundle, i, ItemSet(), -1});
    for (int j = 0; j < m; ++j) {
      if (j == s) continue;
      std::vector<std::pair<int, std::int64_t>> terms =
          j < s ? std::vector<std::pair<int, std::int64_t>>{{j, 1}, {s, -1}}
                : std::vector<std::pair<int, std::int64_t>>{{s, -1}, {j, 1}};
      add(std::move(terms), Relation::kGreaterEqual, values[j] - values[s],
          {Kind::kAgentBundle, i, ItemSet({j}), -1});
    }
  }
  const ItemSet unallocated = allocation.Unallocated(m);
  for (int j = 0; j < m; ++j) {
    if (unallocated.contains(j)) {
      add({{j, 1}}, Relation::kEqual, 0,
          {ConstraintOrigin::Kind::kZeroPrice, -1, ItemSet(), j});
    } else {
      add({{j, 1}}, Relation::kGreaterEqual, 0,
          {ConstraintOrigin::Kind::kPriceSign, -1, ItemSet(), j});
    }
  }
  return system;
}

namespace {

// x_to - x_from <= weight.
struct Arc {
  int from;
  int to;
  Amount weight;
  std::size_t constraint;
};

}  // namespace

FeasibilityResult SolveDifferenceSystem(const LinearSystem& system) {
  CheckSystem(system);
  const int ground = system.variable_count;
  const int nodes = ground + 1;
  std::vector<Arc> arcs;
  for (std::size_t idx = 0; idx < system.constraints.size(); ++idx) {
    const LinearConstraint& c = system.constraints[idx];
    // Rewrite as x_a - x_b >= bound, with the ground vertex standing in for
    // a missing side.
    int a = ground, b = ground;
    if (c.terms.size() == 1 && (c.terms[0].second == 1 || c.terms[0].second == -1)) {
      (c.terms[0].second == 1 ? a : b) = c.terms[0].first;
    } else if (c.terms.size() == 2 &&
               c.terms[0].second == -c.terms[1].second &&
               (c.terms[0].second == 1 || c.terms[0].second == -1)) {
      a = c.terms[0].second == 1 ? c.terms[0].first : c.terms[1].first;
      b = c.terms[0].second == 1 ? c.terms[1].first : c.terms[0].first;
    } else {
      throw InvalidInput("constraint " + std::to_string(idx + 1) +
                         " is not a difference constraint");
    }
    // x_a - x_b >= bound  <=>  x_b - x_a <= -bound.
    arcs.push_back({a, b, -c.bound, idx});
    if (c.relation == Relation::kEqual) arcs.push_back({b, a, c.bound, idx});
  }

  // Bellman-Ford from an implicit source joined to every vertex by 0 arcs.
  std::vector<Amount> dist(nodes, 0);
  std::vector<int> via(nodes, -1);  // index into arcs
  int last_relaxed = -1;
  for (int pass = 0; pass < nodes; ++pass) {
    last_relaxed = -1;
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      const Arc& arc = arcs[e];
      if (dist[arc.from] + arc.weight < dist[arc.to]) {
        dist[arc.to] = dist[arc.from] + arc.weight;
        via[arc.to] = static_cast<int>(e);
        last_relaxed = arc.to;
      }
    }
    if (last_relaxed < 0) break;
  }

  if (last_relaxed >= 0) {
    // Still relaxing after |V| passes: walk back onto the negative cycle.
    int v = last_relaxed;
    for (int step = 0; step < nodes; ++step) v = arcs[via[v]].from;
    std::vector<std::size_t> witness;
    int u = v;
    do {
      const Arc& arc = arcs[via[u]];
      witness.push_back(arc.constraint);
      u = arc.from;
    } while (u != v);
    std::sort(witness.begin(), witness.end());
    witness.erase(std::unique(witness.begin(), witness.end()), witness.end());
    return Infeasible{std::move(witness)};
  }

  Pricing prices = Pricing::Zero(ground);
  for (int j = 0; j < ground; ++j) {
    prices[j] = static_cast<long>(dist[j] - dist[ground]);
  }
  if (const int bad = system.FirstViolated(prices.prices); bad >= 0) {
    throw std::logic_error("shortest-path prices violate constraint " +
                           std::to_string(bad + 1));
  }
  return Feasible{std::move(prices)};
}

FeasibilityResult DifferenceConstraintPricing(const Market& market,
                                              const Allocation& allocation) {
  return SolveDifferenceSystem(BuildDifferenceSystem(market, allocation));
}

}  // namespace walras
