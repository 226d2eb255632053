#include "walras/winner_determination.h"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "walras/errors.h"
#include "walras/matching.h"

namespace walras {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t SaturatingPow(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > kSaturated / base) return kSaturated;
    result *= base;
  }
  return result;
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// Recomputes the welfare from scratch; a mismatch is a solver bug.
WdResult Finish(const Market& market, Allocation allocation, Amount welfare,
                WdAlgorithm algorithm) {
  const Amount recomputed = SocialWelfare(market, allocation);
  if (recomputed != welfare) {
    throw std::logic_error(std::string(AlgorithmTag(algorithm)) +
                           " reported welfare " + std::to_string(welfare) +
                           " but its allocation is worth " +
                           std::to_string(recomputed));
  }
  return WdResult{std::move(allocation), welfare, algorithm};
}

void RequireValid(const Market& market) { ValidateOrThrow(market); }

class BruteForceSearch {
 public:
  BruteForceSearch(const Market& market, bool use_tables)
      : market_(market),
        n_(market.agent_count()),
        m_(market.item_count),
        bundles_(n_ + 1),
        assignment_(m_, 0) {
    if (use_tables) {
      for (const Valuation& v : market.valuations) {
        tables_.push_back(ValueTable(v, m_, kSaturated));
      }
    }
  }

  Allocation Run(Amount* welfare) {
    Visit(0);
    Allocation allocation = Allocation::Empty(n_);
    for (int j = 0; j < m_; ++j) {
      if (best_assignment_[j] > 0) {
        allocation.bundles[best_assignment_[j] - 1] =
            allocation.bundles[best_assignment_[j] - 1].With(j);
      }
    }
    *welfare = best_welfare_;
    return allocation;
  }

 private:
  Amount Value(int agent, ItemSet bundle) const {
    if (!tables_.empty()) return tables_[agent][bundle.mask()];
    return Eval(market_.valuations[agent], bundle);
  }

  // Options are tried in increasing order item by item, so leaves arrive in
  // lexicographic order of the assignment vector.
  void Visit(int item) {
    if (item == m_) {
      Amount total = 0;
      for (int i = 0; i < n_; ++i) total += Value(i, bundles_[i + 1]);
      if (best_assignment_.empty() || total > best_welfare_) {
        best_welfare_ = total;
        best_assignment_ = assignment_;
      }
      return;
    }
    for (int owner = 0; owner <= n_; ++owner) {
      assignment_[item] = owner;
      const ItemSet saved = bundles_[owner];
      bundles_[owner] = saved.With(item);
      Visit(item + 1);
      bundles_[owner] = saved;
    }
  }

  const Market& market_;
  int n_;
  int m_;
  std::vector<std::vector<Amount>> tables_;
  std::vector<ItemSet> bundles_;  // index 0 is the unallocated pool
  std::vector<int> assignment_;
  std::vector<int> best_assignment_;
  Amount best_welfare_ = 0;
};

}  // namespace

std::string_view AlgorithmTag(WdAlgorithm algorithm) {
  switch (algorithm) {
    case WdAlgorithm::kBruteForce: return "bruteforce";
    case WdAlgorithm::kUnitDemandMatching: return "unit-demand-matching";
    case WdAlgorithm::kPairMatching: return "pair-matching";
    case WdAlgorithm::kFewItemsDp: return "few-items-dp";
    case WdAlgorithm::kFewAgentsEnum: return "few-agents-enum";
  }
  return "unknown";
}

std::optional<WdAlgorithm> AlgorithmFromTag(std::string_view tag) {
  for (WdAlgorithm a :
       {WdAlgorithm::kBruteForce, WdAlgorithm::kUnitDemandMatching,
        WdAlgorithm::kPairMatching, WdAlgorithm::kFewItemsDp,
        WdAlgorithm::kFewAgentsEnum}) {
    if (AlgorithmTag(a) == tag) return a;
  }
  return std::nullopt;
}

bool IsUnitDemandMarket(const Market& market) {
  return std::all_of(market.valuations.begin(), market.valuations.end(),
                     [](const Valuation& v) {
                       return std::holds_alternative<UnitDemand>(v);
                     });
}

bool IsPairMarket(const Market& market) {
  return std::all_of(
      market.valuations.begin(), market.valuations.end(),
      [](const Valuation& v) {
        if (const auto* s = std::get_if<SingleMinded>(&v)) {
          return s->bundle.size() <= 2;
        }
        return std::holds_alternative<UnitDemand>(v) ||
               std::holds_alternative<MultiMindedPair>(v);
      });
}

WdResult WdBruteForce(const Market& market, const WdOptions& options) {
  RequireValid(market);
  const std::uint64_t count =
      SaturatingPow(static_cast<std::uint64_t>(market.agent_count()) + 1,
                    market.item_count);
  if (count > options.bruteforce_assignments) {
    throw BudgetExceeded("brute force needs " +
                         (count == kSaturated ? std::string("too many")
                                              : std::to_string(count)) +
                         " assignments, budget is " +
                         std::to_string(options.bruteforce_assignments));
  }
  const bool use_tables =
      market.item_count <= 20 &&
      SaturatingMul(market.agent_count(), std::uint64_t{1}
                                               << market.item_count) <=
          (std::uint64_t{1} << 22);
  Amount welfare = 0;
  Allocation allocation =
      BruteForceSearch(market, use_tables).Run(&welfare);
  return Finish(market, std::move(allocation), welfare,
                WdAlgorithm::kBruteForce);
}

WdResult WdUnitDemand(const Market& market, const WdOptions&) {
  RequireValid(market);
  if (!IsUnitDemandMarket(market)) {
    throw InvalidInput("unit-demand matching requires every agent to be "
                       "unit-demand");
  }
  WeightedBipartiteGraph graph(market.agent_count(), market.item_count);
  for (int i = 0; i < market.agent_count(); ++i) {
    const auto& values = std::get<UnitDemand>(market.valuations[i]).values;
    for (int j = 0; j < market.item_count; ++j) {
      graph.SetWeight(i, j, values[j]);
    }
  }
  const Matching matching = MaxWeightBipartiteMatching(graph);
  Allocation allocation = Allocation::Empty(market.agent_count());
  for (const auto& [agent, item] : matching.pairs) {
    allocation.bundles[agent] = ItemSet({item});
  }
  return Finish(market, std::move(allocation), matching.total_weight,
                WdAlgorithm::kUnitDemandMatching);
}

WdResult WdPairMarket(const Market& market, const WdOptions& options) {
  RequireValid(market);
  if (!IsPairMarket(market)) {
    throw InvalidInput("pair matching requires unit-demand, single-minded "
                       "(bundle size <= 2) or multi-minded pair agents");
  }
  const int m = market.item_count;

  // Item-item edges: one per wanted pair, keeping the highest value and, on
  // ties, the lowest-indexed agent.
  struct PairBid {
    Amount value;
    int agent;
  };
  std::map<std::pair<int, int>, PairBid> pair_bids;
  auto bid = [&](int a, int b, Amount value, int agent) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = pair_bids.try_emplace(key, PairBid{value, agent});
    if (!inserted && value > it->second.value) it->second = {value, agent};
  };
  for (int i = 0; i < market.agent_count(); ++i) {
    const Valuation& v = market.valuations[i];
    if (const auto* s = std::get_if<SingleMinded>(&v); s && s->bundle.size() == 2) {
      const std::vector<int> items = s->bundle.Items();
      bid(items[0], items[1], s->value, i);
    } else if (const auto* p = std::get_if<MultiMindedPair>(&v)) {
      bid(p->a, p->b, p->value_ab, i);
    }
  }

  struct Owner {
    int agent;
    ItemSet bundle;
  };
  std::vector<GraphEdge> edges;
  std::vector<Owner> owners;
  auto add_edge = [&](int u, int w, Amount weight, int agent, ItemSet bundle) {
    if (weight <= 0) return;
    edges.push_back({u, w, weight});
    owners.push_back({agent, bundle});
  };
  for (const auto& [key, pb] : pair_bids) {
    add_edge(key.first, key.second, pb.value, pb.agent,
             ItemSet({key.first, key.second}));
  }
  // One private vertex per agent that can win a single item.
  int next_vertex = m;
  for (int i = 0; i < market.agent_count(); ++i) {
    const Valuation& v = market.valuations[i];
    if (const auto* u = std::get_if<UnitDemand>(&v)) {
      const int own = next_vertex++;
      for (int j = 0; j < m; ++j) add_edge(own, j, u->values[j], i, ItemSet({j}));
    } else if (const auto* p = std::get_if<MultiMindedPair>(&v)) {
      const int own = next_vertex++;
      add_edge(own, p->a, p->value_a, i, ItemSet({p->a}));
      add_edge(own, p->b, p->value_b, i, ItemSet({p->b}));
    } else if (const auto* s = std::get_if<SingleMinded>(&v);
               s && s->bundle.size() == 1) {
      const int own = next_vertex++;
      const int item = s->bundle.Items()[0];
      add_edge(own, item, s->value, i, s->bundle);
    }
  }

  const GeneralMatching matching =
      MaxWeightGeneralMatching(next_vertex, edges, options.pair_matching_states);
  Allocation allocation = Allocation::Empty(market.agent_count());
  for (int e : matching.edges) {
    ItemSet& bundle = allocation.bundles[owners[e].agent];
    // A pair edge and a private-vertex edge of the same agent cannot both be
    // matched only when they share an item; an agent owning two disjoint
    // winning edges would be a construction bug.
    if (!bundle.empty()) {
      throw std::logic_error("pair matching assigned two edges to agent " +
                             std::to_string(owners[e].agent + 1));
    }
    bundle = owners[e].bundle;
  }
  return Finish(market, std::move(allocation), matching.total_weight,
                WdAlgorithm::kPairMatching);
}

WdResult WdFewItemsDp(const Market& market, const WdOptions& options) {
  RequireValid(market);
  const int m = market.item_count;
  const int n = market.agent_count();
  if (m > options.dp_max_items) {
    throw BudgetExceeded("few-items DP allows at most " +
                         std::to_string(options.dp_max_items) +
                         " items, market has " + std::to_string(m));
  }
  const std::uint64_t transitions = SaturatingMul(SaturatingPow(3, m), n);
  if (transitions > options.dp_transitions) {
    throw BudgetExceeded("few-items DP needs " + std::to_string(transitions) +
                         " transitions, budget is " +
                         std::to_string(options.dp_transitions));
  }
  const std::uint64_t size = std::uint64_t{1} << m;
  std::vector<std::vector<Amount>> values;
  for (const Valuation& v : market.valuations) {
    values.push_back(ValueTable(v, m, size));
  }
  // best[i][S]: optimal welfare of agents 0..i-1 sharing items S.
  std::vector<std::vector<Amount>> best(n + 1, std::vector<Amount>(size, 0));
  for (int i = 1; i <= n; ++i) {
    const std::vector<Amount>& value = values[i - 1];
    const std::vector<Amount>& prev = best[i - 1];
    for (std::uint64_t s = 0; s < size; ++s) {
      Amount top = prev[s];
      for (std::uint64_t t = s; t != 0; t = (t - 1) & s) {
        top = std::max(top, value[t] + prev[s & ~t]);
      }
      best[i][s] = top;
    }
  }

  Allocation allocation = Allocation::Empty(n);
  std::uint64_t remaining = size - 1;
  for (int i = n; i >= 1; --i) {
    // Submasks of `remaining` in increasing numeric order.
    std::uint64_t t = 0;
    while (true) {
      if (values[i - 1][t] + best[i - 1][remaining & ~t] ==
          best[i][remaining]) {
        break;
      }
      if (t == remaining) {
        throw std::logic_error("few-items DP reconstruction failed");
      }
      t = (t - remaining) & remaining;
    }
    allocation.bundles[i - 1] = ItemSet(t);
    remaining &= ~t;
  }
  return Finish(market, std::move(allocation), best[n][size - 1],
                WdAlgorithm::kFewItemsDp);
}

WdResult WdFewAgentsEnum(const Market& market, int k,
                         const WdOptions& options) {
  RequireValid(market);
  if (k < 1) throw InvalidInput("k must be positive");
  const int m = market.item_count;
  const int n = market.agent_count();
  for (int i = 0; i < n; ++i) {
    if (!IsKDemand(market.valuations[i], k, m, options.kdemand_check_bundles)) {
      throw InvalidInput("agent " + std::to_string(i + 1) + " is not " +
                         std::to_string(k) + "-demand");
    }
  }
  const std::uint64_t allocated = SaturatingMul(k, n);
  // With fewer items than k*n the whole item set is the only candidate and
  // agents may receive fewer than k items.
  const bool whole_market = allocated > static_cast<std::uint64_t>(m);
  const int candidate_size = whole_market ? m : static_cast<int>(allocated);
  const std::uint64_t candidates = whole_market ? 1 : Binomial(m, candidate_size);
  if (candidates > options.enum_candidate_sets) {
    throw BudgetExceeded("few-agents enumeration needs " +
                         std::to_string(candidates) +
                         " candidate item sets, budget is " +
                         std::to_string(options.enum_candidate_sets));
  }
  const int min_bundle = whole_market ? 1 : k;
  const int max_bundle = std::min(k, candidate_size);
  std::uint64_t per_set = 0;
  for (int s = min_bundle; s <= max_bundle; ++s) {
    per_set += Binomial(candidate_size, s);
  }
  per_set = SaturatingMul(per_set, n);
  if (per_set > static_cast<std::uint64_t>(options.enum_hyperedges)) {
    throw BudgetExceeded("few-agents enumeration needs " +
                         std::to_string(per_set) +
                         " hyperedges per candidate set, cap is " +
                         std::to_string(options.enum_hyperedges));
  }
  if (SaturatingMul(per_set, candidates) > options.enum_total_hyperedges) {
    throw BudgetExceeded("few-agents enumeration exceeds the total hyperedge "
                         "budget of " +
                         std::to_string(options.enum_total_hyperedges));
  }

  Allocation best_allocation = Allocation::Empty(n);
  Amount best_welfare = -1;
  auto solve_candidate = [&](ItemSet candidate) {
    const std::vector<int> items = candidate.Items();
    std::vector<int> position(m, -1);
    for (std::size_t p = 0; p < items.size(); ++p) {
      position[items[p]] = static_cast<int>(p);
    }
    WeightedHypergraph graph;
    graph.vertex_count = candidate_size + n;
    std::vector<std::pair<int, ItemSet>> owners;
    for (int i = 0; i < n; ++i) {
      for (int s = min_bundle; s <= max_bundle; ++s) {
        ForEachSubsetOfSize(candidate, s, [&](ItemSet bundle) {
          const Amount w = Eval(market.valuations[i], bundle);
          if (w > 0) {
            Hyperedge edge;
            bundle.ForEach([&](int j) { edge.vertices.push_back(position[j]); });
            edge.vertices.push_back(candidate_size + i);
            edge.weight = w;
            graph.edges.push_back(std::move(edge));
            owners.emplace_back(i, bundle);
          }
          return true;
        });
      }
    }
    const SetPacking packing =
        MaxWeightSetPacking(graph, options.enum_hyperedges);
    if (packing.total_weight > best_welfare) {
      best_welfare = packing.total_weight;
      best_allocation = Allocation::Empty(n);
      for (int e : packing.edges) {
        best_allocation.bundles[owners[e].first] = owners[e].second;
      }
    }
    return true;
  };
  if (whole_market) {
    solve_candidate(market.AllItems());
  } else {
    ForEachSubsetOfSize(market.AllItems(), candidate_size, solve_candidate);
  }
  return Finish(market, std::move(best_allocation), best_welfare,
                WdAlgorithm::kFewAgentsEnum);
}

WdResult WdDispatch(const Market& market, const WdOptions& options) {
  RequireValid(market);
  if (IsUnitDemandMarket(market)) return WdUnitDemand(market, options);
  if (IsPairMarket(market)) {
    try {
      return WdPairMarket(market, options);
    } catch (const BudgetExceeded&) {
    }
  }
  const int m = market.item_count;
  if (m <= options.dp_max_items &&
      SaturatingMul(SaturatingPow(3, m), market.agent_count()) <=
          options.dp_transitions) {
    return WdFewItemsDp(market, options);
  }
  int k = 1;
  for (const Valuation& v : market.valuations) {
    k = std::max(k, std::min(DemandBound(v), m));
  }
  try {
    return WdFewAgentsEnum(market, k, options);
  } catch (const BudgetExceeded&) {
  }
  try {
    return WdBruteForce(market, options);
  } catch (const BudgetExceeded&) {
    throw BudgetExceeded("no exact winner-determination algorithm applies "
                         "within the configured budgets");
  }
}

WdResult WdRun(const Market& market, WdAlgorithm algorithm,
               const WdOptions& options) {
  switch (algorithm) {
    case WdAlgorithm::kBruteForce: return WdBruteForce(market, options);
    case WdAlgorithm::kUnitDemandMatching: return WdUnitDemand(market, options);
    case WdAlgorithm::kPairMatching: return WdPairMarket(market, options);
    case WdAlgorithm::kFewItemsDp: return WdFewItemsDp(market, options);
    case WdAlgorithm::kFewAgentsEnum: {
      int k = 1;
      for (const Valuation& v : market.valuations) {
        k = std::max(k, std::min(DemandBound(v), market.item_count));
      }
      return WdFewAgentsEnum(market, k, options);
    }
  }
  throw InvalidInput("unknown algorithm");
}

}  // namespace walras
