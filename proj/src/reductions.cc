#include "walras/reductions.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "walras/errors.h"
#include "walras/matching.h"

namespace walras {

void CheckThreeDm(const ThreeDmInstance& instance) {
  if (instance.q < 1) throw InvalidInput("3DM instance needs q >= 1");
  const int q = instance.q;
  std::vector<int> uses(3 * q, 0);
  for (std::size_t t = 0; t < instance.triples.size(); ++t) {
    const auto& triple = instance.triples[t];
    for (int d = 0; d < 3; ++d) {
      if (triple[d] < 0 || triple[d] >= q) {
        throw InvalidInput("triple " + std::to_string(t + 1) +
                           " has an element outside [1, q]");
      }
      if (++uses[d * q + triple[d]] > 3) {
        throw InvalidInput("element " + std::to_string(triple[d] + 1) +
                           " of dimension " + std::to_string(d + 1) +
                           " appears in more than three triples");
      }
    }
    for (std::size_t u = 0; u < t; ++u) {
      int shared = 0;
      for (int d = 0; d < 3; ++d) shared += instance.triples[u][d] == triple[d];
      if (shared > 1) {
        throw InvalidInput("triples " + std::to_string(u + 1) + " and " +
                           std::to_string(t + 1) +
                           " share more than one element");
      }
    }
  }
}

std::variant<Market, TriviallyUnsatisfiable> FromThreeDm(
    const ThreeDmInstance& instance) {
  CheckThreeDm(instance);
  const int q = instance.q;
  Market market;
  market.item_count = 2 * q;
  for (int x = 0; x < q; ++x) {
    Xos valuation;
    for (const auto& triple : instance.triples) {
      if (triple[0] != x) continue;
      std::vector<Amount> row(2 * q, 0);
      row[triple[1]] = 1;
      row[q + triple[2]] = 1;
      valuation.rows.push_back(std::move(row));
    }
    if (valuation.rows.empty()) return TriviallyUnsatisfiable{x};
    market.valuations.emplace_back(std::move(valuation));
  }
  return market;
}

bool HasPerfectThreeDm(const ThreeDmInstance& instance, int edge_cap) {
  CheckThreeDm(instance);
  const int q = instance.q;
  WeightedHypergraph graph;
  graph.vertex_count = 3 * q;
  for (const auto& triple : instance.triples) {
    graph.edges.push_back({{triple[0], q + triple[1], 2 * q + triple[2]}, 1});
  }
  return MaxWeightSetPacking(graph, edge_cap).total_weight == q;
}

Amount ThreePartitionInstance::Target() const {
  if (n < 1) return 0;
  return std::accumulate(values.begin(), values.end(), Amount{0}) / n;
}

void CheckThreePartition(const ThreePartitionInstance& instance) {
  if (instance.n < 1) throw InvalidInput("3-partition needs n >= 1");
  if (static_cast<int>(instance.values.size()) != 3 * instance.n) {
    throw InvalidInput("3-partition with n = " + std::to_string(instance.n) +
                       " needs " + std::to_string(3 * instance.n) +
                       " values, got " +
                       std::to_string(instance.values.size()));
  }
  Amount sum = 0;
  for (Amount a : instance.values) {
    if (a < 1 || a > kMaxInputValue) {
      throw InvalidInput("3-partition value " + std::to_string(a) +
                         " is not a positive integer within the input cap");
    }
    sum += a;
  }
  if (sum % instance.n != 0) {
    throw InvalidInput("3-partition values sum to " + std::to_string(sum) +
                       ", not a multiple of n = " + std::to_string(instance.n));
  }
  if (instance.strict) {
    const Amount target = sum / instance.n;
    for (Amount a : instance.values) {
      if (!(4 * a > target && 2 * a < target)) {
        throw InvalidInput("value " + std::to_string(a) +
                           " violates target/4 < a < target/2");
      }
    }
  }
}

Market FromThreePartition(const ThreePartitionInstance& instance,
                          std::uint64_t table_budget) {
  CheckThreePartition(instance);
  const int m = 3 * instance.n;
  const std::uint64_t entries = CountSubsetsUpTo(m, 3) - 1;
  if (entries > table_budget) {
    throw BudgetExceeded("3-demand table needs " + std::to_string(entries) +
                         " entries, budget is " + std::to_string(table_budget));
  }
  if (m > kMaxItems) {
    throw BudgetExceeded("3-partition market would have more than " +
                         std::to_string(kMaxItems) + " items");
  }
  const KDemandTable table =
      TruncatedBudgetAdditive(instance.values, instance.Target(), 3);
  Market market;
  market.item_count = m;
  market.valuations.assign(instance.n, table);
  return market;
}

std::int64_t Prng::Uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidInput("empty random range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::int64_t>(Next());
  }
  const std::uint64_t range = span + 1;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = Next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % range);
}

namespace {

constexpr std::pair<MarketFamily, std::string_view> kFamilyNames[] = {
    {MarketFamily::kUnitDemand, "unit-demand"},
    {MarketFamily::kAdditive, "additive"},
    {MarketFamily::kBudgetAdditive, "budget-additive"},
    {MarketFamily::kSingleMinded, "single-minded"},
    {MarketFamily::kPair, "pair"},
    {MarketFamily::kPairMarket, "pair-market"},
    {MarketFamily::kKDemandTable, "k-demand-table"},
    {MarketFamily::kXos, "xos"},
    {MarketFamily::kMixed, "mixed"},
};

std::vector<Amount> RandomValues(Prng& rng, int m, Amount bound) {
  std::vector<Amount> values(m);
  for (Amount& v : values) v = rng.Uniform(0, bound);
  return values;
}

ItemSet RandomBundle(Prng& rng, int m, int size) {
  std::vector<int> items(m);
  std::iota(items.begin(), items.end(), 0);
  rng.Shuffle(items);
  ItemSet bundle;
  for (int i = 0; i < size; ++i) bundle = bundle.With(items[i]);
  return bundle;
}

MultiMindedPair RandomPair(Prng& rng, int m, Amount bound) {
  const ItemSet pair = RandomBundle(rng, m, 2);
  const std::vector<int> items = pair.Items();
  MultiMindedPair p;
  p.a = items[0];
  p.b = items[1];
  p.value_a = rng.Uniform(0, bound);
  p.value_b = rng.Uniform(0, bound);
  p.value_ab = rng.Uniform(std::max(p.value_a, p.value_b), bound);
  return p;
}

KDemandTable RandomTable(Prng& rng, int m, int k, Amount bound) {
  KDemandTable table;
  table.k = k;
  const int max_entries =
      static_cast<int>(std::min<std::uint64_t>(CountSubsetsUpTo(m, k) - 1,
                                               2 * static_cast<std::uint64_t>(m)));
  const int target = static_cast<int>(rng.Uniform(1, max_entries));
  std::vector<ItemSet> keys;
  for (int attempt = 0; attempt < 8 * target && static_cast<int>(keys.size()) < target;
       ++attempt) {
    const ItemSet key = RandomBundle(rng, m, static_cast<int>(rng.Uniform(1, std::min(k, m))));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  // Smaller keys first so each value can respect the subsets already placed.
  std::stable_sort(keys.begin(), keys.end(),
                   [](ItemSet a, ItemSet b) { return a.size() < b.size(); });
  for (ItemSet key : keys) {
    Amount floor = 0;
    for (const auto& [other, value] : table.entries) {
      if (other.IsSubsetOf(key)) floor = std::max(floor, value);
    }
    table.entries.emplace(key, rng.Uniform(floor, std::max(floor, bound)));
  }
  return table;
}

Valuation RandomValuation(Prng& rng, MarketFamily family, int m, Amount bound,
                          int k) {
  switch (family) {
    case MarketFamily::kUnitDemand:
      return UnitDemand{RandomValues(rng, m, bound)};
    case MarketFamily::kAdditive:
      return Additive{RandomValues(rng, m, bound)};
    case MarketFamily::kBudgetAdditive: {
      BudgetAdditive b{RandomValues(rng, m, bound), 0};
      b.budget = rng.Uniform(0, 2 * bound);
      return b;
    }
    case MarketFamily::kSingleMinded: {
      const int size = static_cast<int>(rng.Uniform(1, std::min(k, m)));
      const ItemSet bundle = RandomBundle(rng, m, size);
      return SingleMinded{bundle, rng.Uniform(0, bound)};
    }
    case MarketFamily::kPair:
      if (m < 2) throw InvalidInput("pair valuations need at least two items");
      return RandomPair(rng, m, bound);
    case MarketFamily::kPairMarket: {
      const int pick = static_cast<int>(rng.Uniform(0, m >= 2 ? 2 : 0));
      if (pick == 0) return UnitDemand{RandomValues(rng, m, bound)};
      if (pick == 1) {
        const int size = static_cast<int>(rng.Uniform(1, 2));
        return SingleMinded{RandomBundle(rng, m, size), rng.Uniform(0, bound)};
      }
      return RandomPair(rng, m, bound);
    }
    case MarketFamily::kKDemandTable:
      return RandomTable(rng, m, k, bound);
    case MarketFamily::kXos: {
      Xos x;
      for (int r = 0; r < k; ++r) x.rows.push_back(RandomValues(rng, m, bound));
      return x;
    }
    case MarketFamily::kMixed: {
      constexpr MarketFamily kChoices[] = {
          MarketFamily::kUnitDemand,    MarketFamily::kAdditive,
          MarketFamily::kBudgetAdditive, MarketFamily::kSingleMinded,
          MarketFamily::kPair,          MarketFamily::kKDemandTable,
          MarketFamily::kXos};
      const int last = m >= 2 ? 6 : 5;
      int pick = static_cast<int>(rng.Uniform(0, last));
      if (m < 2 && pick >= 4) ++pick;  // skip pair
      return RandomValuation(rng, kChoices[pick], m, bound, k);
    }
  }
  throw InvalidInput("unknown market family");
}

}  // namespace

std::string_view FamilyName(MarketFamily family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

std::optional<MarketFamily> FamilyFromName(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

Market RandomMarket(const RandomMarketParams& params) {
  if (params.agents < 1 || params.items < 1 || params.items > kMaxItems) {
    throw InvalidInput("random market needs n >= 1 and 1 <= m <= " +
                       std::to_string(kMaxItems));
  }
  if (params.value_bound < 0 || params.value_bound > kMaxInputValue / 2) {
    throw InvalidInput("value bound out of range");
  }
  if (params.k < 1) throw InvalidInput("k must be positive");
  if (params.family == MarketFamily::kKDemandTable && params.k > params.items) {
    throw InvalidInput("k-demand table needs k <= m");
  }
  Prng rng(params.seed);
  Market market;
  market.item_count = params.items;
  for (int i = 0; i < params.agents; ++i) {
    market.valuations.push_back(RandomValuation(
        rng, params.family, params.items, params.value_bound,
        std::min(params.k, params.items)));
  }
  ValidateOrThrow(market);
  return market;
}

ThreeDmInstance RandomThreeDm(int q, int triple_count, bool planted,
                              std::uint64_t seed) {
  if (q < 1) throw InvalidInput("3DM instance needs q >= 1");
  if (triple_count < 0) throw InvalidInput("triple count must be >= 0");
  Prng rng(seed);
  ThreeDmInstance instance;
  instance.q = q;
  std::vector<int> uses(3 * q, 0);
  auto fits = [&](const std::array<int, 3>& t) {
    for (int d = 0; d < 3; ++d) {
      if (uses[d * q + t[d]] >= 3) return false;
    }
    for (const auto& u : instance.triples) {
      int shared = 0;
      for (int d = 0; d < 3; ++d) shared += u[d] == t[d];
      if (shared > 1) return false;
    }
    return true;
  };
  auto add = [&](const std::array<int, 3>& t) {
    for (int d = 0; d < 3; ++d) ++uses[d * q + t[d]];
    instance.triples.push_back(t);
  };
  if (planted) {
    std::vector<int> ys(q), zs(q);
    std::iota(ys.begin(), ys.end(), 0);
    std::iota(zs.begin(), zs.end(), 0);
    rng.Shuffle(ys);
    rng.Shuffle(zs);
    for (int x = 0; x < q && static_cast<int>(instance.triples.size()) < triple_count;
         ++x) {
      add({x, ys[x], zs[x]});
    }
  }
  for (int attempt = 0;
       attempt < 50 * triple_count &&
       static_cast<int>(instance.triples.size()) < triple_count;
       ++attempt) {
    const std::array<int, 3> t = {static_cast<int>(rng.Uniform(0, q - 1)),
                                  static_cast<int>(rng.Uniform(0, q - 1)),
                                  static_cast<int>(rng.Uniform(0, q - 1))};
    if (fits(t)) add(t);
  }
  if (planted) {
    std::vector<std::array<int, 3>> shuffled = instance.triples;
    rng.Shuffle(shuffled);
    instance.triples = std::move(shuffled);
  }
  return instance;
}

ThreePartitionInstance RandomThreePartition(int n, Amount max_value,
                                            bool planted, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("3-partition needs n >= 1");
  if (max_value < 1 || max_value > kMaxInputValue / 3) {
    throw InvalidInput("max value out of range");
  }
  Prng rng(seed);
  ThreePartitionInstance instance;
  instance.n = n;
  if (planted) {
    const Amount target = rng.Uniform(3, 3 * max_value);
    for (int t = 0; t < n; ++t) {
      // a + b + c = target with every part in [1, max_value].
      const Amount a_lo = std::max<Amount>(1, target - 2 * max_value);
      const Amount a = rng.Uniform(a_lo, std::min(max_value, target - 2));
      const Amount rest = target - a;
      const Amount b = rng.Uniform(std::max<Amount>(1, rest - max_value),
                                   std::min(max_value, rest - 1));
      instance.values.insert(instance.values.end(), {a, b, rest - b});
    }
    rng.Shuffle(instance.values);
    return instance;
  }
  for (int i = 0; i < 3 * n; ++i) {
    instance.values.push_back(rng.Uniform(1, max_value));
  }
  // Nudge values one step at a time until the sum is a multiple of n.
  Amount sum = std::accumulate(instance.values.begin(), instance.values.end(),
                               Amount{0});
  for (std::size_t i = 0; sum % n != 0; i = (i + 1) % instance.values.size()) {
    Amount& v = instance.values[i];
    if (v < max_value) {
      ++v;
      ++sum;
    } else if (v > 1) {
      --v;
      --sum;
    }
  }
  return instance;
}

}  // namespace walras
