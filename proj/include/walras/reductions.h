#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "walras/market.h"

namespace walras {

// Bounded 3-dimensional matching: elements X, Y, Z each of size q; every
// element lies in at most three triples and two triples share at most one
// element. Indices are 0-based.
struct ThreeDmInstance {
  int q = 0;
  std::vector<std::array<int, 3>> triples;
  bool operator==(const ThreeDmInstance&) const = default;
};

// Throws InvalidInput on any violated invariant.
void CheckThreeDm(const ThreeDmInstance& instance);

// Element x of X belongs to no triple, so no perfect matching exists and no
// market is built.
struct TriviallyUnsatisfiable {
  int element = 0;
};

// One agent per x, items y_j -> j and z_j -> q + j. Agent x gets an XOS
// valuation with one 0/1 row per incident triple marking that triple's two
// items, so the optimal welfare is 2q iff a perfect matching exists.
std::variant<Market, TriviallyUnsatisfiable> FromThreeDm(
    const ThreeDmInstance& instance);

// Decides whether q pairwise-disjoint triples exist via unit-weight set
// packing. Throws BudgetExceeded beyond `edge_cap` triples.
bool HasPerfectThreeDm(const ThreeDmInstance& instance, int edge_cap = 64);

// 3n positive integers to be split into n triples of equal sum.
struct ThreePartitionInstance {
  std::vector<Amount> values;
  int n = 0;
  // Also require target/4 < a_i < target/2.
  bool strict = false;

  Amount Target() const;
  bool operator==(const ThreePartitionInstance&) const = default;
};

void CheckThreePartition(const ThreePartitionInstance& instance);

// n identical agents over 3n items, each the 3-demand restriction of the
// budget-additive valuation (a_1..a_3n; budget = target) as an explicit table.
// Optimal welfare is n * target iff a valid 3-partition exists.
Market FromThreePartition(const ThreePartitionInstance& instance,
                          std::uint64_t table_budget = 100'000);

// The generator behind every seeded family. mt19937_64 is bit-exact across
// standard libraries; bounded draws use rejection sampling so results do not
// depend on std distribution implementations.
class Prng {
 public:
  static constexpr std::string_view kName = "mt19937_64";

  explicit Prng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t Next() { return engine_(); }
  // Uniform in [lo, hi].
  std::int64_t Uniform(std::int64_t lo, std::int64_t hi);
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1],
                items[static_cast<std::size_t>(Uniform(0, i - 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class MarketFamily {
  kUnitDemand,
  kAdditive,
  kBudgetAdditive,
  kSingleMinded,    // bundle size in [1, k]
  kPair,            // multi-minded over a pair
  kPairMarket,      // mix of unit-demand, single-minded (<= 2), pair
  kKDemandTable,
  kXos,             // k rows
  kMixed,           // every class above, per agent
};

std::string_view FamilyName(MarketFamily family);
std::optional<MarketFamily> FamilyFromName(std::string_view name);

struct RandomMarketParams {
  MarketFamily family = MarketFamily::kUnitDemand;
  int agents = 1;
  int items = 1;
  Amount value_bound = 10;
  int k = 1;
  std::uint64_t seed = 0;
};

// Deterministic market for (params); always passes Validate. Throws
// InvalidInput for unsupported combinations (e.g. pairs with one item).
Market RandomMarket(const RandomMarketParams& params);

// Random bounded 3DM instance with up to `triple_count` triples. With
// `planted`, a perfect matching is inserted first.
ThreeDmInstance RandomThreeDm(int q, int triple_count, bool planted,
                              std::uint64_t seed);

// Random 3-partition instance with values in [1, max_value] whose sum is a
// multiple of n. With `planted`, a valid partition exists.
ThreePartitionInstance RandomThreePartition(int n, Amount max_value,
                                            bool planted, std::uint64_t seed);

}  // namespace walras
