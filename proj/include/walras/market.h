#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "walras/item_set.h"
#include "walras/rational.h"

namespace walras {

// Integer value of a bundle. Valuation inputs are nonnegative integers no
// larger than kMaxInputValue, so every bundle value and every welfare sum
// fits without overflow.
using Amount = std::int64_t;
inline constexpr Amount kMaxInputValue = 1'000'000'000'000;  // 10^12

// v(X) = max_{j in X} values[j].
struct UnitDemand {
  std::vector<Amount> values;
  bool operator==(const UnitDemand&) const = default;
};

// v(X) = sum_{j in X} values[j].
struct Additive {
  std::vector<Amount> values;
  bool operator==(const Additive&) const = default;
};

// v(X) = min(budget, sum_{j in X} values[j]).
struct BudgetAdditive {
  std::vector<Amount> values;
  Amount budget = 0;
  bool operator==(const BudgetAdditive&) const = default;
};

// v(X) = value if bundle is a subset of X, else 0.
struct SingleMinded {
  ItemSet bundle;
  Amount value = 0;
  bool operator==(const SingleMinded&) const = default;
};

// Positive value only for {a}, {b} and {a, b}.
struct MultiMindedPair {
  int a = 0;
  int b = 1;
  Amount value_a = 0;
  Amount value_b = 0;
  Amount value_ab = 0;
  bool operator==(const MultiMindedPair&) const = default;
};

// Explicit values for bundles of size at most k. An unlisted bundle is worth
// the best listed bundle it contains (0 if none), and any bundle is worth its
// best subset of size at most k.
struct KDemandTable {
  int k = 1;
  std::map<ItemSet, Amount> entries;
  bool operator==(const KDemandTable&) const = default;
};

// v(X) = max over rows r of sum_{j in X} r[j].
struct Xos {
  std::vector<std::vector<Amount>> rows;
  bool operator==(const Xos&) const = default;
};

using Valuation = std::variant<UnitDemand, Additive, BudgetAdditive,
                               SingleMinded, MultiMindedPair, KDemandTable,
                               Xos>;

// Class tag as used by the instance format ("unit-demand", "pair", ...).
std::string_view ClassName(const Valuation& v);

struct Market {
  int item_count = 0;
  std::vector<Valuation> valuations;

  int agent_count() const { return static_cast<int>(valuations.size()); }
  ItemSet AllItems() const { return ItemSet::FirstN(item_count); }
  bool operator==(const Market&) const = default;
};

// One bundle per agent; items in no bundle form the unallocated pool.
struct Allocation {
  std::vector<ItemSet> bundles;

  static Allocation Empty(int agent_count) {
    return Allocation{std::vector<ItemSet>(agent_count)};
  }
  ItemSet Allocated() const;
  ItemSet Unallocated(int item_count) const;
  bool operator==(const Allocation&) const = default;
};

struct Pricing {
  std::vector<Rational> prices;

  static Pricing Zero(int item_count) {
    return Pricing{std::vector<Rational>(item_count)};
  }
  int size() const { return static_cast<int>(prices.size()); }
  const Rational& operator[](int item) const { return prices[item]; }
  Rational& operator[](int item) { return prices[item]; }
  // p(X).
  Rational Of(ItemSet bundle) const;
  bool operator==(const Pricing&) const = default;
};

// Exact value of `bundle`. Throws InvalidInput if the bundle names an item
// outside the valuation's item range (when the valuation carries one).
Amount Eval(const Valuation& v, ItemSet bundle);

// As above but also checks the bundle against the market's item count.
Amount Eval(const Market& market, int agent, ItemSet bundle);

// v(X) - p(X). Every item of X must be priced.
Rational Utility(const Valuation& v, ItemSet bundle, const Pricing& prices);

inline constexpr std::uint64_t kDefaultDemandBudget = std::uint64_t{1} << 20;

// All bundles of size <= size_cap that maximize utility among bundles of size
// <= size_cap, ordered by size then lexicographically. Items are
// [0, prices.size()). Throws BudgetExceeded when more than `budget` candidate
// bundles would be enumerated.
std::vector<ItemSet> DemandCorrespondence(
    const Valuation& v, const Pricing& prices, int size_cap,
    std::uint64_t budget = kDefaultDemandBudget);

// sum_i v_i(S_i). Throws InvalidInput on an invalid allocation.
Amount SocialWelfare(const Market& market, const Allocation& allocation);

// Throws InvalidInput unless the allocation has one bundle per agent, bundles
// are pairwise disjoint, and every item is in [0, m).
void CheckAllocation(const Market& market, const Allocation& allocation);

struct Violation {
  int agent = -1;  // -1 for market-level problems
  std::string message;
  std::vector<ItemSet> bundles;
};

// Every invariant violation in the market: shape, value ranges, item ranges,
// class invariants, and k-demand table monotonicity. Empty means valid.
std::vector<Violation> Validate(const Market& market);

// Throws InvalidInput describing the first few violations, if any.
void ValidateOrThrow(const Market& market);

// A k for which v is k-demand, read off the valuation's structure. Not
// necessarily the smallest such k. Always >= 1.
int DemandBound(const Valuation& v);

// Items that can contribute value: v(X) = v(X & Support(v)) for every X.
ItemSet Support(const Valuation& v);

// True if v(X) = max over subsets X' of X with |X'| <= k of v(X') for every
// X over `item_count` items. Uses DemandBound when it settles the question,
// otherwise checks every bundle; throws BudgetExceeded if 2^item_count
// exceeds `budget`.
bool IsKDemand(const Valuation& v, int k, int item_count,
               std::uint64_t budget = kDefaultDemandBudget);

// Value of each of the 2^item_count bundles, indexed by mask. Throws
// BudgetExceeded if the table would exceed `budget` entries.
std::vector<Amount> ValueTable(const Valuation& v, int item_count,
                               std::uint64_t budget = kDefaultDemandBudget);

// The 3-demand (or k-demand) restriction of a budget-additive valuation as an
// explicit table: every nonempty bundle T with |T| <= k is listed with value
// min(budget, sum_{j in T} values[j]).
KDemandTable TruncatedBudgetAdditive(const std::vector<Amount>& values,
                                     Amount budget, int k);

}  // namespace walras
