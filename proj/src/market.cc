#include "walras/market.h"

#include <algorithm>
#include <sstream>

#include "walras/errors.h"

namespace walras {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckRange(ItemSet bundle, std::size_t item_count) {
  if (bundle.bound() > static_cast<int>(item_count)) {
    throw InvalidInput("bundle " + bundle.DebugString() +
                       " references an item outside [0, " +
                       std::to_string(item_count) + ")");
  }
}

Amount SumOver(const std::vector<Amount>& values, ItemSet bundle) {
  Amount total = 0;
  bundle.ForEach([&](int j) { total += values[j]; });
  return total;
}

ItemSet PositiveItems(const std::vector<Amount>& values) {
  ItemSet result;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] > 0) result = result.With(static_cast<int>(j));
  }
  return result;
}

}  // namespace

std::string_view ClassName(const Valuation& v) {
  return std::visit(
      Overloaded{
          [](const UnitDemand&) { return std::string_view("unit-demand"); },
          [](const Additive&) { return std::string_view("additive"); },
          [](const BudgetAdditive&) {
            return std::string_view("budget-additive");
          },
          [](const SingleMinded&) { return std::string_view("single-minded"); },
          [](const MultiMindedPair&) { return std::string_view("pair"); },
          [](const KDemandTable&) { return std::string_view("k-demand"); },
          [](const Xos&) { return std::string_view("xos"); },
      },
      v);
}

ItemSet Allocation::Allocated() const {
  ItemSet all;
  for (ItemSet b : bundles) all |= b;
  return all;
}

ItemSet Allocation::Unallocated(int item_count) const {
  return ItemSet::FirstN(item_count) - Allocated();
}

Rational Pricing::Of(ItemSet bundle) const {
  CheckRange(bundle, prices.size());
  Rational total = 0;
  bundle.ForEach([&](int j) { total += prices[j]; });
  return total;
}

Amount Eval(const Valuation& v, ItemSet bundle) {
  return std::visit(
      Overloaded{
          [&](const UnitDemand& u) {
            CheckRange(bundle, u.values.size());
            Amount best = 0;
            bundle.ForEach([&](int j) { best = std::max(best, u.values[j]); });
            return best;
          },
          [&](const Additive& a) {
            CheckRange(bundle, a.values.size());
            return SumOver(a.values, bundle);
          },
          [&](const BudgetAdditive& b) {
            CheckRange(bundle, b.values.size());
            return std::min(b.budget, SumOver(b.values, bundle));
          },
          [&](const SingleMinded& s) {
            return s.bundle.IsSubsetOf(bundle) ? s.value : Amount{0};
          },
          [&](const MultiMindedPair& p) {
            const bool has_a = bundle.contains(p.a);
            const bool has_b = bundle.contains(p.b);
            if (has_a && has_b) return p.value_ab;
            if (has_a) return p.value_a;
            if (has_b) return p.value_b;
            return Amount{0};
          },
          [&](const KDemandTable& t) {
            // Every listed key has size <= k, so the best <=k-subset of the
            // bundle is realized by a listed key contained in it.
            Amount best = 0;
            for (const auto& [key, value] : t.entries) {
              if (key.IsSubsetOf(bundle)) best = std::max(best, value);
            }
            return best;
          },
          [&](const Xos& x) {
            Amount best = 0;
            for (const auto& row : x.rows) {
              CheckRange(bundle, row.size());
              best = std::max(best, SumOver(row, bundle));
            }
            return best;
          },
      },
      v);
}

Amount Eval(const Market& market, int agent, ItemSet bundle) {
  if (agent < 0 || agent >= market.agent_count()) {
    throw InvalidInput("agent index " + std::to_string(agent) +
                       " out of range");
  }
  CheckRange(bundle, static_cast<std::size_t>(market.item_count));
  return Eval(market.valuations[agent], bundle);
}

Rational Utility(const Valuation& v, ItemSet bundle, const Pricing& prices) {
  return Rational(Eval(v, bundle)) - prices.Of(bundle);
}

std::vector<ItemSet> DemandCorrespondence(const Valuation& v,
                                          const Pricing& prices, int size_cap,
                                          std::uint64_t budget) {
  const int m = prices.size();
  if (size_cap < 0 || size_cap > m) {
    throw InvalidInput("size cap " + std::to_string(size_cap) +
                       " outside [0, " + std::to_string(m) + "]");
  }
  const std::uint64_t candidates = CountSubsetsUpTo(m, size_cap);
  if (candidates > budget) {
    throw BudgetExceeded("demand correspondence needs " +
                         std::to_string(candidates) +
                         " candidate bundles, budget is " +
                         std::to_string(budget));
  }
  std::vector<ItemSet> best;
  Rational best_utility;
  ForEachSubsetUpTo(ItemSet::FirstN(m), size_cap, [&](ItemSet bundle) {
    Rational u = Utility(v, bundle, prices);
    if (best.empty() || u > best_utility) {
      best.assign(1, bundle);
      best_utility = std::move(u);
    } else if (u == best_utility) {
      best.push_back(bundle);
    }
    return true;
  });
  return best;
}

void CheckAllocation(const Market& market, const Allocation& allocation) {
  if (allocation.bundles.size() != market.valuations.size()) {
    throw InvalidInput("allocation has " +
                       std::to_string(allocation.bundles.size()) +
                       " bundles for " +
                       std::to_string(market.agent_count()) + " agents");
  }
  ItemSet seen;
  for (std::size_t i = 0; i < allocation.bundles.size(); ++i) {
    const ItemSet b = allocation.bundles[i];
    if (b.bound() > market.item_count) {
      throw InvalidInput("bundle of agent " + std::to_string(i + 1) +
                         " references an item outside the market");
    }
    if (b.Intersects(seen)) {
      throw InvalidInput("bundle of agent " + std::to_string(i + 1) +
                         " overlaps an earlier bundle at " +
                         (b & seen).DebugString());
    }
    seen |= b;
  }
}

Amount SocialWelfare(const Market& market, const Allocation& allocation) {
  CheckAllocation(market, allocation);
  Amount total = 0;
  for (int i = 0; i < market.agent_count(); ++i) {
    total += Eval(market.valuations[i], allocation.bundles[i]);
  }
  return total;
}

namespace {

class ViolationCollector {
 public:
  ViolationCollector(int agent, std::vector<Violation>* out)
      : agent_(agent), out_(out) {}

  void Add(std::string message, std::vector<ItemSet> bundles = {}) {
    out_->push_back({agent_, std::move(message), std::move(bundles)});
  }

  void CheckValue(Amount value, std::string_view what) {
    if (value < 0) {
      Add(std::string(what) + " is negative (" + std::to_string(value) + ")");
    } else if (value > kMaxInputValue) {
      Add(std::string(what) + " exceeds the input cap " +
          std::to_string(kMaxInputValue));
    }
  }

  void CheckVector(const std::vector<Amount>& values, int item_count,
                   std::string_view what) {
    if (static_cast<int>(values.size()) != item_count) {
      Add(std::string(what) + " has " + std::to_string(values.size()) +
          " entries, expected " + std::to_string(item_count));
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
      CheckValue(values[j], std::string(what) + " entry for item " +
                                std::to_string(j + 1));
    }
  }

  void CheckItem(int item, int item_count, std::string_view what) {
    if (item < 0 || item >= item_count) {
      Add(std::string(what) + " " + std::to_string(item) +
          " outside the market's items");
    }
  }

 private:
  int agent_;
  std::vector<Violation>* out_;
};

void ValidateValuation(const Valuation& v, int m, ViolationCollector& c) {
  std::visit(
      Overloaded{
          [&](const UnitDemand& u) { c.CheckVector(u.values, m, "value"); },
          [&](const Additive& a) { c.CheckVector(a.values, m, "value"); },
          [&](const BudgetAdditive& b) {
            c.CheckVector(b.values, m, "value");
            c.CheckValue(b.budget, "budget");
          },
          [&](const SingleMinded& s) {
            if (s.bundle.empty()) c.Add("single-minded bundle is empty");
            if (s.bundle.bound() > m) {
              c.Add("single-minded bundle references an item outside the market",
                    {s.bundle});
            }
            c.CheckValue(s.value, "value");
          },
          [&](const MultiMindedPair& p) {
            c.CheckItem(p.a, m, "pair item");
            c.CheckItem(p.b, m, "pair item");
            if (p.a == p.b) c.Add("pair items coincide");
            c.CheckValue(p.value_a, "pair value v_a");
            c.CheckValue(p.value_b, "pair value v_b");
            c.CheckValue(p.value_ab, "pair value v_ab");
            if (p.value_ab < std::max(p.value_a, p.value_b)) {
              c.Add("pair value v_ab is below max(v_a, v_b)");
            }
          },
          [&](const KDemandTable& t) {
            if (t.k < 1) c.Add("k-demand parameter k must be positive");
            for (const auto& [key, value] : t.entries) {
              if (key.empty()) c.Add("k-demand table lists the empty bundle");
              if (key.size() > t.k) {
                c.Add("k-demand bundle larger than k", {key});
              }
              if (key.bound() > m) {
                c.Add("k-demand bundle references an item outside the market",
                      {key});
              }
              c.CheckValue(value, "k-demand entry");
            }
            // Each explicit entry must be at least the value its strict
            // subsets already imply.
            for (const auto& [key, value] : t.entries) {
              for (const auto& [sub, sub_value] : t.entries) {
                if (sub != key && sub.IsSubsetOf(key) && sub_value > value) {
                  c.Add("k-demand entry " + key.DebugString() + " = " +
                            std::to_string(value) +
                            " is below the value of its subset " +
                            sub.DebugString() + " = " +
                            std::to_string(sub_value),
                        {key, sub});
                }
              }
            }
          },
          [&](const Xos& x) {
            if (x.rows.empty()) c.Add("xos valuation has no rows", {});
            for (std::size_t r = 0; r < x.rows.size(); ++r) {
              c.CheckVector(x.rows[r], m,
                            "xos row " + std::to_string(r + 1));
            }
          },
      },
      v);
}

}  // namespace

std::vector<Violation> Validate(const Market& market) {
  std::vector<Violation> out;
  if (market.agent_count() < 1) {
    out.push_back({-1, "market has no agents", {}});
  }
  if (market.item_count < 1 || market.item_count > kMaxItems) {
    out.push_back({-1,
                   "item count " + std::to_string(market.item_count) +
                       " outside [1, " + std::to_string(kMaxItems) + "]",
                   {}});
    return out;
  }
  for (int i = 0; i < market.agent_count(); ++i) {
    ViolationCollector collector(i, &out);
    ValidateValuation(market.valuations[i], market.item_count, collector);
  }
  return out;
}

void ValidateOrThrow(const Market& market) {
  const std::vector<Violation> violations = Validate(market);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid market: ";
  for (std::size_t i = 0; i < violations.size() && i < 3; ++i) {
    if (i > 0) msg << "; ";
    if (violations[i].agent >= 0) msg << "agent " << violations[i].agent + 1 << ": ";
    msg << violations[i].message;
  }
  if (violations.size() > 3) {
    msg << " (and " << violations.size() - 3 << " more)";
  }
  throw InvalidInput(msg.str());
}

int DemandBound(const Valuation& v) {
  const int k = std::visit(
      Overloaded{
          [](const UnitDemand&) { return 1; },
          [](const Additive& a) { return PositiveItems(a.values).size(); },
          [](const BudgetAdditive& b) {
            return PositiveItems(b.values).size();
          },
          [](const SingleMinded& s) { return s.bundle.size(); },
          [](const MultiMindedPair&) { return 2; },
          [](const KDemandTable& t) { return t.k; },
          [](const Xos& x) {
            int widest = 0;
            for (const auto& row : x.rows) {
              widest = std::max(widest, PositiveItems(row).size());
            }
            return widest;
          },
      },
      v);
  return std::max(k, 1);
}

ItemSet Support(const Valuation& v) {
  return std::visit(
      Overloaded{
          [](const UnitDemand& u) { return PositiveItems(u.values); },
          [](const Additive& a) { return PositiveItems(a.values); },
          [](const BudgetAdditive& b) {
            return b.budget > 0 ? PositiveItems(b.values) : ItemSet();
          },
          [](const SingleMinded& s) {
            return s.value > 0 ? s.bundle : ItemSet();
          },
          [](const MultiMindedPair& p) {
            ItemSet s;
            if (p.value_a > 0 || p.value_ab > p.value_b) s = s.With(p.a);
            if (p.value_b > 0 || p.value_ab > p.value_a) s = s.With(p.b);
            return s;
          },
          [](const KDemandTable& t) {
            ItemSet s;
            for (const auto& [key, value] : t.entries) {
              if (value > 0) s |= key;
            }
            return s;
          },
          [](const Xos& x) {
            ItemSet s;
            for (const auto& row : x.rows) s |= PositiveItems(row);
            return s;
          },
      },
      v);
}

std::vector<Amount> ValueTable(const Valuation& v, int item_count,
                               std::uint64_t budget) {
  if (item_count > 62 || (std::uint64_t{1} << item_count) > budget) {
    throw BudgetExceeded("value table over " + std::to_string(item_count) +
                         " items exceeds budget " + std::to_string(budget));
  }
  const std::uint64_t size = std::uint64_t{1} << item_count;
  std::vector<Amount> table(size);
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    table[mask] = Eval(v, ItemSet(mask));
  }
  return table;
}

bool IsKDemand(const Valuation& v, int k, int item_count,
               std::uint64_t budget) {
  if (k >= DemandBound(v) || k >= item_count) return true;
  // v is k-demand iff every bundle larger than k is worth as much as one of
  // its subsets with a single item removed.
  const std::vector<Amount> table = ValueTable(v, item_count, budget);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    const ItemSet bundle(mask);
    if (bundle.size() <= k) continue;
    Amount best = 0;
    bundle.ForEach([&](int j) {
      best = std::max(best, table[bundle.Without(j).mask()]);
    });
    if (best != table[mask]) return false;
  }
  return true;
}

KDemandTable TruncatedBudgetAdditive(const std::vector<Amount>& values,
                                     Amount budget, int k) {
  KDemandTable table;
  table.k = k;
  const int m = static_cast<int>(values.size());
  ForEachSubsetUpTo(ItemSet::FirstN(m), k, [&](ItemSet bundle) {
    if (!bundle.empty()) {
      table.entries.emplace(bundle, std::min(budget, SumOver(values, bundle)));
    }
    return true;
  });
  return table;
}

}  // namespace walras
