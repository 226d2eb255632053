#include <gtest/gtest.h>

#include "test_oracles.h"
#include "walras/errors.h"
#include "walras/reductions.h"
#include "walras/winner_determination.h"

namespace walras {
namespace {

Market UdMarket() { return Market{2, {UnitDemand{{2, 1}}, UnitDemand{{1, 2}}}}; }
Market NoWeMarket() {
  return Market{2, {SingleMinded{ItemSet{0, 1}, 3}, UnitDemand{{2, 2}}}};
}

TEST(WdBruteForce, SingleAgentTieBreak) {
  const WdResult r = WdBruteForce(Market{2, {UnitDemand{{7, 1}}}});
  EXPECT_EQ(r.welfare, 7);
  EXPECT_EQ(r.allocation.bundles[0], ItemSet{0});
  EXPECT_EQ(r.algorithm, WdAlgorithm::kBruteForce);
}

TEST(WdBruteForce, DisjointDemands) {
  EXPECT_EQ(WdBruteForce(Market{2, {UnitDemand{{5, 0}}, UnitDemand{{0, 5}}}}).welfare, 10);
}

TEST(WdBruteForce, NoWeMarket) {
  EXPECT_EQ(WdBruteForce(NoWeMarket()).welfare, 3);
  EXPECT_EQ(oracle::OptimalWelfare(NoWeMarket()), 3);
}

TEST(WdBruteForce, Budget) {
  Market big{20, std::vector<Valuation>(3, Additive{std::vector<Amount>(20, 1)})};
  EXPECT_THROW(WdBruteForce(big), BudgetExceeded);
}

TEST(WdUnitDemand, Examples) {
  const WdResult r = WdUnitDemand(UdMarket());
  EXPECT_EQ(r.welfare, 4);
  EXPECT_EQ(r.allocation.bundles, (std::vector<ItemSet>{ItemSet{0}, ItemSet{1}}));
  EXPECT_EQ(WdUnitDemand(Market{1, {UnitDemand{{3}}}}).welfare, 3);
  const WdResult zero = WdUnitDemand(Market{2, {UnitDemand{{0, 0}}, UnitDemand{{0, 0}}}});
  EXPECT_EQ(zero.welfare, 0);
  EXPECT_EQ(zero.allocation.Allocated(), ItemSet());
  EXPECT_THROW(WdUnitDemand(NoWeMarket()), InvalidInput);
}

TEST(WdPairMarket, Examples) {
  EXPECT_EQ(WdPairMarket(Market{3, {SingleMinded{ItemSet{0, 1}, 3},
                                    SingleMinded{ItemSet{1, 2}, 3}}})
                .welfare,
            3);
  EXPECT_EQ(WdPairMarket(Market{4, {SingleMinded{ItemSet{0, 1}, 3},
                                    SingleMinded{ItemSet{2, 3}, 4}}})
                .welfare,
            7);
  const WdResult r =
      WdPairMarket(Market{2, {MultiMindedPair{0, 1, 2, 2, 3}, UnitDemand{{0, 2}}}});
  EXPECT_EQ(r.welfare, 4);
  EXPECT_EQ(r.allocation.bundles, (std::vector<ItemSet>{ItemSet{0}, ItemSet{1}}));
  EXPECT_THROW(WdPairMarket(Market{3, {SingleMinded{ItemSet{0, 1, 2}, 1}}}), InvalidInput);
}

TEST(WdPairMarket, SharedPairGoesToLowestIndexAmongTop) {
  const WdResult r = WdPairMarket(Market{2, {SingleMinded{ItemSet{0, 1}, 2},
                                             SingleMinded{ItemSet{0, 1}, 5},
                                             SingleMinded{ItemSet{0, 1}, 5}}});
  EXPECT_EQ(r.welfare, 5);
  EXPECT_EQ(r.allocation.bundles[1], (ItemSet{0, 1}));
}

TEST(WdFewItemsDp, Examples) {
  const Market one{3, {Xos{{{1, 2, 3}, {4, 0, 0}}}}};
  EXPECT_EQ(WdFewItemsDp(one).welfare, Eval(one, 0, ItemSet{0, 1, 2}));
  EXPECT_EQ(WdFewItemsDp(Market{3, {Additive{{0, 0, 0}}, UnitDemand{{0, 0, 0}}}}).welfare, 0);
  Market wide{15, {Additive{std::vector<Amount>(15, 1)}}};
  EXPECT_THROW(WdFewItemsDp(wide), BudgetExceeded);
}

TEST(WdFewAgentsEnum, Examples) {
  const Market ud{3, {UnitDemand{{2, 1, 0}}, UnitDemand{{1, 2, 0}}}};
  EXPECT_EQ(WdFewAgentsEnum(ud, 1).welfare, 4);
  EXPECT_EQ(WdFewAgentsEnum(ud, 1).welfare, WdUnitDemand(ud).welfare);

  const KDemandTable t{2, {{ItemSet{0}, 2}, {ItemSet{1, 2}, 6}, {ItemSet{0, 3}, 5}}};
  EXPECT_EQ(WdFewAgentsEnum(Market{4, {t}}, 2).welfare, 6);

  const ThreeDmInstance sat{2, {{0, 0, 0}, {1, 1, 1}}};
  const Market reduced = std::get<Market>(FromThreeDm(sat));
  EXPECT_EQ(WdFewAgentsEnum(reduced, 2).welfare, 4);
  EXPECT_EQ(WdBruteForce(reduced).welfare, 4);

  EXPECT_THROW(WdFewAgentsEnum(Market{3, {Additive{{1, 1, 1}}}}, 2), InvalidInput);
}

TEST(WdDispatch, Tags) {
  EXPECT_EQ(WdDispatch(UdMarket()).algorithm, WdAlgorithm::kUnitDemandMatching);
  EXPECT_EQ(WdDispatch(Market{3, {SingleMinded{ItemSet{0, 1}, 3},
                                  SingleMinded{ItemSet{1, 2}, 3}}})
                .algorithm,
            WdAlgorithm::kPairMatching);
  const ThreePartitionInstance inst{{1, 2, 3, 1, 2, 3, 2, 2, 2}, 3, false};
  const WdResult r = WdDispatch(FromThreePartition(inst));
  EXPECT_EQ(r.algorithm, WdAlgorithm::kFewItemsDp);
  EXPECT_EQ(r.welfare, 18);
}

TEST(WdDispatch, FallsBackToEnumerationBeyondDp) {
  // 20 items rule out the DP; two 2-demand agents fit the enumeration.
  std::vector<Amount> a(20, 0), b(20, 0);
  a[3] = 4;
  a[7] = 5;
  b[7] = 6;
  b[19] = 1;
  const Market market{20, {BudgetAdditive{a, 8}, BudgetAdditive{b, 6}}};
  const WdResult r = WdDispatch(market);
  EXPECT_EQ(r.algorithm, WdAlgorithm::kFewAgentsEnum);
  EXPECT_EQ(r.welfare, 4 + 6 + 0);
}

TEST(AlgorithmTags, RoundTrip) {
  for (auto a : {WdAlgorithm::kBruteForce, WdAlgorithm::kUnitDemandMatching,
                 WdAlgorithm::kPairMatching, WdAlgorithm::kFewItemsDp,
                 WdAlgorithm::kFewAgentsEnum}) {
    EXPECT_EQ(AlgorithmFromTag(AlgorithmTag(a)), a);
  }
  EXPECT_EQ(AlgorithmTag(WdAlgorithm::kPairMatching), "pair-matching");
  EXPECT_FALSE(AlgorithmFromTag("greedy").has_value());
}

struct SolverCase {
  const char* name;
  MarketFamily family;
  WdAlgorithm algorithm;
};

class OracleEquivalence : public ::testing::TestWithParam<SolverCase> {};

TEST_P(OracleEquivalence, WelfareMatchesExhaustiveOracle) {
  const SolverCase c = GetParam();
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    oracle::Gen gen(seed * 7 + 1);
    RandomMarketParams p;
    p.family = c.family;
    p.agents = static_cast<int>(gen.Int(1, 4));
    p.items = static_cast<int>(gen.Int(c.family == MarketFamily::kPair ? 2 : 1, 7));
    p.value_bound = 10;
    p.k = static_cast<int>(gen.Int(1, std::min(p.items, 3)));
    p.seed = seed;
    const Market market = RandomMarket(p);
    const WdResult r = WdRun(market, c.algorithm);
    ASSERT_EQ(r.welfare, oracle::OptimalWelfare(market)) << c.name << " seed " << seed;
    ASSERT_NO_THROW(CheckAllocation(market, r.allocation));
    ASSERT_EQ(SocialWelfare(market, r.allocation), r.welfare);
    if (c.algorithm == WdAlgorithm::kFewAgentsEnum) {
      int k = 1;
      for (const auto& v : market.valuations) k = std::max(k, DemandBound(v));
      for (ItemSet b : r.allocation.bundles) ASSERT_LE(b.size(), k);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Solvers, OracleEquivalence,
    ::testing::Values(
        SolverCase{"bruteforce", MarketFamily::kMixed, WdAlgorithm::kBruteForce},
        SolverCase{"ud", MarketFamily::kUnitDemand, WdAlgorithm::kUnitDemandMatching},
        SolverCase{"pair", MarketFamily::kPairMarket, WdAlgorithm::kPairMatching},
        SolverCase{"dp", MarketFamily::kMixed, WdAlgorithm::kFewItemsDp},
        SolverCase{"enum_table", MarketFamily::kKDemandTable, WdAlgorithm::kFewAgentsEnum},
        SolverCase{"enum_xos", MarketFamily::kXos, WdAlgorithm::kFewAgentsEnum},
        SolverCase{"enum_ud", MarketFamily::kUnitDemand, WdAlgorithm::kFewAgentsEnum}),
    [](const auto& info) { return std::string(info.param.name); });

Market Scale(const Market& market, Amount c) {
  Market out = market;
  for (Valuation& v : out.valuations) {
    std::visit(
        [c](auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, UnitDemand> || std::is_same_v<T, Additive>) {
            for (auto& a : x.values) a *= c;
          } else if constexpr (std::is_same_v<T, BudgetAdditive>) {
            for (auto& a : x.values) a *= c;
            x.budget *= c;
          } else if constexpr (std::is_same_v<T, SingleMinded>) {
            x.value *= c;
          } else if constexpr (std::is_same_v<T, MultiMindedPair>) {
            x.value_a *= c;
            x.value_b *= c;
            x.value_ab *= c;
          } else if constexpr (std::is_same_v<T, KDemandTable>) {
            for (auto& [key, a] : x.entries) a *= c;
          } else {
            for (auto& row : x.rows) {
              for (auto& a : row) a *= c;
            }
          }
        },
        v);
  }
  return out;
}

TEST(WdProperties, ScalingAndZeroAgent) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    RandomMarketParams p{MarketFamily::kMixed, 3, 6, 10, 2, seed};
    const Market market = RandomMarket(p);
    const Amount c = 1 + static_cast<Amount>(seed % 5);
    const Market scaled = Scale(market, c);
    for (auto algo : {WdAlgorithm::kBruteForce, WdAlgorithm::kFewItemsDp}) {
      ASSERT_EQ(WdRun(scaled, algo).welfare, c * WdRun(market, algo).welfare);
    }
    Market extra = market;
    extra.valuations.push_back(UnitDemand{std::vector<Amount>(6, 0)});
    ASSERT_EQ(WdDispatch(extra).welfare, WdDispatch(market).welfare);
  }
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Market ud = RandomMarket({MarketFamily::kUnitDemand, 4, 6, 10, 1, seed});
    ASSERT_EQ(WdUnitDemand(Scale(ud, 7)).welfare, 7 * WdUnitDemand(ud).welfare);
    const Market pm = RandomMarket({MarketFamily::kPairMarket, 4, 6, 10, 2, seed});
    ASSERT_EQ(WdPairMarket(Scale(pm, 3)).welfare, 3 * WdPairMarket(pm).welfare);
  }
}

}  // namespace
}  // namespace walras
