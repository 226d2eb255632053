#include <gtest/gtest.h>

#include <functional>

#include "test_oracles.h"
#include "walras/errors.h"
#include "walras/matching.h"

namespace walras {
namespace {

WeightedBipartiteGraph Graph(const std::vector<std::vector<Amount>>& w) {
  WeightedBipartiteGraph g(static_cast<int>(w.size()),
                           w.empty() ? 0 : static_cast<int>(w[0].size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w[i].size(); ++j) {
      g.SetWeight(static_cast<int>(i), static_cast<int>(j), w[i][j]);
    }
  }
  return g;
}

using Pairs = std::vector<std::pair<int, int>>;

TEST(BipartiteMatching, SmallExample) {
  const Matching m = MaxWeightBipartiteMatching(Graph({{1, 2}, {3, 0}}));
  EXPECT_EQ(m.total_weight, 5);
  EXPECT_EQ(m.pairs, (Pairs{{0, 1}, {1, 0}}));
}

TEST(BipartiteMatching, ZeroEdgeIsOmitted) {
  const Matching m = MaxWeightBipartiteMatching(Graph({{0}}));
  EXPECT_EQ(m.total_weight, 0);
  EXPECT_TRUE(m.pairs.empty());
}

TEST(BipartiteMatching, Identity) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<Amount>> w(n, std::vector<Amount>(n, 0));
    Pairs diagonal;
    for (int i = 0; i < n; ++i) {
      w[i][i] = 1;
      diagonal.push_back({i, i});
    }
    const Matching m = MaxWeightBipartiteMatching(Graph(w));
    EXPECT_EQ(m.total_weight, n);
    EXPECT_EQ(m.pairs, diagonal);
  }
}

TEST(BipartiteMatching, RejectsBadWeights) {
  WeightedBipartiteGraph g(2, 2);
  EXPECT_THROW(g.SetWeight(0, 0, -1), InvalidInput);
  EXPECT_THROW(g.SetWeight(2, 0, 1), InvalidInput);
}

TEST(BipartiteMatching, EmptySides) {
  EXPECT_EQ(MaxWeightBipartiteMatching(WeightedBipartiteGraph(0, 3)).total_weight, 0);
  EXPECT_EQ(MaxWeightBipartiteMatching(WeightedBipartiteGraph(3, 0)).total_weight, 0);
}

// Best weight and lexicographically smallest pair list by trying every
// partial assignment of left vertices.
std::pair<Amount, Pairs> BruteBipartite(const std::vector<std::vector<Amount>>& w) {
  const int l = static_cast<int>(w.size());
  const int r = l ? static_cast<int>(w[0].size()) : 0;
  Amount best = -1;
  Pairs best_pairs;
  Pairs current;
  std::vector<bool> used(r, false);
  std::function<void(int, Amount)> rec = [&](int i, Amount total) {
    if (i == l) {
      if (total > best || (total == best && current < best_pairs)) {
        best = total;
        best_pairs = current;
      }
      return;
    }
    rec(i + 1, total);
    for (int j = 0; j < r; ++j) {
      if (used[j] || w[i][j] == 0) continue;
      used[j] = true;
      current.push_back({i, j});
      rec(i + 1, total + w[i][j]);
      current.pop_back();
      used[j] = false;
    }
  };
  rec(0, 0);
  return {best, best_pairs};
}

TEST(BipartiteMatching, MatchesBruteForceWithTieBreak) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 600; ++trial) {
    const int l = static_cast<int>(gen.Int(1, 6));
    const int r = static_cast<int>(gen.Int(1, 6));
    const Amount bound = trial % 3 == 0 ? 2 : 10;  // small bounds force ties
    std::vector<std::vector<Amount>> w(l, std::vector<Amount>(r));
    for (auto& row : w) {
      for (auto& x : row) x = gen.Int(0, bound);
    }
    const Matching m = MaxWeightBipartiteMatching(Graph(w));
    const auto [best, pairs] = BruteBipartite(w);
    ASSERT_EQ(m.total_weight, best) << "trial " << trial;
    ASSERT_EQ(m.pairs, pairs) << "trial " << trial;
    Amount recomputed = 0;
    for (auto [i, j] : m.pairs) recomputed += w[i][j];
    ASSERT_EQ(recomputed, m.total_weight);
  }
}

TEST(BipartiteMatching, ScalingKeepsSelection) {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = static_cast<int>(gen.Int(1, 6));
    const int r = static_cast<int>(gen.Int(1, 6));
    const Amount c = gen.Int(1, 9);
    std::vector<std::vector<Amount>> w(l, std::vector<Amount>(r));
    auto scaled = w;
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < r; ++j) {
        w[i][j] = gen.Int(0, 10);
        scaled[i][j] = c * w[i][j];
      }
    }
    const Matching a = MaxWeightBipartiteMatching(Graph(w));
    const Matching b = MaxWeightBipartiteMatching(Graph(scaled));
    ASSERT_EQ(b.total_weight, c * a.total_weight);
    ASSERT_EQ(a.pairs, b.pairs);
  }
}

TEST(SetPacking, TieGoesToSmallestIndexSequence) {
  const WeightedHypergraph g{4, {{{0, 1}, 3}, {{1, 2}, 3}, {{3}, 1}}};
  const SetPacking p = MaxWeightSetPacking(g);
  EXPECT_EQ(p.total_weight, 4);
  EXPECT_EQ(p.edges, (std::vector<int>{0, 2}));
}

TEST(SetPacking, NoEdges) {
  const SetPacking p = MaxWeightSetPacking(WeightedHypergraph{3, {}});
  EXPECT_EQ(p.total_weight, 0);
  EXPECT_TRUE(p.edges.empty());
}

TEST(SetPacking, SingleEdge) {
  const SetPacking p = MaxWeightSetPacking(WeightedHypergraph{3, {{{0, 1, 2}, 7}}});
  EXPECT_EQ(p.total_weight, 7);
  EXPECT_EQ(p.edges, (std::vector<int>{0}));
}

TEST(SetPacking, Errors) {
  WeightedHypergraph big{2, std::vector<Hyperedge>(25, Hyperedge{{0}, 1})};
  EXPECT_THROW(MaxWeightSetPacking(big), BudgetExceeded);
  EXPECT_NO_THROW(MaxWeightSetPacking(big, 25));
  EXPECT_THROW(MaxWeightSetPacking(WeightedHypergraph{2, {{{}, 1}}}), InvalidInput);
  EXPECT_THROW(MaxWeightSetPacking(WeightedHypergraph{2, {{{2}, 1}}}), InvalidInput);
}

std::pair<Amount, std::vector<int>> BrutePacking(const WeightedHypergraph& g) {
  const int e = static_cast<int>(g.edges.size());
  Amount best = -1;
  std::vector<int> best_edges;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << e); ++pick) {
    std::vector<bool> used(g.vertex_count, false);
    bool ok = true;
    Amount total = 0;
    std::vector<int> chosen;
    for (int i = 0; i < e && ok; ++i) {
      if (!(pick >> i & 1)) continue;
      chosen.push_back(i);
      total += g.edges[i].weight;
      for (int v : g.edges[i].vertices) {
        if (used[v]) ok = false;
        used[v] = true;
      }
    }
    if (!ok) continue;
    if (total > best || (total == best && chosen < best_edges)) {
      best = total;
      best_edges = chosen;
    }
  }
  return {best, best_edges};
}

TEST(SetPacking, MatchesBruteForce) {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 400; ++trial) {
    WeightedHypergraph g;
    g.vertex_count = static_cast<int>(gen.Int(1, 8));
    const int e = static_cast<int>(gen.Int(0, 10));
    for (int i = 0; i < e; ++i) {
      Hyperedge h;
      for (int v = 0; v < g.vertex_count; ++v) {
        if (gen.Int(0, 2) == 0) h.vertices.push_back(v);
      }
      if (h.vertices.empty()) h.vertices.push_back(static_cast<int>(gen.Int(0, g.vertex_count - 1)));
      h.weight = gen.Int(0, trial % 2 ? 3 : 10);
      g.edges.push_back(h);
    }
    const SetPacking p = MaxWeightSetPacking(g);
    const auto [best, edges] = BrutePacking(g);
    ASSERT_EQ(p.total_weight, best) << "trial " << trial;
    ASSERT_EQ(p.edges, edges) << "trial " << trial;

    WeightedHypergraph scaled = g;
    for (auto& h : scaled.edges) h.weight *= 3;
    const SetPacking q = MaxWeightSetPacking(scaled);
    ASSERT_EQ(q.total_weight, 3 * p.total_weight);
    ASSERT_EQ(q.edges, p.edges);
  }
}

TEST(GeneralMatching, MatchesBruteForce) {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 400; ++trial) {
    const int vertices = static_cast<int>(gen.Int(2, 8));
    const int e = static_cast<int>(gen.Int(0, 12));
    std::vector<GraphEdge> edges;
    for (int i = 0; i < e; ++i) {
      int u = static_cast<int>(gen.Int(0, vertices - 1));
      int v = static_cast<int>(gen.Int(0, vertices - 2));
      if (v >= u) ++v;
      edges.push_back({u, v, gen.Int(0, 6)});
    }
    const GeneralMatching got = MaxWeightGeneralMatching(vertices, edges);
    Amount best = 0;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << e); ++pick) {
      std::uint64_t used = 0;
      Amount total = 0;
      bool ok = true;
      for (int i = 0; i < e && ok; ++i) {
        if (!(pick >> i & 1)) continue;
        const std::uint64_t ends = (std::uint64_t{1} << edges[i].u) | (std::uint64_t{1} << edges[i].v);
        ok = (used & ends) == 0;
        used |= ends;
        total += edges[i].weight;
      }
      if (ok) best = std::max(best, total);
    }
    ASSERT_EQ(got.total_weight, best) << "trial " << trial;
    std::uint64_t used = 0;
    Amount total = 0;
    for (int i : got.edges) {
      const std::uint64_t ends = (std::uint64_t{1} << edges[i].u) | (std::uint64_t{1} << edges[i].v);
      ASSERT_EQ(used & ends, 0u);
      ASSERT_GT(edges[i].weight, 0);
      used |= ends;
      total += edges[i].weight;
    }
    ASSERT_EQ(total, got.total_weight);
  }
}

TEST(GeneralMatching, BudgetExceeded) {
  std::vector<GraphEdge> edges;
  for (int u = 0; u < 20; ++u) {
    for (int v = u + 1; v < 20; ++v) edges.push_back({u, v, 1 + (u * v) % 5});
  }
  EXPECT_THROW(MaxWeightGeneralMatching(20, edges, 1000), BudgetExceeded);
}

}  // namespace
}  // namespace walras
