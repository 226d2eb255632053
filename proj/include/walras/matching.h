#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "walras/market.h"

namespace walras {

// Complete bipartite graph with nonnegative integer weights; a zero weight
// stands for an absent edge.
class WeightedBipartiteGraph {
 public:
  WeightedBipartiteGraph(int left_count, int right_count);

  int left_count() const { return left_count_; }
  int right_count() const { return right_count_; }
  Amount weight(int left, int right) const {
    return weights_[static_cast<std::size_t>(left) * right_count_ + right];
  }
  // Throws InvalidInput on an out-of-range index or negative weight.
  void SetWeight(int left, int right, Amount weight);

 private:
  int left_count_;
  int right_count_;
  std::vector<Amount> weights_;
};

struct Matching {
  // Sorted (left, right) pairs, all with positive weight.
  std::vector<std::pair<int, int>> pairs;
  Amount total_weight = 0;
};

// Maximum total weight matching. Zero-weight edges are never selected; among
// maximum-weight matchings the one with the lexicographically smallest sorted
// pair list is returned. Exact integer Hungarian method.
Matching MaxWeightBipartiteMatching(const WeightedBipartiteGraph& graph);

struct Hyperedge {
  std::vector<int> vertices;
  Amount weight = 0;
};

struct WeightedHypergraph {
  int vertex_count = 0;
  std::vector<Hyperedge> edges;
};

struct SetPacking {
  std::vector<int> edges;  // ascending edge indices
  Amount total_weight = 0;
};

inline constexpr int kDefaultSetPackingEdgeCap = 24;

// Pairwise-disjoint edges of maximum total weight, by exhaustive search.
// Ties go to the lexicographically smallest ascending index sequence.
// Throws BudgetExceeded when the graph has more than `edge_cap` edges and
// InvalidInput on an empty or out-of-range edge.
SetPacking MaxWeightSetPacking(const WeightedHypergraph& graph,
                               int edge_cap = kDefaultSetPackingEdgeCap);

// Edge of an ordinary (not necessarily bipartite) graph.
struct GraphEdge {
  int u = 0;
  int v = 0;
  Amount weight = 0;
};

inline constexpr int kMaxGeneralMatchingVertices = 128;
inline constexpr std::uint64_t kDefaultGeneralMatchingStates =
    std::uint64_t{1} << 22;

struct GeneralMatching {
  std::vector<int> edges;  // ascending edge indices
  Amount total_weight = 0;
};

// Maximum weight matching in a general graph by exhaustive search over edges
// in index order, memoized on (edge index, matched-vertex set). Zero-weight
// edges are never selected. Ties prefer taking the lower-indexed edge.
// Throws BudgetExceeded when more than `state_budget` memo states would be
// created or the graph has more than kMaxGeneralMatchingVertices vertices.
GeneralMatching MaxWeightGeneralMatching(
    int vertex_count, const std::vector<GraphEdge>& edges,
    std::uint64_t state_budget = kDefaultGeneralMatchingStates);

}  // namespace walras
