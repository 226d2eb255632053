#include "walras/matching.h"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "walras/errors.h"

namespace walras {

WeightedBipartiteGraph::WeightedBipartiteGraph(int left_count, int right_count)
    : left_count_(left_count), right_count_(right_count) {
  if (left_count < 0 || right_count < 0) {
    throw InvalidInput("bipartite graph sides must be nonnegative");
  }
  weights_.assign(static_cast<std::size_t>(left_count) * right_count, 0);
}

void WeightedBipartiteGraph::SetWeight(int left, int right, Amount weight) {
  if (left < 0 || left >= left_count_ || right < 0 || right >= right_count_) {
    throw InvalidInput("bipartite edge (" + std::to_string(left) + ", " +
                       std::to_string(right) + ") out of range");
  }
  if (weight < 0) throw InvalidInput("bipartite edge weight is negative");
  weights_[static_cast<std::size_t>(left) * right_count_ + right] = weight;
}

namespace {

// Minimum-cost perfect assignment on a square matrix (potentials method).
// Returns row_to_col.
std::vector<int> SolveAssignment(const std::vector<std::vector<Amount>>& cost) {
  const int n = static_cast<int>(cost.size());
  constexpr Amount kInf = std::numeric_limits<Amount>::max() / 4;
  std::vector<Amount> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> col_owner(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    col_owner[0] = i;
    int j0 = 0;
    std::vector<Amount> min_slack(n + 1, kInf);
    std::vector<bool> visited(n + 1, false);
    do {
      visited[j0] = true;
      const int i0 = col_owner[j0];
      Amount delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (visited[j]) continue;
        const Amount reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (visited[j]) {
          u[col_owner[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_owner[j0] != 0);
    do {
      const int j1 = way[j0];
      col_owner[j0] = col_owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (col_owner[j] != 0) row_to_col[col_owner[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Optimal matching weight restricted to the given left and right vertices.
Amount OptimalWeight(const WeightedBipartiteGraph& g,
                     const std::vector<int>& lefts,
                     const std::vector<int>& rights) {
  const int n = static_cast<int>(std::max(lefts.size(), rights.size()));
  if (lefts.empty() || rights.empty()) return 0;
  // Padding rows and columns cost 0; weights are nonnegative, so the best
  // perfect assignment of the padded square matrix is a maximum matching.
  std::vector<std::vector<Amount>> cost(n, std::vector<Amount>(n, 0));
  for (std::size_t a = 0; a < lefts.size(); ++a) {
    for (std::size_t b = 0; b < rights.size(); ++b) {
      cost[a][b] = -g.weight(lefts[a], rights[b]);
    }
  }
  const std::vector<int> assignment = SolveAssignment(cost);
  Amount total = 0;
  for (std::size_t a = 0; a < lefts.size(); ++a) {
    const int b = assignment[a];
    if (b >= 0 && static_cast<std::size_t>(b) < rights.size()) {
      total += g.weight(lefts[a], rights[b]);
    }
  }
  return total;
}

}  // namespace

Matching MaxWeightBipartiteMatching(const WeightedBipartiteGraph& graph) {
  const int left_count = graph.left_count();
  const int right_count = graph.right_count();
  std::vector<int> all_left(left_count), free_right(right_count);
  for (int i = 0; i < left_count; ++i) all_left[i] = i;
  for (int j = 0; j < right_count; ++j) free_right[j] = j;
  const Amount target = OptimalWeight(graph, all_left, free_right);

  // Sorted pair lists order by left vertex first, so fix left vertices in
  // order, giving each the smallest partner that still admits an optimum.
  Matching result;
  for (int left = 0; left < left_count && result.total_weight < target;
       ++left) {
    std::vector<int> later_left;
    for (int i = left + 1; i < left_count; ++i) later_left.push_back(i);
    for (std::size_t pos = 0; pos < free_right.size(); ++pos) {
      const int right = free_right[pos];
      const Amount w = graph.weight(left, right);
      if (w == 0) continue;
      std::vector<int> rest = free_right;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      if (result.total_weight + w + OptimalWeight(graph, later_left, rest) ==
          target) {
        result.pairs.emplace_back(left, right);
        result.total_weight += w;
        free_right = std::move(rest);
        break;
      }
    }
  }
  return result;
}

namespace {

class PackingSearch {
 public:
  PackingSearch(const WeightedHypergraph& graph) : graph_(graph) {
    words_ = (graph.vertex_count + 63) / 64;
    masks_.assign(graph.edges.size() * words_, 0);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      for (int vertex : graph.edges[e].vertices) {
        masks_[e * words_ + vertex / 64] |= std::uint64_t{1} << (vertex % 64);
      }
    }
    used_.assign(words_, 0);
  }

  SetPacking Run() {
    Visit(0, 0);
    return best_;
  }

 private:
  bool Fits(std::size_t e) const {
    for (int w = 0; w < words_; ++w) {
      if (masks_[e * words_ + w] & used_[w]) return false;
    }
    return true;
  }

  void Toggle(std::size_t e) {
    for (int w = 0; w < words_; ++w) used_[w] ^= masks_[e * words_ + w];
  }

  // Preorder over ascending index sequences is lexicographic order, so only
  // strict improvements replace the incumbent.
  void Visit(std::size_t start, Amount weight) {
    if (!found_ || weight > best_.total_weight) {
      best_.edges = current_;
      best_.total_weight = weight;
      found_ = true;
    }
    for (std::size_t e = start; e < graph_.edges.size(); ++e) {
      if (!Fits(e)) continue;
      Toggle(e);
      current_.push_back(static_cast<int>(e));
      Visit(e + 1, weight + graph_.edges[e].weight);
      current_.pop_back();
      Toggle(e);
    }
  }

  const WeightedHypergraph& graph_;
  int words_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> used_;
  std::vector<int> current_;
  SetPacking best_;
  bool found_ = false;
};

}  // namespace

SetPacking MaxWeightSetPacking(const WeightedHypergraph& graph, int edge_cap) {
  if (static_cast<int>(graph.edges.size()) > edge_cap) {
    throw BudgetExceeded("set packing over " +
                         std::to_string(graph.edges.size()) +
                         " edges exceeds the cap of " +
                         std::to_string(edge_cap));
  }
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const Hyperedge& edge = graph.edges[e];
    if (edge.vertices.empty()) {
      throw InvalidInput("hyperedge " + std::to_string(e) + " is empty");
    }
    for (int vertex : edge.vertices) {
      if (vertex < 0 || vertex >= graph.vertex_count) {
        throw InvalidInput("hyperedge " + std::to_string(e) +
                           " has out-of-range vertex " +
                           std::to_string(vertex));
      }
    }
    if (edge.weight < 0) {
      throw InvalidInput("hyperedge " + std::to_string(e) +
                         " has negative weight");
    }
  }
  return PackingSearch(graph).Run();
}

namespace {

struct VertexSet {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  void Add(int v) {
    if (v < 64) {
      lo |= std::uint64_t{1} << v;
    } else {
      hi |= std::uint64_t{1} << (v - 64);
    }
  }
  bool Intersects(const VertexSet& o) const {
    return (lo & o.lo) != 0 || (hi & o.hi) != 0;
  }
  VertexSet operator|(const VertexSet& o) const { return {lo | o.lo, hi | o.hi}; }
  VertexSet operator&(const VertexSet& o) const { return {lo & o.lo, hi & o.hi}; }
};

struct StateKey {
  std::size_t edge;
  VertexSet used;
  bool operator==(const StateKey& o) const {
    return edge == o.edge && used.lo == o.used.lo && used.hi == o.used.hi;
  }
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = k.edge * 0x9E3779B97F4A7C15ull;
    h ^= k.used.lo + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= k.used.hi + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

class GeneralMatcher {
 public:
  GeneralMatcher(const std::vector<GraphEdge>& edges, std::uint64_t budget)
      : edges_(edges), budget_(budget) {
    ends_.resize(edges.size());
    suffix_.resize(edges.size() + 1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      ends_[e].Add(edges[e].u);
      ends_[e].Add(edges[e].v);
    }
    for (std::size_t e = edges.size(); e-- > 0;) {
      suffix_[e] = suffix_[e + 1] | ends_[e];
    }
  }

  GeneralMatching Run() {
    GeneralMatching result;
    VertexSet used;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (Takeable(e, used) &&
          edges_[e].weight + Best(e + 1, used | ends_[e]) >= Best(e + 1, used)) {
        result.edges.push_back(static_cast<int>(e));
        result.total_weight += edges_[e].weight;
        used = used | ends_[e];
      }
    }
    return result;
  }

 private:
  bool Takeable(std::size_t e, const VertexSet& used) const {
    return edges_[e].weight > 0 && !ends_[e].Intersects(used);
  }

  // Best weight obtainable from edges [e, end) given matched vertices.
  Amount Best(std::size_t e, VertexSet used) {
    if (e == edges_.size()) return 0;
    used = used & suffix_[e];
    const StateKey key{e, used};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= budget_) {
      throw BudgetExceeded("general matching search exceeded " +
                           std::to_string(budget_) + " states");
    }
    Amount best = Best(e + 1, used);
    if (Takeable(e, used)) {
      best = std::max(best, edges_[e].weight + Best(e + 1, used | ends_[e]));
    }
    memo_.emplace(key, best);
    return best;
  }

  const std::vector<GraphEdge>& edges_;
  std::uint64_t budget_;
  std::vector<VertexSet> ends_;
  std::vector<VertexSet> suffix_;
  std::unordered_map<StateKey, Amount, StateKeyHash> memo_;
};

}  // namespace

GeneralMatching MaxWeightGeneralMatching(int vertex_count,
                                         const std::vector<GraphEdge>& edges,
                                         std::uint64_t state_budget) {
  if (vertex_count > kMaxGeneralMatchingVertices) {
    throw BudgetExceeded("general matching supports at most " +
                         std::to_string(kMaxGeneralMatchingVertices) +
                         " vertices, got " + std::to_string(vertex_count));
  }
  for (const GraphEdge& edge : edges) {
    if (edge.u < 0 || edge.u >= vertex_count || edge.v < 0 ||
        edge.v >= vertex_count || edge.u == edge.v) {
      throw InvalidInput("graph edge (" + std::to_string(edge.u) + ", " +
                         std::to_string(edge.v) + ") is invalid");
    }
    if (edge.weight < 0) throw InvalidInput("graph edge weight is negative");
  }
  return GeneralMatcher(edges, state_budget).Run();
}

}  // namespace walras
