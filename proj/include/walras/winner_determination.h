#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "walras/market.h"

namespace walras {

enum class WdAlgorithm {
  kBruteForce,
  kUnitDemandMatching,
  kPairMatching,
  kFewItemsDp,
  kFewAgentsEnum,
};

// "bruteforce", "unit-demand-matching", "pair-matching", "few-items-dp",
// "few-agents-enum".
std::string_view AlgorithmTag(WdAlgorithm algorithm);
std::optional<WdAlgorithm> AlgorithmFromTag(std::string_view tag);

struct WdResult {
  Allocation allocation;
  Amount welfare = 0;
  WdAlgorithm algorithm = WdAlgorithm::kBruteForce;
};

// Search budgets. Exceeding any of them raises BudgetExceeded.
struct WdOptions {
  // (n+1)^m assignments enumerated by the brute-force oracle.
  std::uint64_t bruteforce_assignments = std::uint64_t{1} << 22;
  // Memo states of the general-graph matching behind the pair solver.
  std::uint64_t pair_matching_states = std::uint64_t{1} << 22;
  // Item count and 3^m * n subset transitions of the few-items DP.
  int dp_max_items = 14;
  std::uint64_t dp_transitions = std::uint64_t{4782969} * 64;  // 3^14 * 64
  // Candidate (k*n)-subsets, hyperedges per subset, and total hyperedges
  // generated by the few-agents enumeration.
  std::uint64_t enum_candidate_sets = 100'000;
  int enum_hyperedges = 512;
  std::uint64_t enum_total_hyperedges = 20'000'000;
  // Bundles scanned when checking that a valuation is k-demand.
  std::uint64_t kdemand_check_bundles = std::uint64_t{1} << 20;
};

// Exhaustive oracle: every assignment of each item to an agent or to the
// unallocated pool. Ties go to the lexicographically smallest item-to-agent
// vector (0 = unallocated, i = agent i in 1-based numbering).
WdResult WdBruteForce(const Market& market, const WdOptions& options = {});

// All agents unit-demand: maximum weight bipartite matching of agents to
// items.
WdResult WdUnitDemand(const Market& market, const WdOptions& options = {});

// Agents are unit-demand, single-minded over at most two items, or
// multi-minded over a pair: maximum weight matching on the item graph
// extended with one private vertex per unit-demand or pair agent.
WdResult WdPairMarket(const Market& market, const WdOptions& options = {});

// Subset DP over (agent prefix, item subset); ties pick the smallest bundle
// mask for the later agent.
WdResult WdFewItemsDp(const Market& market, const WdOptions& options = {});

// Enumerates candidate sets of k*n items and packs (bundle, agent)
// hyperedges over each; every valuation must be k-demand.
WdResult WdFewAgentsEnum(const Market& market, int k,
                         const WdOptions& options = {});

// First applicable exact solver in the order unit-demand matching, pair
// matching, few-items DP, few-agents enumeration, brute force.
WdResult WdDispatch(const Market& market, const WdOptions& options = {});

// Runs the solver named by `algorithm`; for kFewAgentsEnum uses the largest
// DemandBound over the agents as k.
WdResult WdRun(const Market& market, WdAlgorithm algorithm,
               const WdOptions& options = {});

// True if every agent is unit-demand.
bool IsUnitDemandMarket(const Market& market);
// True if every agent is unit-demand, single-minded on at most two items, or
// a multi-minded pair.
bool IsPairMarket(const Market& market);

}  // namespace walras
