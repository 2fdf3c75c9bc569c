#pragma once

#include <vector>

#include "deplist/algorithms.hpp"
#include "deplist/dag.hpp"
#include "deplist/list_state.hpp"

namespace deplist {

/// One step of the brute-force offline optimum.
struct OptStep {
  ListState pre_service;  // configuration in which the request was served
  ListState after;        // configuration after the step (post insert/delete)
  long long transposition_cost = 0;
  long long service_cost = 0;
};

struct OptTrace {
  long long total_cost = 0;
  std::vector<OptStep> per_step;
};

inline constexpr int kDefaultConfigNodeLimit = 7;  // 7! = 5040 configurations unconstrained

/// All orderings consistent with the DAG, lexicographic by node id. Refuses
/// (TooLarge) beyond node_limit nodes.
std::vector<ListState> enumerate_linear_extensions(const DependencyDag& dag,
                                                   int node_limit = kDefaultConfigNodeLimit);

/// Minimum number of feasible adjacent swaps turning `from` into `to`: the
/// Kendall-tau pair count. Oppositely-ordered pairs are never constrained
/// pairs when both lists satisfy the DAG, and a sorting argument realizes the
/// bound with feasible swaps only; bfs_distance_oracle guards this in tests.
long long transposition_distance(const DependencyDag& dag, const ListState& from,
                                 const ListState& to);

/// Independent oracle: shortest path in the graph whose vertices are the
/// linear extensions and whose edges are single feasible adjacent swaps.
long long bfs_distance_oracle(const DependencyDag& dag, const ListState& from,
                              const ListState& to, int node_limit = 6);

/// Dynamic program over (step, configuration). Rearrangement is modeled as
/// happening immediately before each service; insert steps pay the distance on
/// the pre-insert node set plus a free splice at any feasible slot (cost n
/// before insertion); delete steps charge the preceding-node count. Ties are
/// broken by the lexicographically smallest configuration sequence.
OptTrace opt_cost(const DependencyDag& dag, const ListState& initial,
                  const std::vector<Request>& requests,
                  int node_limit = kDefaultConfigNodeLimit);

/// Least rearrangement of `initial` (present nodes only) after which node x
/// can be spliced in feasibly: min distance to any feasible pre-splice
/// configuration of the post-insert DAG.
long long min_insert_rearrangement(const DependencyDag& dag_after_insert, const ListState& initial,
                                   NodeId x, int node_limit = 9);

}  // namespace deplist
