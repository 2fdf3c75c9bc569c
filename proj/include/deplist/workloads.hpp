#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deplist/algorithms.hpp"
#include "deplist/dag.hpp"
#include "deplist/list_state.hpp"
#include "deplist/rng.hpp"

namespace deplist {

enum class DagKind { Empty, Chain, Layered, Random, TransitiveRandom };
enum class AccessDist { Uniform, Zipf, RepeatTail, RoundRobin };

/// Deterministic workload description: identical specs produce identical
/// instances.
struct WorkloadSpec {
  DagKind dag_kind = DagKind::Empty;
  int n = 4;
  int width = 0;  // layered only; layered uses n = width * depth
  int depth = 0;
  double edge_prob = 0.3;
  AccessDist dist = AccessDist::Uniform;
  double zipf_exponent = 1.0;
  int length = 100;
  double update_mix = 0.0;  // fraction of requests that are inserts/deletes
  std::uint64_t seed = 1;
};

struct WorkloadInstance {
  std::vector<std::string> names;  // id -> name, covering future inserts
  DependencyDag dag;               // over the initially present nodes
  ListState initial;
  std::vector<Request> requests;
};

/// DAG of the requested kind over spec.n nodes. Random kinds draw edges only
/// from later-indexed to earlier-indexed nodes; transitive-random closes the
/// result.
DependencyDag gen_dag(const WorkloadSpec& spec);

/// Deterministic request sequence. With update_mix > 0 a hidden transitive
/// universe DAG over all current and future nodes is fixed first and insert
/// requests reveal their constraints against the then-present nodes, so every
/// insert admits a zero-rearrangement slot.
WorkloadInstance gen_sequence(const WorkloadSpec& spec);

/// Worst-case insertion instance: n constraint-free nodes (reds then whites),
/// and an incoming node that must follow every white and precede every red.
/// The cheapest feasible rearrangement costs (n/2)^2 swaps and no
/// zero-rearrangement slot exists.
struct QuadraticInsertInstance {
  std::vector<std::string> names;
  DependencyDag universe;     // includes x and its revealed constraints
  DependencyDag initial_dag;  // the n present nodes, no edges
  ListState initial;          // reds then whites
  Request insert;             // x, preds = whites, succs = reds
  NodeId x = 0;
};
QuadraticInsertInstance gen_quadratic_insert_instance(int n);

/// Uniform random DAG on nodes 0..n-1 (edges later -> earlier with probability
/// edge_prob). Shared by the verification sweeps.
DependencyDag random_dag(int n, double edge_prob, Rng& rng);

/// Uniformly random among the orderings consistent with the DAG.
ListState random_linear_extension(const DependencyDag& dag, Rng& rng);

std::vector<std::string> default_names(int n);  // v1..vn

}  // namespace deplist
