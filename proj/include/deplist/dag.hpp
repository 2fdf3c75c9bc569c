#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "deplist/list_state.hpp"

namespace deplist {

/// Precedence-constraint DAG. An edge (u, v) means "v is a dependency of u":
/// v must precede u in every list configuration. The induced partial order is
/// the reachability relation, which is precomputed as a closure matrix at
/// build time (node counts stay small).
class DependencyDag {
 public:
  DependencyDag() = default;

  /// Validates and builds. Throws CycleDetected / UnknownNode / SelfEdge.
  static DependencyDag build(std::vector<NodeId> nodes,
                             std::vector<std::pair<NodeId, NodeId>> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  bool contains(NodeId id) const;

  /// Edges as (dependent, dependency) pairs, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;
  int edge_count() const;
  bool has_edge(NodeId u, NodeId v) const;

  /// Direct dependencies of u (its out-neighbors), ascending by id.
  const std::vector<NodeId>& dependencies_of(NodeId u) const;

  /// True iff a directed path u -> ... -> v exists (so v must precede u).
  /// Strict: reachable(u, u) is false.
  bool reachable(NodeId u, NodeId v) const;

  /// Among u's dependencies present in the list, the one furthest from the
  /// head; empty if none is present.
  std::optional<NodeId> direct_dependency(const ListState& list, NodeId u) const;

  /// DAG whose edge set is this DAG's reachability relation. Idempotent.
  DependencyDag transitive_closure() const;

  bool is_transitive() const;

  /// True iff for every edge (u, v) with both endpoints in the list, v
  /// precedes u. The list must hold a duplicate-free subset of the nodes.
  bool is_linear_extension(const ListState& list) const;

  /// New DAG with node x added; preds must precede x, x must precede succs.
  DependencyDag with_inserted(NodeId x, const std::vector<NodeId>& preds,
                              const std::vector<NodeId>& succs) const;

  /// New DAG with the node and its incident edges removed.
  DependencyDag with_removed(NodeId id) const;

  bool operator==(const DependencyDag& other) const;

 private:
  int index_of(NodeId id, const char* who) const;

  std::vector<NodeId> nodes_;               // ascending
  std::vector<int> index_;                  // id -> dense index, -1 absent
  std::vector<std::vector<NodeId>> deps_;   // dense index -> sorted dependency ids
  std::vector<std::vector<std::uint64_t>> reach_;  // closure bit rows over dense indices
};

}  // namespace deplist
