#include "deplist/dag.hpp"

#include <algorithm>
#include <string>

#include "deplist/errors.hpp"

namespace deplist {

namespace {

constexpr int kWordBits = 64;

inline bool test_bit(const std::vector<std::uint64_t>& row, int i) {
  return (row[i / kWordBits] >> (i % kWordBits)) & 1u;
}

inline void set_bit(std::vector<std::uint64_t>& row, int i) {
  row[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
}

inline void or_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::self_edge: return "SelfEdge";
    case Errc::duplicate_node: return "DuplicateNode";
    case Errc::node_absent: return "NodeAbsent";
    case Errc::node_present: return "NodePresent";
    case Errc::infeasible_move: return "InfeasibleMove";
    case Errc::infeasible_insert: return "InfeasibleInsert";
    case Errc::node_set_mismatch: return "NodeSetMismatch";
    case Errc::unordered_chain: return "UnorderedChain";
    case Errc::missing_bit: return "MissingBit";
    case Errc::non_empty_dag: return "NonEmptyDag";
    case Errc::too_large: return "TooLarge";
    case Errc::not_feasible: return "NotFeasible";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::bad_spec: return "BadSpec";
    case Errc::bad_cidr: return "BadCidr";
    case Errc::bad_port: return "BadPort";
  }
  return "Error";
}

DependencyDag DependencyDag::build(std::vector<NodeId> nodes,
                                   std::vector<std::pair<NodeId, NodeId>> edges) {
  DependencyDag dag;
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (nodes[i] == nodes[i + 1])
      fail(Errc::duplicate_node, "node " + std::to_string(nodes[i]) + " declared twice");
  for (NodeId id : nodes)
    if (id < 0) fail(Errc::bad_spec, "negative node id");
  dag.nodes_ = std::move(nodes);

  const int n = static_cast<int>(dag.nodes_.size());
  const NodeId max_id = n == 0 ? -1 : dag.nodes_.back();
  dag.index_.assign(max_id + 1, -1);
  for (int i = 0; i < n; ++i) dag.index_[dag.nodes_[i]] = i;

  dag.deps_.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u == v) fail(Errc::self_edge, "self edge on node " + std::to_string(u));
    int ui = dag.index_of(u, "edge endpoint");
    dag.index_of(v, "edge endpoint");
    dag.deps_[ui].push_back(v);
  }
  for (auto& d : dag.deps_) {
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }

  // Cycle check + closure in one pass: process via DFS so that a node's
  // dependencies are finished first, then fold their reach rows into it.
  const int words = (n + kWordBits - 1) / kWordBits;
  dag.reach_.assign(n, std::vector<std::uint64_t>(words, 0));
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  // iterative DFS to keep deep chains safe
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    stack.emplace_back(root, 0);
    state[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const auto& deps = dag.deps_[u];
      if (next < deps.size()) {
        int v = dag.index_[deps[next]];
        ++next;
        if (state[v] == 1) fail(Errc::cycle_detected, "dependency cycle through node " +
                                                          std::to_string(dag.nodes_[v]));
        if (state[v] == 0) {
          state[v] = 1;
          stack.emplace_back(v, 0);
        }
      } else {
        for (NodeId dep : deps) {
          int v = dag.index_[dep];
          set_bit(dag.reach_[u], v);
          or_into(dag.reach_[u], dag.reach_[v]);
        }
        state[u] = 2;
        stack.pop_back();
      }
    }
  }
  return dag;
}

int DependencyDag::index_of(NodeId id, const char* who) const {
  if (id < 0 || id >= static_cast<int>(index_.size()) || index_[id] < 0)
    fail(Errc::unknown_node, std::string(who) + ": node " + std::to_string(id) + " not in DAG");
  return index_[id];
}

bool DependencyDag::contains(NodeId id) const {
  return id >= 0 && id < static_cast<int>(index_.size()) && index_[id] >= 0;
}

std::vector<std::pair<NodeId, NodeId>> DependencyDag::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (NodeId v : deps_[i]) out.emplace_back(nodes_[i], v);
  std::sort(out.begin(), out.end());
  return out;
}

int DependencyDag::edge_count() const {
  int total = 0;
  for (const auto& d : deps_) total += static_cast<int>(d.size());
  return total;
}

bool DependencyDag::has_edge(NodeId u, NodeId v) const {
  const auto& d = deps_[index_of(u, "has_edge")];
  index_of(v, "has_edge");
  return std::binary_search(d.begin(), d.end(), v);
}

const std::vector<NodeId>& DependencyDag::dependencies_of(NodeId u) const {
  return deps_[index_of(u, "dependencies_of")];
}

bool DependencyDag::reachable(NodeId u, NodeId v) const {
  int ui = index_of(u, "reachable");
  int vi = index_of(v, "reachable");
  return test_bit(reach_[ui], vi);
}

std::optional<NodeId> DependencyDag::direct_dependency(const ListState& list, NodeId u) const {
  if (!list.contains(u)) fail(Errc::node_absent, "node " + std::to_string(u) + " not in list");
  std::optional<NodeId> best;
  int best_pos = 0;
  for (NodeId v : dependencies_of(u)) {
    if (!list.contains(v)) continue;
    int p = list.position(v);
    if (p > best_pos) {
      best_pos = p;
      best = v;
    }
  }
  return best;
}

DependencyDag DependencyDag::transitive_closure() const {
  std::vector<std::pair<NodeId, NodeId>> closed;
  const int n = node_count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (test_bit(reach_[i], j)) closed.emplace_back(nodes_[i], nodes_[j]);
  return build(nodes_, std::move(closed));
}

bool DependencyDag::is_transitive() const {
  const int n = node_count();
  for (int i = 0; i < n; ++i) {
    int reach_count = 0;
    for (int w = 0; w < static_cast<int>(reach_[i].size()); ++w)
      reach_count += __builtin_popcountll(reach_[i][w]);
    if (reach_count != static_cast<int>(deps_[i].size())) return false;
  }
  return true;
}

bool DependencyDag::is_linear_extension(const ListState& list) const {
  for (NodeId u : list.order()) index_of(u, "is_linear_extension");
  for (NodeId u : list.order()) {
    int pu = list.position(u);
    for (NodeId v : dependencies_of(u))
      if (list.contains(v) && list.position(v) > pu) return false;
  }
  return true;
}

DependencyDag DependencyDag::with_inserted(NodeId x, const std::vector<NodeId>& preds,
                                           const std::vector<NodeId>& succs) const {
  if (contains(x)) fail(Errc::node_present, "node " + std::to_string(x) + " already in DAG");
  auto new_nodes = nodes_;
  new_nodes.push_back(x);
  auto new_edges = edges();
  for (NodeId p : preds) {
    index_of(p, "insert predecessor");
    new_edges.emplace_back(x, p);
  }
  for (NodeId s : succs) {
    index_of(s, "insert successor");
    new_edges.emplace_back(s, x);
  }
  return build(std::move(new_nodes), std::move(new_edges));
}

DependencyDag DependencyDag::with_removed(NodeId id) const {
  index_of(id, "with_removed");
  std::vector<NodeId> new_nodes;
  for (NodeId n : nodes_)
    if (n != id) new_nodes.push_back(n);
  std::vector<std::pair<NodeId, NodeId>> new_edges;
  for (const auto& [u, v] : edges())
    if (u != id && v != id) new_edges.emplace_back(u, v);
  return build(std::move(new_nodes), std::move(new_edges));
}

bool DependencyDag::operator==(const DependencyDag& other) const {
  return nodes_ == other.nodes_ && deps_ == other.deps_;
}

}  // namespace deplist
