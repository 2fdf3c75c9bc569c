#include "deplist/offline_opt.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <queue>
#include <string>

namespace deplist {

namespace {

constexpr long long kInf = LLONG_MAX / 4;

void require_extension(const DependencyDag& dag, const ListState& list, const char* who) {
  if (static_cast<int>(list.size()) != dag.node_count() || !dag.is_linear_extension(list))
    fail(Errc::not_feasible, std::string(who) + ": list is not a linear extension of the DAG");
}

long long kendall(const ListState& from, const ListState& to) {
  long long count = 0;
  const auto& order = from.order();
  const int n = from.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (to.position(order[j]) < to.position(order[i])) ++count;
  return count;
}

/// One DP stage: the active DAG, its linear extensions in lexicographic order,
/// and (for small spaces) the cached pairwise swap distances.
struct Space {
  DependencyDag dag;
  std::vector<ListState> configs;
  std::map<std::vector<NodeId>, int> index;
  std::vector<std::vector<int>> dist;  // empty when too large to cache

  static constexpr int kCacheLimit = 720;

  explicit Space(DependencyDag d, int node_limit, bool with_distances = true) : dag(std::move(d)) {
    configs = enumerate_linear_extensions(dag, node_limit);
    for (int i = 0; i < static_cast<int>(configs.size()); ++i) index[configs[i].order()] = i;
    if (with_distances && static_cast<int>(configs.size()) <= kCacheLimit) {
      const int c = static_cast<int>(configs.size());
      dist.assign(c, std::vector<int>(c, 0));
      for (int i = 0; i < c; ++i)
        for (int j = i + 1; j < c; ++j)
          dist[i][j] = dist[j][i] = static_cast<int>(kendall(configs[i], configs[j]));
    }
  }

  long long distance(int i, int j) const {
    if (!dist.empty()) return dist[i][j];
    return kendall(configs[i], configs[j]);
  }

  int index_of(const std::vector<NodeId>& order) const {
    auto it = index.find(order);
    if (it == index.end()) fail(Errc::not_feasible, "configuration outside the feasible space");
    return it->second;
  }
};

std::vector<NodeId> erased(const std::vector<NodeId>& order, NodeId x) {
  std::vector<NodeId> out;
  out.reserve(order.size() - 1);
  for (NodeId id : order)
    if (id != x) out.push_back(id);
  return out;
}

}  // namespace

std::vector<ListState> enumerate_linear_extensions(const DependencyDag& dag, int node_limit) {
  const int n = dag.node_count();
  if (n > node_limit)
    fail(Errc::too_large, "refusing to enumerate extensions of " + std::to_string(n) +
                              " nodes (limit " + std::to_string(node_limit) + ")");
  const auto& nodes = dag.nodes();
  std::vector<int> pending(n, 0);  // unplaced dependencies per dense index
  std::vector<std::vector<int>> dependents(n);
  std::map<NodeId, int> dense;
  for (int i = 0; i < n; ++i) dense[nodes[i]] = i;
  for (int i = 0; i < n; ++i) {
    for (NodeId v : dag.dependencies_of(nodes[i])) {
      ++pending[i];
      dependents[dense[v]].push_back(i);
    }
  }

  std::vector<ListState> result;
  std::vector<NodeId> prefix;
  std::vector<bool> placed(n, false);
  prefix.reserve(n);

  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(prefix.size()) == n) {
      result.emplace_back(prefix);
      return;
    }
    for (int i = 0; i < n; ++i) {  // ascending id = lexicographic output
      if (placed[i] || pending[i] != 0) continue;
      placed[i] = true;
      prefix.push_back(nodes[i]);
      for (int d : dependents[i]) --pending[d];
      self(self);
      for (int d : dependents[i]) ++pending[d];
      prefix.pop_back();
      placed[i] = false;
    }
  };
  recurse(recurse);
  return result;
}

long long transposition_distance(const DependencyDag& dag, const ListState& from,
                                 const ListState& to) {
  require_extension(dag, from, "transposition_distance(from)");
  require_extension(dag, to, "transposition_distance(to)");
  return kendall(from, to);
}

long long bfs_distance_oracle(const DependencyDag& dag, const ListState& from, const ListState& to,
                              int node_limit) {
  require_extension(dag, from, "bfs_distance_oracle(from)");
  require_extension(dag, to, "bfs_distance_oracle(to)");
  Space space(dag, node_limit, /*with_distances=*/false);
  const int start = space.index_of(from.order());
  const int goal = space.index_of(to.order());
  if (start == goal) return 0;

  std::vector<long long> depth(space.configs.size(), -1);
  std::queue<int> frontier;
  depth[start] = 0;
  frontier.push(start);
  while (!frontier.empty()) {
    int cur = frontier.front();
    frontier.pop();
    const ListState& config = space.configs[cur];
    for (int p = 1; p < config.size(); ++p) {
      NodeId a = config.at(p);
      NodeId b = config.at(p + 1);
      if (space.dag.reachable(b, a)) continue;  // a must stay in front of b
      ListState next = config;
      next.swap_adjacent(p);
      int ni = space.index_of(next.order());
      if (depth[ni] >= 0) continue;
      depth[ni] = depth[cur] + 1;
      if (ni == goal) return depth[ni];
      frontier.push(ni);
    }
  }
  fail(Errc::not_feasible, "target configuration unreachable");  // cannot happen for extensions
}

OptTrace opt_cost(const DependencyDag& dag, const ListState& initial,
                  const std::vector<Request>& requests, int node_limit) {
  require_extension(dag, initial, "opt_cost(initial)");

  const int steps = static_cast<int>(requests.size());
  std::vector<std::shared_ptr<Space>> space(steps + 1);
  space[0] = std::make_shared<Space>(dag, node_limit);

  // Forward pass: f[t][i] = least cost of serving requests 1..t and ending in
  // configuration i of space[t]. Rearrangement is paid immediately before each
  // service; insert steps splice for free after paying the distance on the
  // pre-insert node set.
  std::vector<std::vector<long long>> f(steps + 1);
  f[0].assign(space[0]->configs.size(), kInf);
  f[0][space[0]->index_of(initial.order())] = 0;

  std::vector<std::vector<int>> restrict_map(steps + 1);  // insert: new cfg -> old cfg
  std::vector<std::vector<int>> collapse_map(steps + 1);  // delete: old cfg -> new cfg

  for (int t = 1; t <= steps; ++t) {
    const Request& r = requests[t - 1];
    const Space& prev = *space[t - 1];
    const int pc = static_cast<int>(prev.configs.size());

    // g[i] = cheapest way to reach prev-space configuration i just before service
    std::vector<long long> g(pc, kInf);
    for (int i = 0; i < pc; ++i) {
      if (f[t - 1][i] >= kInf) continue;
      for (int j = 0; j < pc; ++j)
        g[j] = std::min(g[j], f[t - 1][i] + prev.distance(i, j));
    }

    switch (r.kind) {
      case RequestKind::Access: {
        space[t] = space[t - 1];
        f[t].assign(pc, kInf);
        for (int j = 0; j < pc; ++j) {
          if (g[j] >= kInf) continue;
          f[t][j] = g[j] + prev.configs[j].position(r.node);
        }
        break;
      }
      case RequestKind::Insert: {
        space[t] = std::make_shared<Space>(
            prev.dag.with_inserted(r.node, r.insert_preds, r.insert_succs), node_limit);
        const int nc = static_cast<int>(space[t]->configs.size());
        const long long n_before = prev.dag.node_count();
        f[t].assign(nc, kInf);
        restrict_map[t].assign(nc, -1);
        for (int j = 0; j < nc; ++j) {
          int rj = prev.index_of(erased(space[t]->configs[j].order(), r.node));
          restrict_map[t][j] = rj;
          if (g[rj] < kInf) f[t][j] = g[rj] + n_before;
        }
        break;
      }
      case RequestKind::Delete: {
        space[t] = std::make_shared<Space>(prev.dag.with_removed(r.node), node_limit);
        const int nc = static_cast<int>(space[t]->configs.size());
        f[t].assign(nc, kInf);
        collapse_map[t].assign(pc, -1);
        for (int i2 = 0; i2 < pc; ++i2) {
          int j = space[t]->index_of(erased(prev.configs[i2].order(), r.node));
          collapse_map[t][i2] = j;
          if (g[i2] >= kInf) continue;
          long long cost = g[i2] + prev.configs[i2].position(r.node) - 1;
          f[t][j] = std::min(f[t][j], cost);
        }
        break;
      }
    }
  }

  OptTrace trace;
  trace.total_cost = kInf;
  for (long long c : f[steps]) trace.total_cost = std::min(trace.total_cost, c);

  // Backward pass: b[t][i] = least cost of the remaining requests starting
  // from configuration i of space[t]. Used to reconstruct the optimum with the
  // lexicographically-smallest configuration sequence.
  std::vector<std::vector<long long>> b(steps + 1);
  b[steps].assign(space[steps]->configs.size(), 0);
  for (int t = steps; t >= 1; --t) {
    const Request& r = requests[t - 1];
    const Space& prev = *space[t - 1];
    const int pc = static_cast<int>(prev.configs.size());
    b[t - 1].assign(pc, kInf);

    // h[i2] = service-plus-rest cost when serving request t in prev-space configuration i2
    std::vector<long long> h(pc, kInf);
    switch (r.kind) {
      case RequestKind::Access:
        for (int j = 0; j < pc; ++j)
          h[j] = prev.configs[j].position(r.node) + b[t][j];
        break;
      case RequestKind::Insert: {
        const long long n_before = prev.dag.node_count();
        for (int j = 0; j < static_cast<int>(space[t]->configs.size()); ++j) {
          int rj = restrict_map[t][j];
          h[rj] = std::min(h[rj], n_before + b[t][j]);
        }
        break;
      }
      case RequestKind::Delete:
        for (int i2 = 0; i2 < pc; ++i2)
          h[i2] = prev.configs[i2].position(r.node) - 1 + b[t][collapse_map[t][i2]];
        break;
    }
    for (int i = 0; i < pc; ++i)
      for (int i2 = 0; i2 < pc; ++i2)
        if (h[i2] < kInf) b[t - 1][i] = std::min(b[t - 1][i], prev.distance(i, i2) + h[i2]);
  }

  // Reconstruction. Invariant: done + b[t][cur] == total along an optimal path.
  int cur = space[0]->index_of(initial.order());
  long long done = 0;
  for (int t = 1; t <= steps; ++t) {
    const Request& r = requests[t - 1];
    const Space& prev = *space[t - 1];
    const Space& next = *space[t];
    OptStep step;
    bool chosen = false;
    switch (r.kind) {
      case RequestKind::Access: {
        for (int j = 0; j < static_cast<int>(next.configs.size()) && !chosen; ++j) {
          long long trans = prev.distance(cur, j);
          long long service = next.configs[j].position(r.node);
          if (done + trans + service + b[t][j] == trace.total_cost) {
            step = {next.configs[j], next.configs[j], trans, service};
            done += trans + service;
            cur = j;
            chosen = true;
          }
        }
        break;
      }
      case RequestKind::Insert: {
        const long long n_before = prev.dag.node_count();
        for (int j = 0; j < static_cast<int>(next.configs.size()) && !chosen; ++j) {
          int rj = restrict_map[t][j];
          long long trans = prev.distance(cur, rj);
          if (done + trans + n_before + b[t][j] == trace.total_cost) {
            step = {prev.configs[rj], next.configs[j], trans, n_before};
            done += trans + n_before;
            cur = j;
            chosen = true;
          }
        }
        break;
      }
      case RequestKind::Delete: {
        for (int j = 0; j < static_cast<int>(next.configs.size()) && !chosen; ++j) {
          for (int i2 = 0; i2 < static_cast<int>(prev.configs.size()) && !chosen; ++i2) {
            if (collapse_map[t][i2] != j) continue;
            long long trans = prev.distance(cur, i2);
            long long service = prev.configs[i2].position(r.node) - 1;
            if (done + trans + service + b[t][j] == trace.total_cost) {
              step = {prev.configs[i2], next.configs[j], trans, service};
              done += trans + service;
              cur = j;
              chosen = true;
            }
          }
        }
        break;
      }
    }
    if (!chosen) fail(Errc::not_feasible, "optimum reconstruction failed");  // unreachable
    trace.per_step.push_back(std::move(step));
  }
  return trace;
}

long long min_insert_rearrangement(const DependencyDag& dag_after_insert, const ListState& initial,
                                   NodeId x, int node_limit) {
  DependencyDag pre_dag = dag_after_insert.with_removed(x);
  require_extension(pre_dag, initial, "min_insert_rearrangement(initial)");
  // Configurations that admit a feasible zero-swap splice of x are exactly the
  // extensions of the closed constraint set induced among the present nodes.
  DependencyDag induced = dag_after_insert.transitive_closure().with_removed(x);
  long long best = kInf;
  for (const ListState& target : enumerate_linear_extensions(induced, node_limit))
    best = std::min(best, transposition_distance(pre_dag, initial, target));
  return best;
}

}  // namespace deplist
