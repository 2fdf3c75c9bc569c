#include "deplist/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace deplist {

namespace {

std::vector<NodeId> iota_nodes(int n) {
  std::vector<NodeId> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = i;
  return nodes;
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(Errc::bad_spec, what);
}

/// Zipf-like sampler over the present nodes: rank by ascending id, weight
/// 1/rank^s.
NodeId sample_zipf(const std::vector<NodeId>& present, double exponent, Rng& rng) {
  std::vector<double> cumulative(present.size());
  double total = 0;
  for (std::size_t r = 0; r < present.size(); ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    cumulative[r] = total;
  }
  double x = rng.unit() * total;
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  std::size_t idx = std::min(static_cast<std::size_t>(it - cumulative.begin()),
                             present.size() - 1);
  return present[idx];
}

}  // namespace

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "v" + std::to_string(i + 1);
  return names;
}

DependencyDag random_dag(int n, double edge_prob, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (rng.chance(edge_prob)) edges.emplace_back(j, i);  // later depends on earlier
  return DependencyDag::build(iota_nodes(n), std::move(edges));
}

ListState random_linear_extension(const DependencyDag& dag, Rng& rng) {
  const auto& nodes = dag.nodes();
  const int n = dag.node_count();
  std::vector<int> pending(n, 0);
  std::vector<std::vector<int>> dependents(n);
  std::vector<int> dense(nodes.empty() ? 0 : nodes.back() + 1, -1);
  for (int i = 0; i < n; ++i) dense[nodes[i]] = i;
  for (int i = 0; i < n; ++i)
    for (NodeId v : dag.dependencies_of(nodes[i])) {
      ++pending[i];
      dependents[dense[v]].push_back(i);
    }
  std::vector<int> available;
  for (int i = 0; i < n; ++i)
    if (pending[i] == 0) available.push_back(i);
  std::vector<NodeId> order;
  order.reserve(n);
  while (!available.empty()) {
    int slot = rng.index(available.size());
    int i = available[slot];
    available.erase(available.begin() + slot);
    order.push_back(nodes[i]);
    for (int d : dependents[i])
      if (--pending[d] == 0) available.push_back(d);
  }
  return ListState(std::move(order));
}

DependencyDag gen_dag(const WorkloadSpec& spec) {
  require(spec.n >= 0, "node count must be non-negative");
  Rng rng(spec.seed);
  switch (spec.dag_kind) {
    case DagKind::Empty:
      return DependencyDag::build(iota_nodes(spec.n), {});
    case DagKind::Chain: {
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (int i = 0; i + 1 < spec.n; ++i) edges.emplace_back(i + 1, i);
      return DependencyDag::build(iota_nodes(spec.n), std::move(edges));
    }
    case DagKind::Layered: {
      require(spec.width >= 1 && spec.depth >= 1, "layered DAG needs width >= 1 and depth >= 1");
      const int n = spec.width * spec.depth;
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (int layer = 1; layer < spec.depth; ++layer)
        for (int w = 0; w < spec.width; ++w)
          for (int pw = 0; pw < spec.width; ++pw)
            edges.emplace_back(layer * spec.width + w, (layer - 1) * spec.width + pw);
      return DependencyDag::build(iota_nodes(n), std::move(edges));
    }
    case DagKind::Random:
      require(spec.edge_prob >= 0 && spec.edge_prob <= 1, "edge probability outside [0,1]");
      return random_dag(spec.n, spec.edge_prob, rng);
    case DagKind::TransitiveRandom:
      require(spec.edge_prob >= 0 && spec.edge_prob <= 1, "edge probability outside [0,1]");
      return random_dag(spec.n, spec.edge_prob, rng).transitive_closure();
  }
  fail(Errc::bad_spec, "unknown DAG kind");
}

WorkloadInstance gen_sequence(const WorkloadSpec& spec) {
  require(spec.length >= 0, "length must be non-negative");
  require(spec.update_mix >= 0 && spec.update_mix <= 1, "update mix outside [0,1]");
  require(spec.n >= 1 || spec.length == 0, "need at least one node");

  Rng rng(spec.seed);
  const int num_updates = static_cast<int>(std::lround(spec.update_mix * spec.length));
  const int num_inserts = (num_updates + 1) / 2;

  // Hidden universe over current and future nodes; transitive whenever updates
  // can reveal constraints, so a zero-rearrangement slot always exists.
  WorkloadSpec universe_spec = spec;
  universe_spec.n = spec.n + num_inserts;
  if (spec.dag_kind == DagKind::Layered) universe_spec.dag_kind = DagKind::Random;
  DependencyDag universe = gen_dag(universe_spec);
  if (num_updates > 0) universe = universe.transitive_closure();

  std::vector<std::pair<NodeId, NodeId>> initial_edges;
  for (const auto& [u, v] : universe.edges())
    if (u < spec.n && v < spec.n) initial_edges.emplace_back(u, v);
  DependencyDag dag = DependencyDag::build(iota_nodes(spec.n), std::move(initial_edges));

  WorkloadInstance instance;
  instance.names = default_names(universe_spec.n);
  instance.dag = dag;
  instance.initial = random_linear_extension(dag, rng);

  // Update slots, spread uniformly.
  std::vector<int> slots(spec.length);
  for (int i = 0; i < spec.length; ++i) slots[i] = i;
  for (int i = spec.length - 1; i > 0; --i) std::swap(slots[i], slots[rng.index(i + 1)]);
  std::vector<bool> is_update(spec.length, false);
  for (int i = 0; i < num_updates && i < spec.length; ++i) is_update[slots[i]] = true;

  DetList tail_tracker(dag, instance.initial);  // drives the repeat-tail distribution
  std::vector<NodeId> present = instance.initial.order();
  std::sort(present.begin(), present.end());
  NodeId next_future = spec.n;
  int deletes_left = num_updates - num_inserts;
  int round_robin = 0;

  for (int t = 0; t < spec.length; ++t) {
    Request request;
    bool want_insert = next_future < universe_spec.n &&
                       (deletes_left == 0 || present.size() <= 1 || rng.bit() == 0);
    if (is_update[t] && (want_insert || (deletes_left > 0 && present.size() > 1))) {
      if (want_insert) {
        NodeId x = next_future++;
        std::vector<NodeId> preds, succs;
        for (NodeId p : present) {
          if (universe.has_edge(x, p)) preds.push_back(p);
          if (universe.has_edge(p, x)) succs.push_back(p);
        }
        request = Request::insert(x, std::move(preds), std::move(succs));
        present.insert(std::lower_bound(present.begin(), present.end(), x), x);
      } else {
        --deletes_left;
        NodeId victim = present[rng.index(present.size())];
        request = Request::remove(victim);
        present.erase(std::lower_bound(present.begin(), present.end(), victim));
      }
    } else {
      NodeId target = 0;
      switch (spec.dist) {
        case AccessDist::Uniform:
          target = present[rng.index(present.size())];
          break;
        case AccessDist::Zipf:
          target = sample_zipf(present, spec.zipf_exponent, rng);
          break;
        case AccessDist::RepeatTail:
          target = tail_tracker.list().at(tail_tracker.list().size());
          break;
        case AccessDist::RoundRobin:
          target = present[round_robin++ % present.size()];
          break;
      }
      request = Request::access(target);
    }
    tail_tracker.serve(request);
    instance.requests.push_back(std::move(request));
  }
  return instance;
}

QuadraticInsertInstance gen_quadratic_insert_instance(int n) {
  require(n >= 2 && n % 2 == 0, "size must be even and at least 2");
  QuadraticInsertInstance instance;
  const int half = n / 2;
  std::vector<NodeId> order(n);
  instance.names.resize(n + 1);
  std::vector<NodeId> reds, whites;
  for (int i = 0; i < half; ++i) {
    instance.names[i] = "r" + std::to_string(i + 1);
    reds.push_back(i);
    order[i] = i;
  }
  for (int i = 0; i < half; ++i) {
    instance.names[half + i] = "w" + std::to_string(i + 1);
    whites.push_back(half + i);
    order[half + i] = half + i;
  }
  instance.x = n;
  instance.names[n] = "x";
  instance.initial_dag = DependencyDag::build(iota_nodes(n), {});
  instance.initial = ListState(std::move(order));
  instance.universe = instance.initial_dag.with_inserted(instance.x, whites, reds);
  instance.insert = Request::insert(instance.x, whites, reds);
  return instance;
}

}  // namespace deplist
