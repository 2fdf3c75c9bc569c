#include "deplist/list_core.hpp"

#include <algorithm>
#include <string>

namespace deplist {

namespace {

void require_same_nodes(const ListState& subject, const ListState& reference) {
  if (subject.size() != reference.size())
    fail(Errc::node_set_mismatch, "lists have different sizes");
  for (NodeId id : subject.order())
    if (!reference.contains(id))
      fail(Errc::node_set_mismatch, "node " + std::to_string(id) + " missing from reference");
}

}  // namespace

int move_to(ListState& list, const DependencyDag& dag, NodeId y, int p, CostLedger* ledger) {
  int from = list.position(y);
  if (p < 1 || p > from)
    fail(Errc::bad_spec, "target position " + std::to_string(p) + " not in [1, pos(y)]");
  for (int q = p; q < from; ++q) {
    NodeId passed = list.at(q);
    if (dag.reachable(y, passed))
      fail(Errc::infeasible_move, "node " + std::to_string(passed) + " must precede " +
                                      std::to_string(y));
  }
  for (int q = from; q > p; --q) list.swap_adjacent(q - 1);
  int cost = from - p;
  if (ledger) ledger->transposition_cost += cost;
  return cost;
}

InversionReport inversions(const ListState& subject, const ListState& reference,
                           const BitAssignment* bits, bool collect_pairs) {
  require_same_nodes(subject, reference);
  InversionReport report;
  report.typed = bits != nullptr;
  const auto& order = subject.order();
  const int n = subject.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      NodeId u = order[i];
      NodeId v = order[j];
      if (reference.position(v) < reference.position(u)) {
        ++report.total;
        if (bits) {
          if (bits->get(v) == 0)
            ++report.type0;
          else
            ++report.type1;
        }
        if (collect_pairs) report.pairs.emplace_back(u, v);
      }
    }
  }
  return report;
}

KlsReport kls_sets(const ListState& subject, const ListState& reference,
                   const std::vector<NodeId>& d) {
  require_same_nodes(subject, reference);
  if (d.empty()) fail(Errc::bad_spec, "empty chain");
  for (std::size_t j = 1; j < d.size(); ++j)
    if (subject.position(d[j - 1]) >= subject.position(d[j]))
      fail(Errc::unordered_chain, "chain positions must increase in the subject list");

  KlsReport report;
  report.d = d;
  const int delta = static_cast<int>(d.size());
  report.K.resize(delta);
  report.L.resize(delta);
  report.S.resize(delta);
  for (int j = 0; j < delta; ++j) {
    const int pd_subject = subject.position(d[j]);
    const int pd_reference = reference.position(d[j]);
    for (NodeId u : subject.order()) {
      if (u == d[j]) continue;
      if (subject.position(u) < pd_subject) {
        if (reference.position(u) < pd_reference)
          report.K[j].push_back(u);
        else
          report.L[j].push_back(u);
      }
    }
    const int lo = j == 0 ? 1 : subject.position(d[j - 1]) + 1;
    for (int p = lo; p <= pd_subject; ++p) report.S[j].push_back(subject.at(p));
    std::sort(report.K[j].begin(), report.K[j].end());
    std::sort(report.L[j].begin(), report.L[j].end());
    std::sort(report.S[j].begin(), report.S[j].end());
  }
  report.k = static_cast<long long>(report.K[delta - 1].size());
  report.l = static_cast<long long>(report.L[delta - 1].size());
  return report;
}

long long potential_det_half(const ListState& subject, const ListState& reference) {
  return 4 * inversions(subject, reference).total;
}

long long potential_rand_half(const ListState& subject, const ListState& reference,
                              const BitAssignment& bits) {
  InversionReport report = inversions(subject, reference, &bits);
  return 5 * report.type0 + 7 * report.type1;
}

}  // namespace deplist
