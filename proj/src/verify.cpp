#include "deplist/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "deplist/list_core.hpp"
#include "deplist/offline_opt.hpp"
#include "deplist/pktclass.hpp"
#include "deplist/workloads.hpp"

namespace deplist {

namespace {

/// One instance with one slack value; negative slack is a violation.
template <class WitnessFn>
void tally(CheckReport& report, const Rat& slack, WitnessFn&& witness) {
  ++report.instances;
  if (!report.worst_slack || slack < *report.worst_slack) report.worst_slack = slack;
  if (slack < Rat(0)) {
    if (report.violations == 0) report.witness = witness();
    ++report.violations;
  }
}

void merge(CheckReport& into, const CheckReport& part) {
  into.instances += part.instances;
  into.violations += part.violations;
  if (part.worst_slack && (!into.worst_slack || *part.worst_slack < *into.worst_slack))
    into.worst_slack = part.worst_slack;
  if (into.witness.empty()) into.witness = part.witness;
}

struct RandomEvent {
  DependencyDag dag;
  ListState subject;
  ListState reference;
  NodeId accessed;
};

RandomEvent random_event(Rng& rng, int min_n, int max_n, double edge_prob) {
  int n = min_n + rng.index(max_n - min_n + 1);
  DependencyDag dag = random_dag(n, edge_prob, rng);
  ListState subject = random_linear_extension(dag, rng);
  ListState reference = random_linear_extension(dag, rng);
  NodeId accessed = rng.index(n);
  return {std::move(dag), std::move(subject), std::move(reference), accessed};
}

std::string describe(const RandomEvent& event, long long trial, const std::string& detail) {
  std::ostringstream out;
  out << "trial " << trial << ": subject=" << event.subject.to_string()
      << " reference=" << event.reference.to_string() << " accessed=" << event.accessed;
  out << " edges{";
  bool first = true;
  for (const auto& [u, v] : event.dag.edges()) {
    if (!first) out << ' ';
    first = false;
    out << u << "->" << v;
  }
  out << "} " << detail;
  return out.str();
}

std::vector<NodeId> sorted_union(const std::vector<std::vector<NodeId>>& sets) {
  std::set<NodeId> acc;
  for (const auto& s : sets) acc.insert(s.begin(), s.end());
  return {acc.begin(), acc.end()};
}

std::vector<NodeId> sorted_intersection(const std::vector<NodeId>& a,
                                        const std::vector<NodeId>& b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::string rat_to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void CheckReport::count(const Rat& slack, const std::string& describe_on_violation) {
  tally(*this, slack, [&] { return describe_on_violation; });
}

std::string CheckReport::summary() const {
  std::ostringstream out;
  out << name << ": instances=" << instances << " violations=" << violations;
  if (worst_slack) out << " worst_slack=" << rat_to_string(*worst_slack);
  if (!witness.empty()) out << "\n  witness: " << witness;
  return out.str();
}

CheckReport check_set_relations(const EventSweepSpec& spec) {
  CheckReport report;
  report.name = "set-relations";
  Rng rng(spec.seed);
  for (long long trial = 0; trial < spec.trials; ++trial) {
    RandomEvent event = random_event(rng, spec.min_n, spec.max_n, spec.edge_prob);
    ListState moved = event.subject;
    MrfResult result = mrf(moved, event.dag, event.accessed);
    KlsReport kls = kls_sets(event.subject, event.reference, result.chain);

    std::vector<NodeId> union_k = sorted_union(kls.K);
    bool first_holds = union_k == kls.K.back();

    std::vector<std::vector<NodeId>> sl(kls.delta());
    for (int j = 0; j < kls.delta(); ++j) sl[j] = sorted_intersection(kls.S[j], kls.L[j]);
    bool second_holds = sorted_union(sl) == sorted_union(kls.L);

    tally(report, Rat(first_holds && second_holds ? 0 : -1),
          [&] { return describe(event, trial, first_holds ? "S/L union mismatch" : "K union mismatch"); });
  }
  return report;
}

CheckReport check_inversion_change(const EventSweepSpec& spec) {
  CheckReport report;
  report.name = "inversion-change";
  Rng rng(spec.seed);
  for (long long trial = 0; trial < spec.trials; ++trial) {
    RandomEvent event = random_event(rng, spec.min_n, spec.max_n, spec.edge_prob);
    InversionReport before = inversions(event.subject, event.reference, nullptr, true);
    ListState moved = event.subject;
    MrfResult result = mrf(moved, event.dag, event.accessed);
    InversionReport after = inversions(moved, event.reference, nullptr, true);
    KlsReport kls = kls_sets(event.subject, event.reference, result.chain);

    std::sort(before.pairs.begin(), before.pairs.end());
    std::sort(after.pairs.begin(), after.pairs.end());
    std::vector<std::pair<NodeId, NodeId>> diff;
    std::set_difference(after.pairs.begin(), after.pairs.end(), before.pairs.begin(),
                        before.pairs.end(), std::back_inserter(diff));
    long long created = static_cast<long long>(diff.size());
    diff.clear();
    std::set_difference(before.pairs.begin(), before.pairs.end(), after.pairs.begin(),
                        after.pairs.end(), std::back_inserter(diff));
    long long destroyed = static_cast<long long>(diff.size());

    Rat slack = Rat(std::min({kls.k - created, destroyed - kls.l,
                              (kls.k - kls.l) - (after.total - before.total)}));
    tally(report, slack, [&] {
      std::ostringstream detail;
      detail << "k=" << kls.k << " l=" << kls.l << " created=" << created
             << " destroyed=" << destroyed << " net=" << (after.total - before.total);
      return describe(event, trial, detail.str());
    });
  }
  return report;
}

CheckReport check_rearrangement_bound(const EventSweepSpec& spec) {
  CheckReport report;
  report.name = "rearrangement-bound";
  Rng rng(spec.seed);
  for (long long trial = 0; trial < spec.trials; ++trial) {
    RandomEvent event = random_event(rng, spec.min_n, spec.max_n, spec.edge_prob);
    const int pos_before = event.subject.position(event.accessed);
    ListState moved = event.subject;
    MrfResult result = mrf(moved, event.dag, event.accessed);
    const long long delta = static_cast<long long>(result.chain.size());
    // bound: cost <= pos(y); identity: cost == pos(y) - delta
    long long bound_slack = pos_before - result.cost;
    long long identity_gap = result.cost - (pos_before - delta);
    Rat slack = Rat(std::min(bound_slack, identity_gap == 0 ? bound_slack : -1));
    tally(report, slack, [&] {
      std::ostringstream detail;
      detail << "cost=" << result.cost << " pos=" << pos_before << " delta=" << delta;
      return describe(event, trial, detail.str());
    });
  }
  return report;
}

namespace {

/// Shared by check_det_amortized and the exhaustive sweep: verifies one
/// instance against a precomputed OPT trace. Returns DET's total cost.
long long det_amortized_against(const DependencyDag& dag, const ListState& initial,
                                const std::vector<Request>& requests, const OptTrace& opt,
                                CheckReport& events_report, CheckReport* ratio_report,
                                const std::string& instance_tag) {
  DetList det(dag, initial);
  ListState opt_prev = initial;
  for (std::size_t t = 0; t < requests.size(); ++t) {
    const OptStep& step = opt.per_step[t];
    const long long phi_prev = potential_det_half(det.list(), opt_prev);
    // paid exchange accounting: each OPT swap may raise Phi by at most 2 units
    const long long phi_mid = potential_det_half(det.list(), step.pre_service);
    const long long exchange_slack_half = 4 * step.transposition_cost - (phi_mid - phi_prev);

    EventRecord rec = det.serve(requests[t]);
    const long long phi_next = potential_det_half(det.list(), step.after);
    const long long amortized_slack_half =
        8 * (step.transposition_cost + step.service_cost) -
        (2 * rec.total() + (phi_next - phi_prev));

    tally(events_report, Rat(std::min(exchange_slack_half, amortized_slack_half), 2), [&] {
      std::ostringstream out;
      out << instance_tag << " step " << (t + 1) << ": cost=" << rec.total()
          << " dPhi/2=" << Rat(phi_next - phi_prev, 4) << " opt=" << step.transposition_cost
          << "+" << step.service_cost;
      return out.str();
    });
    opt_prev = step.after;
  }
  const long long det_total = det.ledger().total();
  if (ratio_report) {
    tally(*ratio_report, Rat(4 * opt.total_cost - det_total), [&] {
      std::ostringstream out;
      out << instance_tag << ": DET=" << det_total << " OPT=" << opt.total_cost;
      return out.str();
    });
  }
  return det_total;
}

/// Exact E[total cost] of RAND over every initial bit vector and every
/// insertion bit.
Rat rand_exact_expectation(const DependencyDag& dag, const ListState& initial,
                           const std::vector<Request>& requests) {
  const int n = initial.size();
  int insert_count = 0;
  for (const Request& r : requests)
    if (r.kind == RequestKind::Insert) ++insert_count;
  if (n + insert_count > 20) fail(Errc::too_large, "bit enumeration too large");

  long long total = 0;
  const long long init_vectors = 1LL << n;
  const long long insert_vectors = 1LL << insert_count;
  for (long long mask = 0; mask < init_vectors; ++mask) {
    for (long long imask = 0; imask < insert_vectors; ++imask) {
      BitAssignment bits;
      for (int i = 0; i < n; ++i) bits.set(initial.at(i + 1), static_cast<int>((mask >> i) & 1));
      RandList rand(dag, initial, bits);
      std::vector<int> insert_bits;
      for (int i = 0; i < insert_count; ++i)
        insert_bits.push_back(static_cast<int>((imask >> i) & 1));
      rand.queue_insert_bits(insert_bits);
      for (const Request& r : requests) rand.serve(r);
      total += rand.ledger().total();
    }
  }
  return Rat(total, init_vectors * insert_vectors);
}

}  // namespace

CheckReport check_det_amortized(const DependencyDag& dag, const ListState& initial,
                                const std::vector<Request>& requests) {
  CheckReport report;
  report.name = "det-amortized";
  OptTrace opt = opt_cost(dag, initial, requests);
  CheckReport ratio;
  det_amortized_against(dag, initial, requests, opt, report, &ratio, "instance");
  merge(report, ratio);
  return report;
}

CheckReport check_rand_expectation(const DependencyDag& dag, const ListState& subject,
                                   const ListState& reference, NodeId accessed) {
  CheckReport report;
  report.name = "rand-expectation";
  if (subject.size() > 12)
    fail(Errc::too_large, "bit enumeration over " + std::to_string(subject.size()) + " nodes");
  if (!dag.is_linear_extension(subject) || !dag.is_linear_extension(reference))
    fail(Errc::not_feasible, "event lists must be linear extensions");

  std::vector<NodeId> others;
  for (NodeId id : subject.order())
    if (id != accessed) others.push_back(id);
  const long long assignments = 1LL << others.size();

  long long k = 0;  // nodes before the accessed node in both lists
  for (NodeId id : others)
    if (subject.position(id) < subject.position(accessed) &&
        reference.position(id) < reference.position(accessed))
      ++k;

  long long sum_half[2] = {0, 0};
  for (int cond = 0; cond < 2; ++cond) {
    for (long long mask = 0; mask < assignments; ++mask) {
      BitAssignment bits;
      bits.set(accessed, cond);
      for (std::size_t i = 0; i < others.size(); ++i)
        bits.set(others[i], static_cast<int>((mask >> i) & 1));
      const long long phi_before = potential_rand_half(subject, reference, bits);
      RandList rand(dag, subject, bits);
      EventRecord rec = rand.serve(Request::access(accessed));
      const long long phi_after = potential_rand_half(rand.list(), reference, rand.bits());
      sum_half[cond] += 2 * rec.total() + (phi_after - phi_before);
    }
  }

  const Rat e0(sum_half[0], 2 * assignments);
  const Rat e1(sum_half[1], 2 * assignments);
  auto event_tag = [&](const char* what, const Rat& value) {
    std::ostringstream out;
    out << what << "=" << rat_to_string(value) << " k=" << k
        << " subject=" << subject.to_string() << " reference=" << reference.to_string()
        << " accessed=" << accessed;
    return out.str();
  };
  tally(report, Rat(k + 1) - e1, [&] { return event_tag("E1", e1); });
  tally(report, Rat(5) * Rat(k + 1) - e0, [&] { return event_tag("E0", e0); });
  tally(report, Rat(3) * Rat(k + 1) - (e0 + e1) / 2, [&] { return event_tag("mix", (e0 + e1) / 2); });
  return report;
}

CheckReport sweep_rand_expectation(long long trials, std::uint64_t seed, int max_n) {
  CheckReport report;
  report.name = "rand-expectation";
  Rng rng(seed);
  for (long long trial = 0; trial < trials; ++trial) {
    RandomEvent event = random_event(rng, 2, max_n, 0.35);
    merge(report, check_rand_expectation(event.dag, event.subject, event.reference,
                                         event.accessed));
  }
  return report;
}

std::vector<DependencyDag> all_dags(int n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  std::vector<NodeId> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = i;

  std::vector<DependencyDag> dags;
  const std::uint64_t masks = 1ull << pairs.size();
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1) edges.push_back(pairs[i]);
    try {
      dags.push_back(DependencyDag::build(nodes, std::move(edges)));
    } catch (const Error& e) {
      if (e.code() != Errc::cycle_detected) throw;
    }
  }
  return dags;
}

std::vector<DependencyDag> all_transitive_dags(int n) {
  std::vector<DependencyDag> out;
  for (DependencyDag& dag : all_dags(n))
    if (dag.is_transitive()) out.push_back(std::move(dag));
  return out;
}

bool CompetitiveSweepReport::ok() const {
  return det_amortized.ok() && det_ratio.ok() && rand_ratio.ok() && rand_event.ok() &&
         opt_lower.ok();
}

CompetitiveSweepReport sweep_competitive(const CompetitiveSweepSpec& spec) {
  CompetitiveSweepReport report;
  report.det_amortized.name = "det-amortized";
  report.det_ratio.name = "det-ratio<=4";
  report.rand_ratio.name = "rand-ratio<=3";
  report.rand_event.name = "rand-event-bounds";
  report.opt_lower.name = "opt-lower-bound";

  Rng rng(spec.seed);
  int dag_index = 0;
  for (const DependencyDag& dag : all_dags(spec.n)) {
    ++dag_index;
    // Config index for the per-event memo keys.
    std::map<std::vector<NodeId>, int> config_index;
    {
      int i = 0;
      for (const ListState& config : enumerate_linear_extensions(dag)) config_index[config.order()] = i++;
    }
    std::unordered_set<std::uint64_t> seen_events;

    for (int s = 0; s < spec.sequences_per_dag; ++s) {
      ListState initial = random_linear_extension(dag, rng);
      std::vector<Request> requests;
      for (int t = 0; t < spec.length; ++t) requests.push_back(Request::access(rng.index(spec.n)));

      OptTrace opt = opt_cost(dag, initial, requests);
      std::ostringstream tag;
      tag << "dag#" << dag_index << " seq#" << s;

      if (spec.det_side) {
        long long det_total = det_amortized_against(dag, initial, requests, opt,
                                                    report.det_amortized, &report.det_ratio,
                                                    tag.str());
        tally(report.opt_lower, Rat(det_total - opt.total_cost),
              [&] { return tag.str() + ": DET below OPT"; });
      }

      if (spec.rand_side) {
        const long long vectors = 1LL << spec.n;
        long long total_sum = 0;
        for (long long mask = 0; mask < vectors; ++mask) {
          BitAssignment bits;
          for (int i = 0; i < spec.n; ++i) bits.set(initial.at(i + 1), static_cast<int>((mask >> i) & 1));
          RandList rand(dag, initial, bits);
          for (std::size_t t = 0; t < requests.size(); ++t) {
            if (spec.rand_event_bounds) {
              const ListState& ref = opt.per_step[t].pre_service;
              std::uint64_t key = static_cast<std::uint64_t>(config_index.at(rand.list().order())) |
                                  (static_cast<std::uint64_t>(config_index.at(ref.order())) << 20) |
                                  (static_cast<std::uint64_t>(requests[t].node) << 40);
              if (seen_events.insert(key).second)
                merge(report.rand_event,
                      check_rand_expectation(dag, rand.list(), ref, requests[t].node));
            }
            rand.serve(requests[t]);
          }
          const long long run_total = rand.ledger().total();
          total_sum += run_total;
          tally(report.opt_lower, Rat(run_total - opt.total_cost),
                [&] { return tag.str() + ": fixed-bit RAND run below OPT"; });
        }
        const Rat expectation(total_sum, vectors);
        tally(report.rand_ratio, Rat(3) * Rat(opt.total_cost) - expectation, [&] {
          return tag.str() + ": E[RAND]=" + rat_to_string(expectation) +
                 " OPT=" + std::to_string(opt.total_cost);
        });
      }
    }
  }
  return report;
}

CheckReport sweep_reduction_equivalence(long long sequences, std::uint64_t seed) {
  CheckReport report;
  report.name = "reduction";
  Rng rng(seed);
  for (long long s = 0; s < sequences; ++s) {
    const int n = 2 + rng.index(7);
    std::vector<NodeId> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;
    DependencyDag dag = DependencyDag::build(nodes, {});
    ListState initial = random_linear_extension(dag, rng);

    const bool with_updates = rng.bit() == 1;
    const int length = 30;
    std::vector<Request> requests;
    {
      std::vector<NodeId> present = initial.order();
      NodeId next_id = n;
      for (int t = 0; t < length; ++t) {
        int roll = with_updates ? static_cast<int>(rng.below(10)) : 9;
        if (roll == 0) {
          requests.push_back(Request::insert(next_id++, {}, {}));
          present.push_back(requests.back().node);
        } else if (roll == 1 && present.size() > 1) {
          NodeId victim = present[rng.index(present.size())];
          requests.push_back(Request::remove(victim));
          present.erase(std::find(present.begin(), present.end(), victim));
        } else {
          requests.push_back(Request::access(present[rng.index(present.size())]));
        }
      }
    }

    BitAssignment bits;
    for (NodeId id : initial.order()) bits.set(id, rng.bit());
    std::vector<int> insert_bits;
    for (const Request& r : requests)
      if (r.kind == RequestKind::Insert) insert_bits.push_back(rng.bit());

    DetList det(dag, initial);
    MtfReference mtf(dag, initial);
    RandList rand(dag, initial, bits);
    BitReference bit(dag, initial, bits);
    rand.queue_insert_bits(insert_bits);
    bit.queue_insert_bits(insert_bits);

    bool equal = true;
    std::string detail;
    for (std::size_t t = 0; t < requests.size() && equal; ++t) {
      EventRecord a = det.serve(requests[t]);
      EventRecord b = mtf.serve(requests[t]);
      if (a.access_cost != b.access_cost || a.rearrangement_cost != b.rearrangement_cost ||
          a.list_after != b.list_after) {
        equal = false;
        detail = "DET!=MTF at step " + std::to_string(t + 1);
      }
      EventRecord c = rand.serve(requests[t]);
      EventRecord d = bit.serve(requests[t]);
      if (c.access_cost != d.access_cost || c.rearrangement_cost != d.rearrangement_cost ||
          c.list_after != d.list_after || c.bit_after != d.bit_after) {
        equal = false;
        detail = "RAND!=BIT at step " + std::to_string(t + 1);
      }
    }
    tally(report, Rat(equal ? 0 : -1),
          [&] { return "sequence " + std::to_string(s) + ": " + detail; });
  }
  return report;
}

CheckReport sweep_distance_oracle(int dags, std::uint64_t seed, int max_n) {
  CheckReport report;
  report.name = "distance-oracle";
  Rng rng(seed);
  for (int d = 0; d < dags; ++d) {
    const int n = 2 + rng.index(max_n - 1);
    DependencyDag dag = random_dag(n, 0.2 + 0.5 * rng.unit(), rng);
    std::vector<ListState> configs = enumerate_linear_extensions(dag, max_n);
    for (const ListState& from : configs) {
      for (const ListState& to : configs) {
        long long fast = transposition_distance(dag, from, to);
        long long slow = bfs_distance_oracle(dag, from, to, max_n);
        tally(report, Rat(fast == slow ? 0 : -1), [&] {
          return "dag " + std::to_string(d) + ": kendall=" + std::to_string(fast) +
                 " bfs=" + std::to_string(slow) + " from=" + from.to_string() +
                 " to=" + to.to_string();
        });
      }
    }
  }
  return report;
}

bool InsertDeleteReport::ok() const {
  return det_ratio.ok() && rand_ratio.ok() && zero_swap_inserts.ok();
}

InsertDeleteReport sweep_insert_delete(const InsertDeleteSweepSpec& spec) {
  InsertDeleteReport report;
  report.det_ratio.name = "insert-delete-det-ratio<=4";
  report.rand_ratio.name = "insert-delete-rand-ratio<=4";
  report.zero_swap_inserts.name = "zero-swap-inserts";

  Rng rng(spec.seed);
  for (int n = 2; n <= spec.max_n; ++n) {
    int universe_index = 0;
    for (const DependencyDag& universe : all_transitive_dags(n)) {
      ++universe_index;
      for (int s = 0; s < spec.sequences_per_universe; ++s) {
        const int updates = 1 + rng.index(spec.max_updates);
        int inserts = rng.index(updates + 1);
        if (inserts >= n) inserts = n - 1;  // keep at least one node present
        const int deletes = updates - inserts;

        // Future nodes are hidden until inserted.
        std::vector<NodeId> future;
        {
          std::vector<NodeId> pool = universe.nodes();
          for (int i = 0; i < inserts; ++i) {
            int idx = rng.index(pool.size());
            future.push_back(pool[idx]);
            pool.erase(pool.begin() + idx);
          }
        }
        std::vector<NodeId> present;
        for (NodeId id : universe.nodes())
          if (std::find(future.begin(), future.end(), id) == future.end()) present.push_back(id);

        std::vector<std::pair<NodeId, NodeId>> initial_edges;
        for (const auto& [u, v] : universe.edges()) {
          bool u_present = std::find(present.begin(), present.end(), u) != present.end();
          bool v_present = std::find(present.begin(), present.end(), v) != present.end();
          if (u_present && v_present) initial_edges.emplace_back(u, v);
        }
        DependencyDag dag = DependencyDag::build(present, initial_edges);
        ListState initial = random_linear_extension(dag, rng);

        // Spread the updates across the sequence.
        std::vector<bool> update_slot(spec.length, false);
        {
          std::vector<int> slots(spec.length);
          for (int i = 0; i < spec.length; ++i) slots[i] = i;
          for (int i = spec.length - 1; i > 0; --i) std::swap(slots[i], slots[rng.index(i + 1)]);
          for (int i = 0; i < updates; ++i) update_slot[slots[i]] = true;
        }

        std::vector<Request> requests;
        std::vector<NodeId> now = present;
        std::size_t next_future = 0;
        int deletes_left = deletes;
        for (int t = 0; t < spec.length; ++t) {
          if (update_slot[t] && next_future < future.size()) {
            NodeId x = future[next_future++];
            std::vector<NodeId> preds, succs;
            for (NodeId p : now) {
              if (universe.has_edge(x, p)) preds.push_back(p);
              if (universe.has_edge(p, x)) succs.push_back(p);
            }
            requests.push_back(Request::insert(x, std::move(preds), std::move(succs)));
            now.push_back(x);
          } else if (update_slot[t] && deletes_left > 0 && now.size() > 1) {
            --deletes_left;
            NodeId victim = now[rng.index(now.size())];
            requests.push_back(Request::remove(victim));
            now.erase(std::find(now.begin(), now.end(), victim));
          } else {
            requests.push_back(Request::access(now[rng.index(now.size())]));
          }
        }

        std::ostringstream tag;
        tag << "universe#" << n << "." << universe_index << " seq#" << s;

        OptTrace opt = opt_cost(dag, initial, requests);

        DetList det(dag, initial);
        for (const Request& r : requests) {
          EventRecord rec = det.serve(r);
          if (r.kind == RequestKind::Insert)
            tally(report.zero_swap_inserts, Rat(-rec.rearrangement_cost),
                  [&] { return tag.str() + ": insert performed swaps"; });
        }
        tally(report.det_ratio, Rat(4) * Rat(opt.total_cost) - Rat(det.ledger().total()), [&] {
          return tag.str() + ": DET=" + std::to_string(det.ledger().total()) +
                 " OPT=" + std::to_string(opt.total_cost);
        });

        Rat expectation = rand_exact_expectation(dag, initial, requests);
        tally(report.rand_ratio, Rat(4) * Rat(opt.total_cost) - expectation, [&] {
          return tag.str() + ": E[RAND]=" + rat_to_string(expectation) +
                 " OPT=" + std::to_string(opt.total_cost);
        });
      }
    }
  }
  return report;
}

CheckReport check_quadratic_insert(const std::vector<int>& sizes) {
  CheckReport report;
  report.name = "quadratic-insert";
  for (int n : sizes) {
    QuadraticInsertInstance instance = gen_quadratic_insert_instance(n);
    const long long expected = static_cast<long long>(n / 2) * (n / 2);
    const long long cost =
        min_insert_rearrangement(instance.universe, instance.initial, instance.x);
    bool refused = false;
    try {
      insert_position(instance.initial, instance.insert.insert_preds,
                      instance.insert.insert_succs);
    } catch (const Error& e) {
      refused = e.code() == Errc::infeasible_insert;
    }
    tally(report, Rat(cost == expected && refused ? 0 : -1), [&] {
      return "n=" + std::to_string(n) + ": cost=" + std::to_string(cost) +
             " expected=" + std::to_string(expected) +
             (refused ? "" : " (zero-swap slot not refused)");
    });
  }
  return report;
}

namespace {

const char* kSampleRulesCsv =
    "N,Proto,SrcIP,DstIP,SrcPort,DstPort,Action\n"
    "1,TCP,10.1.1.1,20.1.1.1,ANY,80,ACCEPT\n"
    "2,TCP,10.1.1.2,20.1.1.1,ANY,80,ACCEPT\n"
    "3,TCP,10.1.1.3,20.1.1.1,ANY,80,ACCEPT\n"
    "x,TCP,10.1.1.0/24,20.1.1.1,ANY,ANY,DENY\n"
    "4,TCP,0.0.0.0/0,0.0.0.0/0,ANY,445,ACCEPT\n"
    "5,TCP,0.0.0.0/0,0.0.0.0/0,ANY,17,ACCEPT\n"
    "6,TCP,0.0.0.0/0,0.0.0.0/0,ANY,18,ACCEPT\n";

}  // namespace

CheckReport check_rule_table_extraction() {
  CheckReport report;
  report.name = "rule-table";
  RuleTable table = parse_rules(kSampleRulesCsv);
  DependencyDag dag = extract_dependencies(table);
  // row indices: rules 1,2,3 = 0,1,2; x = 3; rules 4,5,6 = 4,5,6
  std::vector<std::pair<NodeId, NodeId>> expected = {{3, 0}, {3, 1}, {3, 2},
                                                     {4, 3}, {5, 3}, {6, 3}};
  std::sort(expected.begin(), expected.end());
  bool edges_match = dag.edges() == expected;
  bool non_transitive = !dag.is_transitive();
  std::vector<NodeId> priority(table.rules.size());
  for (std::size_t i = 0; i < priority.size(); ++i) priority[i] = static_cast<NodeId>(i);
  bool feasible = dag.is_linear_extension(ListState(priority));
  tally(report, Rat(edges_match && non_transitive && feasible ? 0 : -1), [&] {
    std::ostringstream out;
    out << "edges_match=" << edges_match << " non_transitive=" << non_transitive
        << " priority_feasible=" << feasible;
    return out.str();
  });
  return report;
}

CheckReport check_bit_uniformity(int n, int length, double update_mix, std::uint64_t seed) {
  CheckReport report;
  report.name = "bit-uniformity";
  if (n > 10) fail(Errc::too_large, "joint enumeration over " + std::to_string(n) + " nodes");
  Rng rng(seed);
  DependencyDag universe = random_dag(n + 2, 0.3, rng).transitive_closure();

  std::vector<NodeId> present;
  for (int i = 0; i < n; ++i) present.push_back(i);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [u, v] : universe.edges())
    if (u < n && v < n) edges.emplace_back(u, v);
  DependencyDag dag = DependencyDag::build(present, edges);
  ListState initial = random_linear_extension(dag, rng);

  std::vector<Request> requests;
  {
    std::vector<NodeId> now = present;
    NodeId next_future = n;
    for (int t = 0; t < length; ++t) {
      if (next_future < n + 2 && update_mix > 0 && rng.chance(update_mix)) {
        NodeId x = next_future++;
        std::vector<NodeId> preds, succs;
        for (NodeId p : now) {
          if (universe.has_edge(x, p)) preds.push_back(p);
          if (universe.has_edge(p, x)) succs.push_back(p);
        }
        requests.push_back(Request::insert(x, std::move(preds), std::move(succs)));
        now.push_back(x);
      } else {
        requests.push_back(Request::access(now[rng.index(now.size())]));
      }
    }
  }

  // The full ensemble: every initial bit vector, branching on each insert bit.
  std::vector<RandList> ensemble;
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    BitAssignment bits;
    for (int i = 0; i < n; ++i) bits.set(initial.at(i + 1), static_cast<int>((mask >> i) & 1));
    ensemble.emplace_back(dag, initial, bits);
  }

  for (std::size_t t = 0; t < requests.size(); ++t) {
    const Request& r = requests[t];
    if (r.kind == RequestKind::Insert) {
      std::vector<RandList> doubled;
      doubled.reserve(ensemble.size() * 2);
      for (RandList& run : ensemble) {
        RandList copy = run;
        run.queue_insert_bits({0});
        copy.queue_insert_bits({1});
        doubled.push_back(std::move(run));
        doubled.push_back(std::move(copy));
      }
      ensemble = std::move(doubled);
    }
    for (RandList& run : ensemble) run.serve(r);

    // Joint law: the bit vectors over present nodes must be exactly uniform,
    // which implies the half/half marginals and exact independence.
    const std::vector<NodeId>& order = ensemble.front().list().order();
    std::map<std::uint64_t, long long> counts;
    for (const RandList& run : ensemble) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < order.size(); ++i)
        key |= static_cast<std::uint64_t>(run.bits().get(order[i])) << i;
      ++counts[key];
    }
    const long long want_cells = 1LL << order.size();
    const long long want_count = static_cast<long long>(ensemble.size()) / want_cells;
    bool uniform = static_cast<long long>(counts.size()) == want_cells;
    for (const auto& [key, count] : counts) uniform = uniform && count == want_count;
    tally(report, Rat(uniform ? 0 : -1),
          [&] { return "non-uniform joint bit law after step " + std::to_string(t + 1); });
  }
  return report;
}

Rat competitive_ratio_det(const DependencyDag& dag, const ListState& initial,
                          const std::vector<Request>& requests) {
  OptTrace opt = opt_cost(dag, initial, requests);
  DetList det(dag, initial);
  for (const Request& r : requests) det.serve(r);
  return Rat(det.ledger().total(), opt.total_cost);
}

Rat competitive_ratio_rand_exact(const DependencyDag& dag, const ListState& initial,
                                 const std::vector<Request>& requests) {
  OptTrace opt = opt_cost(dag, initial, requests);
  return rand_exact_expectation(dag, initial, requests) / Rat(opt.total_cost);
}

double competitive_ratio_rand_mc(const DependencyDag& dag, const ListState& initial,
                                 const std::vector<Request>& requests, int trials,
                                 std::uint64_t seed) {
  if (trials <= 0) fail(Errc::bad_spec, "trials must be positive");
  OptTrace opt = opt_cost(dag, initial, requests);
  long long total = 0;
  for (int i = 0; i < trials; ++i) {
    RandList rand = RandList::seeded(dag, initial, seed + static_cast<std::uint64_t>(i));
    for (const Request& r : requests) rand.serve(r);
    total += rand.ledger().total();
  }
  return static_cast<double>(total) /
         (static_cast<double>(trials) * static_cast<double>(opt.total_cost));
}

}  // namespace deplist
