#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deplist/algorithms.hpp"
#include "deplist/dag.hpp"
#include "deplist/list_state.hpp"

namespace deplist {

using Rat = boost::rational<long long>;

std::string rat_to_string(const Rat& r);

/// Outcome of one event-by-event check. worst_slack is the minimum of
/// (bound - observed) across all asserted bounds, so 0 means some event was
/// tight and a negative value accompanies a violation.
struct CheckReport {
  std::string name;
  long long instances = 0;
  long long violations = 0;
  std::optional<Rat> worst_slack;
  std::string witness;  // first violation, empty when none

  bool ok() const { return violations == 0; }
  void count(const Rat& slack, const std::string& describe_on_violation);
  std::string summary() const;
};

/// Random single-event sweeps: a random DAG, a random pair of linear
/// extensions (subject, reference) and a random accessed node per trial.
struct EventSweepSpec {
  long long trials = 10000;
  std::uint64_t seed = 1;
  int min_n = 2;
  int max_n = 8;
  double edge_prob = 0.35;
};

/// Union of the K_j equals K_delta, and the union of S_j intersected with L_j
/// equals the union of the L_j, verbatim as set equalities.
CheckReport check_set_relations(const EventSweepSpec& spec);

/// Rearrangement creates at most k inversions, destroys at least l, and the
/// net change is at most k - l.
CheckReport check_inversion_change(const EventSweepSpec& spec);

/// Rearrangement cost is at most the accessed position, and equals exactly
/// pos(accessed) - delta.
CheckReport check_rearrangement_bound(const EventSweepSpec& spec);

/// Runs DET and OPT side by side on one instance; asserts the per-step
/// amortized inequality cost + delta(Phi) <= 4 * opt-cost with Phi = twice the
/// inversion count, the paid-exchange accounting (delta(Phi) <= 2 per OPT
/// swap) and total <= 4 * OPT with no additive slack.
CheckReport check_det_amortized(const DependencyDag& dag, const ListState& initial,
                                const std::vector<Request>& requests);

/// Exact conditional expectations at one fixed event: enumerates every bit
/// assignment of the non-accessed nodes and asserts
///   E[cost + delta(Phi) | bit = 1] <= k + 1  (tight),
///   E[cost + delta(Phi) | bit = 0] <= 5(k + 1),
/// and the mixture bound 3(k + 1), with Phi = 5/2 I0 + 7/2 I1.
CheckReport check_rand_expectation(const DependencyDag& dag, const ListState& subject,
                                   const ListState& reference, NodeId accessed);

/// check_rand_expectation over random events.
CheckReport sweep_rand_expectation(long long trials, std::uint64_t seed, int max_n = 8);

/// Exhaustive sweep over every DAG on `n` nodes with random length-`length`
/// access sequences; drives both the deterministic amortized/ratio checks and
/// the randomized exact-expectation checks.
struct CompetitiveSweepSpec {
  int n = 4;
  int sequences_per_dag = 200;
  int length = 8;
  std::uint64_t seed = 1;
  bool rand_event_bounds = true;   // per-event conditional bounds (memoized)
  bool det_side = true;
  bool rand_side = true;
};

struct CompetitiveSweepReport {
  CheckReport det_amortized;   // per-step amortized + paid-exchange accounting
  CheckReport det_ratio;       // DET <= 4 OPT, zero additive slack
  CheckReport rand_ratio;      // E[RAND] <= 3 OPT, exact over all bit vectors
  CheckReport rand_event;      // conditional expectation bounds at every event
  CheckReport opt_lower;       // OPT <= DET and OPT <= every fixed-bit run
  bool ok() const;
};

CompetitiveSweepReport sweep_competitive(const CompetitiveSweepSpec& spec);

/// On empty DAGs DET must equal classic Move-To-Front and RAND must equal
/// classic BIT, event for event (costs and configurations).
CheckReport sweep_reduction_equivalence(long long sequences, std::uint64_t seed);

/// transposition_distance == bfs_distance_oracle on every pair of linear
/// extensions, over random DAGs with at most max_n nodes.
CheckReport sweep_distance_oracle(int dags, std::uint64_t seed, int max_n = 5);

/// Insert/delete sweep over every transitive universe DAG on 2..max_n nodes:
/// zero-swap inserts, DET <= 4 OPT and exact E[RAND] <= 4 OPT.
struct InsertDeleteSweepSpec {
  int max_n = 4;
  int sequences_per_universe = 25;
  int length = 8;
  int max_updates = 2;
  std::uint64_t seed = 1;
};

struct InsertDeleteReport {
  CheckReport det_ratio;
  CheckReport rand_ratio;
  CheckReport zero_swap_inserts;
  bool ok() const;
};

InsertDeleteReport sweep_insert_delete(const InsertDeleteSweepSpec& spec);

/// Quadratic-insert reproduction: minimum feasible rearrangement cost is
/// exactly (n/2)^2 for the requested even sizes, and the zero-rearrangement
/// slot search refuses.
CheckReport check_quadratic_insert(const std::vector<int>& sizes = {2, 4, 6, 8});

/// Bundled 7-rule firewall table: extraction yields exactly the expected
/// dependency edges and the result is not transitive.
CheckReport check_rule_table_extraction();

/// Exact bit-distribution law: enumerating every initial bit vector (and both
/// values of each inserted bit), after every step the joint distribution over
/// present nodes' bits is uniform, hence marginals are 1/2 and bits are
/// independent.
CheckReport check_bit_uniformity(int n, int length, double update_mix, std::uint64_t seed);

/// All labeled DAGs on n nodes (n <= 4 is practical).
std::vector<DependencyDag> all_dags(int n);
std::vector<DependencyDag> all_transitive_dags(int n);

Rat competitive_ratio_det(const DependencyDag& dag, const ListState& initial,
                          const std::vector<Request>& requests);

/// Exact expectation: enumerates every initial bit vector and every insertion
/// bit.
Rat competitive_ratio_rand_exact(const DependencyDag& dag, const ListState& initial,
                                 const std::vector<Request>& requests);

/// Monte-Carlo estimate; reports are labeled non-exact and excluded from
/// acceptance gates.
double competitive_ratio_rand_mc(const DependencyDag& dag, const ListState& initial,
                                 const std::vector<Request>& requests, int trials,
                                 std::uint64_t seed);

}  // namespace deplist
