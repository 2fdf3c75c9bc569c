#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "deplist/dag.hpp"
#include "deplist/list_state.hpp"

namespace deplist {

/// Inversions of `subject` against `reference`: ordered pairs (u, v) with u
/// before v in the subject list and v before u in the reference list. When
/// bits are supplied, the pair's type is the bit of v (the element later in
/// the subject list): type-0 inversions weigh 5/2, type-1 weigh 7/2.
struct InversionReport {
  long long total = 0;
  long long type0 = 0;  // meaningful only when typed
  long long type1 = 0;
  bool typed = false;
  std::vector<std::pair<NodeId, NodeId>> pairs;  // filled on request
};

/// The K/L/S decomposition for one Move-Recursively-Forward chain d_1..d_delta
/// (increasing subject position, accessed node last):
///   K_j = nodes before d_j in both lists,
///   L_j = nodes before d_j in the subject list but after d_j in the reference,
///   S_1 = subject positions 1..pos(d_1), S_j = positions pos(d_{j-1})+1..pos(d_j).
struct KlsReport {
  std::vector<NodeId> d;
  std::vector<std::vector<NodeId>> K;
  std::vector<std::vector<NodeId>> L;
  std::vector<std::vector<NodeId>> S;
  long long k = 0;  // |K_delta|
  long long l = 0;  // |L_delta|
  int delta() const { return static_cast<int>(d.size()); }
};

/// Move a present node y forward to 1-based position p <= pos(y), shifting the
/// intermediate nodes back one slot. Charges one unit per adjacent swap into
/// the optional ledger and returns the swap count. Throws InfeasibleMove if a
/// node it would pass must precede y.
int move_to(ListState& list, const DependencyDag& dag, NodeId y, int p,
            CostLedger* ledger = nullptr);

InversionReport inversions(const ListState& subject, const ListState& reference,
                           const BitAssignment* bits = nullptr, bool collect_pairs = false);

KlsReport kls_sets(const ListState& subject, const ListState& reference,
                   const std::vector<NodeId>& d);

/// Phi = 2 * inversions, returned in half-units (so 4 per inversion). Kept
/// integral so invariant checks never touch floating point.
long long potential_det_half(const ListState& subject, const ListState& reference);

/// Phi = 5/2 * I0 + 7/2 * I1, returned in half-units (5 per type-0 inversion,
/// 7 per type-1).
long long potential_rand_half(const ListState& subject, const ListState& reference,
                              const BitAssignment& bits);

}  // namespace deplist
