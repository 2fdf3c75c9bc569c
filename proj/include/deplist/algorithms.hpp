#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "deplist/dag.hpp"
#include "deplist/list_core.hpp"
#include "deplist/list_state.hpp"
#include "deplist/rng.hpp"

namespace deplist {

enum class RequestKind { Access, Insert, Delete };

struct Request {
  RequestKind kind = RequestKind::Access;
  NodeId node = 0;
  std::vector<NodeId> insert_preds;  // must precede the new node
  std::vector<NodeId> insert_succs;  // the new node must precede them

  static Request access(NodeId n) { return {RequestKind::Access, n, {}, {}}; }
  static Request insert(NodeId n, std::vector<NodeId> preds, std::vector<NodeId> succs) {
    return {RequestKind::Insert, n, std::move(preds), std::move(succs)};
  }
  static Request remove(NodeId n) { return {RequestKind::Delete, n, {}, {}}; }
};

/// Per-request ledger entry. For access events d_chain is the sequence of
/// nodes Move-Recursively-Forward moved, ordered by increasing position in
/// list_before, accessed node last.
struct EventRecord {
  Request request;
  long long access_cost = 0;         // service charge (access pos / insert n / delete pos-1)
  long long rearrangement_cost = 0;  // adjacent swaps performed
  std::vector<NodeId> d_chain;
  ListState list_before;
  ListState list_after;
  std::optional<int> bit_before;
  std::optional<int> bit_after;

  long long total() const { return access_cost + rearrangement_cost; }
};

struct MrfResult {
  long long cost = 0;
  std::vector<NodeId> chain;  // d_1..d_delta
};

/// Move-Recursively-Forward: move y just behind its direct dependency, then
/// recurse on that dependency; a node with no present dependency goes to the
/// front. Returns the swap cost and the chain d.
MrfResult mrf(ListState& list, const DependencyDag& dag, NodeId y, CostLedger* ledger = nullptr);

/// Zero-rearrangement insertion slot: immediately after the furthest required
/// predecessor (position 1 if none). Throws InfeasibleInsert when a required
/// successor sits at or before that slot, which can happen only when the
/// transitivity assumption is violated.
int insert_position(const ListState& list, const std::vector<NodeId>& preds,
                    const std::vector<NodeId>& succs);

/// Shared engine plumbing: validated insert/delete handling and the event log.
class EngineBase {
 public:
  virtual ~EngineBase() = default;
  virtual EventRecord serve(const Request& request) = 0;

  const ListState& list() const { return list_; }
  const DependencyDag& dag() const { return dag_; }
  const CostLedger& ledger() const { return ledger_; }

 protected:
  EngineBase(DependencyDag dag, ListState initial);

  void validate_insert(const Request& r) const;
  /// Applies the structural part of insert/delete and fills the record's
  /// costs. Movement-free by construction.
  void apply_insert(const Request& r, EventRecord& rec);
  void apply_delete(const Request& r, EventRecord& rec);

  DependencyDag dag_;
  ListState list_;
  CostLedger ledger_;
};

/// The deterministic algorithm: access charges the position, then runs
/// Move-Recursively-Forward on the accessed node.
class DetList : public EngineBase {
 public:
  DetList(DependencyDag dag, ListState initial) : EngineBase(std::move(dag), std::move(initial)) {}
  EventRecord serve(const Request& request) override;
};

/// The randomized algorithm: per-node bits, Move-Recursively-Forward only when
/// the accessed node's bit is 0, and an unconditional flip afterwards.
/// Inserted nodes draw a uniform bit from the seeded generator unless a queued
/// override is present (used by exact-expectation enumeration).
class RandList : public EngineBase {
 public:
  RandList(DependencyDag dag, ListState initial, BitAssignment bits, std::uint64_t seed = 0);

  /// Bits for all present nodes drawn from the seed, in list order.
  static RandList seeded(DependencyDag dag, ListState initial, std::uint64_t seed);

  EventRecord serve(const Request& request) override;

  const BitAssignment& bits() const { return bits_; }
  void queue_insert_bits(std::vector<int> bits);

 private:
  BitAssignment bits_;
  Rng rng_;
  std::deque<int> queued_insert_bits_;
};

/// Never rearranges; a baseline for experiments.
class StaticList : public EngineBase {
 public:
  StaticList(DependencyDag dag, ListState initial)
      : EngineBase(std::move(dag), std::move(initial)) {}
  EventRecord serve(const Request& request) override;
};

/// Classic Move-To-Front in the paid exchange model, valid only for empty
/// DAGs. Differential-test oracle: on empty DAGs DET must match it event for
/// event. Keeps its own flat vector instead of going through ListState moves.
class MtfReference {
 public:
  MtfReference(const DependencyDag& dag, ListState initial);
  EventRecord serve(const Request& request);
  const std::vector<NodeId>& order() const { return order_; }
  const CostLedger& ledger() const { return ledger_; }

 private:
  std::vector<NodeId> order_;
  CostLedger ledger_;
};

/// Classic BIT in the paid exchange model (move to front iff the node's bit is
/// 0, then flip), valid only for empty DAGs; oracle for RAND.
class BitReference {
 public:
  BitReference(const DependencyDag& dag, ListState initial, BitAssignment bits,
               std::uint64_t seed = 0);
  EventRecord serve(const Request& request);
  void queue_insert_bits(std::vector<int> bits);
  const std::vector<NodeId>& order() const { return order_; }
  const BitAssignment& bits() const { return bits_; }
  const CostLedger& ledger() const { return ledger_; }

 private:
  std::vector<NodeId> order_;
  BitAssignment bits_;
  Rng rng_;
  std::deque<int> queued_insert_bits_;
  CostLedger ledger_;
};

}  // namespace deplist
