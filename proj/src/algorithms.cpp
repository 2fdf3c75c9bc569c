#include "deplist/algorithms.hpp"

#include <algorithm>
#include <string>

namespace deplist {

MrfResult mrf(ListState& list, const DependencyDag& dag, NodeId y, CostLedger* ledger) {
  MrfResult result;
  NodeId current = y;
  for (;;) {
    result.chain.push_back(current);
    std::optional<NodeId> dep = dag.direct_dependency(list, current);
    if (!dep) {
      result.cost += move_to(list, dag, current, 1, ledger);
      break;
    }
    result.cost += move_to(list, dag, current, list.position(*dep) + 1, ledger);
    current = *dep;
  }
  std::reverse(result.chain.begin(), result.chain.end());
  return result;
}

int insert_position(const ListState& list, const std::vector<NodeId>& preds,
                    const std::vector<NodeId>& succs) {
  int slot = 1;
  for (NodeId p : preds) slot = std::max(slot, list.position(p) + 1);
  for (NodeId s : succs) {
    if (list.position(s) < slot)
      fail(Errc::infeasible_insert,
           "no zero-rearrangement position: required successor " + std::to_string(s) +
               " precedes the slot after the last required predecessor");
  }
  return slot;
}

EngineBase::EngineBase(DependencyDag dag, ListState initial)
    : dag_(std::move(dag)), list_(std::move(initial)) {
  if (static_cast<int>(list_.size()) != dag_.node_count())
    fail(Errc::node_set_mismatch, "initial list must contain exactly the DAG's nodes");
  if (!dag_.is_linear_extension(list_))
    fail(Errc::not_feasible, "initial list violates the dependency DAG");
}

void EngineBase::validate_insert(const Request& r) const {
  if (list_.contains(r.node))
    fail(Errc::node_present, "insert: node " + std::to_string(r.node) + " already present");
  for (NodeId p : r.insert_preds)
    if (!list_.contains(p))
      fail(Errc::unknown_node, "insert constraint references absent node " + std::to_string(p));
  for (NodeId s : r.insert_succs) {
    if (!list_.contains(s))
      fail(Errc::unknown_node, "insert constraint references absent node " + std::to_string(s));
    if (std::find(r.insert_preds.begin(), r.insert_preds.end(), s) != r.insert_preds.end())
      fail(Errc::bad_spec, "node " + std::to_string(s) + " listed as both before and after");
  }
}

void EngineBase::apply_insert(const Request& r, EventRecord& rec) {
  validate_insert(r);
  const int n_before = list_.size();
  // The slot search runs against the current list; the DAG update follows so
  // a failed (non-transitive) insert leaves the engine untouched.
  int slot = insert_position(list_, r.insert_preds, r.insert_succs);
  dag_ = dag_.with_inserted(r.node, r.insert_preds, r.insert_succs);
  list_.insert_at(r.node, slot);
  rec.access_cost = n_before;
  rec.rearrangement_cost = 0;
  ledger_.access_cost += n_before;
}

void EngineBase::apply_delete(const Request& r, EventRecord& rec) {
  int pos = list_.position(r.node);
  rec.access_cost = pos - 1;  // nodes preceding the deleted node
  rec.rearrangement_cost = 0;
  ledger_.access_cost += pos - 1;
  list_.remove(r.node);
  dag_ = dag_.with_removed(r.node);
}

EventRecord DetList::serve(const Request& request) {
  EventRecord rec;
  rec.request = request;
  rec.list_before = list_;
  switch (request.kind) {
    case RequestKind::Access: {
      rec.access_cost = list_.access(request.node);
      ledger_.access_cost += rec.access_cost;
      MrfResult moved = mrf(list_, dag_, request.node, &ledger_);
      rec.rearrangement_cost = moved.cost;
      rec.d_chain = std::move(moved.chain);
      break;
    }
    case RequestKind::Insert:
      apply_insert(request, rec);
      break;
    case RequestKind::Delete:
      apply_delete(request, rec);
      break;
  }
  rec.list_after = list_;
  return rec;
}

RandList::RandList(DependencyDag dag, ListState initial, BitAssignment bits, std::uint64_t seed)
    : EngineBase(std::move(dag), std::move(initial)), bits_(std::move(bits)), rng_(seed) {
  for (NodeId id : list_.order())
    bits_.get(id);  // throws MissingBit when a present node lacks a bit
}

RandList RandList::seeded(DependencyDag dag, ListState initial, std::uint64_t seed) {
  Rng rng(seed);
  BitAssignment bits;
  for (NodeId id : initial.order()) bits.set(id, rng.bit());
  return RandList(std::move(dag), std::move(initial), std::move(bits), seed ^ 0x9e3779b97f4a7c15ull);
}

void RandList::queue_insert_bits(std::vector<int> bits) {
  for (int b : bits) queued_insert_bits_.push_back(b & 1);
}

EventRecord RandList::serve(const Request& request) {
  EventRecord rec;
  rec.request = request;
  rec.list_before = list_;
  switch (request.kind) {
    case RequestKind::Access: {
      rec.access_cost = list_.access(request.node);
      ledger_.access_cost += rec.access_cost;
      rec.bit_before = bits_.get(request.node);
      if (*rec.bit_before == 0) {
        MrfResult moved = mrf(list_, dag_, request.node, &ledger_);
        rec.rearrangement_cost = moved.cost;
        rec.d_chain = std::move(moved.chain);
      }
      bits_.flip(request.node);
      rec.bit_after = bits_.get(request.node);
      break;
    }
    case RequestKind::Insert: {
      apply_insert(request, rec);
      int bit;
      if (!queued_insert_bits_.empty()) {
        bit = queued_insert_bits_.front();
        queued_insert_bits_.pop_front();
      } else {
        bit = rng_.bit();
      }
      bits_.set(request.node, bit);
      rec.bit_after = bit;
      break;
    }
    case RequestKind::Delete:
      rec.bit_before = bits_.get(request.node);
      apply_delete(request, rec);
      bits_.erase(request.node);
      break;
  }
  rec.list_after = list_;
  return rec;
}

EventRecord StaticList::serve(const Request& request) {
  EventRecord rec;
  rec.request = request;
  rec.list_before = list_;
  switch (request.kind) {
    case RequestKind::Access:
      rec.access_cost = list_.access(request.node);
      ledger_.access_cost += rec.access_cost;
      break;
    case RequestKind::Insert:
      apply_insert(request, rec);
      break;
    case RequestKind::Delete:
      apply_delete(request, rec);
      break;
  }
  rec.list_after = list_;
  return rec;
}

namespace {

void require_empty_dag(const DependencyDag& dag) {
  if (dag.edge_count() != 0)
    fail(Errc::non_empty_dag, "reference algorithms require a constraint-free DAG");
}

int flat_index(const std::vector<NodeId>& order, NodeId id) {
  auto it = std::find(order.begin(), order.end(), id);
  if (it == order.end()) fail(Errc::node_absent, "node " + std::to_string(id) + " not in list");
  return static_cast<int>(it - order.begin());
}

ListState snapshot(const std::vector<NodeId>& order) { return ListState(order); }

}  // namespace

MtfReference::MtfReference(const DependencyDag& dag, ListState initial)
    : order_(initial.order()) {
  require_empty_dag(dag);
}

EventRecord MtfReference::serve(const Request& request) {
  EventRecord rec;
  rec.request = request;
  rec.list_before = snapshot(order_);
  switch (request.kind) {
    case RequestKind::Access: {
      int idx = flat_index(order_, request.node);
      rec.access_cost = idx + 1;
      rec.rearrangement_cost = idx;  // paid exchanges to the front
      rec.d_chain = {request.node};
      order_.erase(order_.begin() + idx);
      order_.insert(order_.begin(), request.node);
      ledger_.access_cost += rec.access_cost;
      ledger_.transposition_cost += rec.rearrangement_cost;
      break;
    }
    case RequestKind::Insert: {
      if (!request.insert_preds.empty() || !request.insert_succs.empty())
        fail(Errc::non_empty_dag, "reference algorithms accept constraint-free inserts only");
      rec.access_cost = static_cast<long long>(order_.size());
      ledger_.access_cost += rec.access_cost;
      order_.insert(order_.begin(), request.node);
      break;
    }
    case RequestKind::Delete: {
      int idx = flat_index(order_, request.node);
      rec.access_cost = idx;
      ledger_.access_cost += idx;
      order_.erase(order_.begin() + idx);
      break;
    }
  }
  rec.list_after = snapshot(order_);
  return rec;
}

BitReference::BitReference(const DependencyDag& dag, ListState initial, BitAssignment bits,
                           std::uint64_t seed)
    : order_(initial.order()), bits_(std::move(bits)), rng_(seed) {
  require_empty_dag(dag);
  for (NodeId id : order_) bits_.get(id);
}

void BitReference::queue_insert_bits(std::vector<int> bits) {
  for (int b : bits) queued_insert_bits_.push_back(b & 1);
}

EventRecord BitReference::serve(const Request& request) {
  EventRecord rec;
  rec.request = request;
  rec.list_before = snapshot(order_);
  switch (request.kind) {
    case RequestKind::Access: {
      int idx = flat_index(order_, request.node);
      rec.access_cost = idx + 1;
      ledger_.access_cost += rec.access_cost;
      rec.bit_before = bits_.get(request.node);
      if (*rec.bit_before == 0) {
        rec.rearrangement_cost = idx;
        rec.d_chain = {request.node};
        order_.erase(order_.begin() + idx);
        order_.insert(order_.begin(), request.node);
        ledger_.transposition_cost += idx;
      }
      bits_.flip(request.node);
      rec.bit_after = bits_.get(request.node);
      break;
    }
    case RequestKind::Insert: {
      if (!request.insert_preds.empty() || !request.insert_succs.empty())
        fail(Errc::non_empty_dag, "reference algorithms accept constraint-free inserts only");
      rec.access_cost = static_cast<long long>(order_.size());
      ledger_.access_cost += rec.access_cost;
      order_.insert(order_.begin(), request.node);
      int bit;
      if (!queued_insert_bits_.empty()) {
        bit = queued_insert_bits_.front();
        queued_insert_bits_.pop_front();
      } else {
        bit = rng_.bit();
      }
      bits_.set(request.node, bit);
      rec.bit_after = bit;
      break;
    }
    case RequestKind::Delete: {
      int idx = flat_index(order_, request.node);
      rec.access_cost = idx;
      ledger_.access_cost += idx;
      rec.bit_before = bits_.get(request.node);
      order_.erase(order_.begin() + idx);
      bits_.erase(request.node);
      break;
    }
  }
  rec.list_after = snapshot(order_);
  return rec;
}

}  // namespace deplist
