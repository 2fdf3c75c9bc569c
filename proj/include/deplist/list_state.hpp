#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deplist/errors.hpp"

namespace deplist {

/// Opaque node handle. Handles are small non-negative integers assigned at
/// build/insert time; string names live at the I/O boundary only.
using NodeId = int;

/// Ordering of the currently present nodes. Position 1 is the head.
class ListState {
 public:
  ListState() = default;
  explicit ListState(std::vector<NodeId> order);

  int size() const { return static_cast<int>(order_.size()); }
  bool empty() const { return order_.empty(); }
  bool contains(NodeId id) const;

  /// 1-based position of a present node.
  int position(NodeId id) const;

  /// Node at 1-based position pos.
  NodeId at(int pos) const;

  const std::vector<NodeId>& order() const { return order_; }

  /// Access cost of a present node: its position. The list is unchanged.
  int access(NodeId id) const { return position(id); }

  /// Splice a new node at 1-based position pos (1 <= pos <= size+1).
  void insert_at(NodeId id, int pos);

  /// Remove a present node.
  void remove(NodeId id);

  /// Swap the nodes at positions pos and pos+1.
  void swap_adjacent(int pos);

  bool operator==(const ListState& other) const { return order_ == other.order_; }
  bool operator!=(const ListState& other) const { return order_ != other.order_; }

  std::string to_string() const;

 private:
  void reindex_from(int pos);

  std::vector<NodeId> order_;
  std::vector<int> pos_;  // id -> 1-based position, 0 = absent
};

/// Paid exchange model accounting: access charges plus one unit per adjacent
/// transposition.
struct CostLedger {
  long long access_cost = 0;
  long long transposition_cost = 0;

  long long total() const { return access_cost + transposition_cost; }
};

/// Per-node binary counters for the randomized algorithm.
class BitAssignment {
 public:
  bool has(NodeId id) const {
    return id >= 0 && id < static_cast<int>(bits_.size()) && bits_[id] >= 0;
  }
  int get(NodeId id) const {
    if (!has(id)) fail(Errc::missing_bit, "no bit assigned to node " + std::to_string(id));
    return bits_[id];
  }
  void set(NodeId id, int bit) {
    if (id < 0) fail(Errc::bad_spec, "negative node id");
    if (id >= static_cast<int>(bits_.size())) bits_.resize(id + 1, -1);
    bits_[id] = static_cast<std::int8_t>(bit & 1);
  }
  void flip(NodeId id) { set(id, 1 - get(id)); }
  void erase(NodeId id) {
    if (id >= 0 && id < static_cast<int>(bits_.size())) bits_[id] = -1;
  }

  bool operator==(const BitAssignment& other) const;

 private:
  std::vector<std::int8_t> bits_;  // -1 = unset
};

}  // namespace deplist
