#include "deplist/list_state.hpp"

#include <algorithm>
#include <sstream>

namespace deplist {

namespace {
void check_id(NodeId id) {
  if (id < 0) fail(Errc::bad_spec, "negative node id " + std::to_string(id));
}
}  // namespace

ListState::ListState(std::vector<NodeId> order) : order_(std::move(order)) {
  NodeId max_id = -1;
  for (NodeId id : order_) {
    check_id(id);
    max_id = std::max(max_id, id);
  }
  pos_.assign(max_id + 1, 0);
  for (int i = 0; i < static_cast<int>(order_.size()); ++i) {
    if (pos_[order_[i]] != 0)
      fail(Errc::duplicate_node, "node " + std::to_string(order_[i]) + " appears twice");
    pos_[order_[i]] = i + 1;
  }
}

bool ListState::contains(NodeId id) const {
  return id >= 0 && id < static_cast<int>(pos_.size()) && pos_[id] != 0;
}

int ListState::position(NodeId id) const {
  if (!contains(id)) fail(Errc::node_absent, "node " + std::to_string(id) + " not in list");
  return pos_[id];
}

NodeId ListState::at(int pos) const {
  if (pos < 1 || pos > size()) fail(Errc::bad_spec, "position " + std::to_string(pos) + " out of range");
  return order_[pos - 1];
}

void ListState::insert_at(NodeId id, int pos) {
  check_id(id);
  if (contains(id)) fail(Errc::node_present, "node " + std::to_string(id) + " already in list");
  if (pos < 1 || pos > size() + 1)
    fail(Errc::bad_spec, "insert position " + std::to_string(pos) + " out of range");
  order_.insert(order_.begin() + (pos - 1), id);
  if (id >= static_cast<int>(pos_.size())) pos_.resize(id + 1, 0);
  reindex_from(pos);
}

void ListState::remove(NodeId id) {
  int p = position(id);
  order_.erase(order_.begin() + (p - 1));
  pos_[id] = 0;
  reindex_from(p);
}

void ListState::swap_adjacent(int pos) {
  if (pos < 1 || pos + 1 > size()) fail(Errc::bad_spec, "swap position out of range");
  std::swap(order_[pos - 1], order_[pos]);
  pos_[order_[pos - 1]] = pos;
  pos_[order_[pos]] = pos + 1;
}

void ListState::reindex_from(int pos) {
  for (int i = pos - 1; i < static_cast<int>(order_.size()); ++i) pos_[order_[i]] = i + 1;
}

std::string ListState::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) out << ' ';
    out << order_[i];
  }
  out << ']';
  return out.str();
}

bool BitAssignment::operator==(const BitAssignment& other) const {
  std::size_t n = std::max(bits_.size(), other.bits_.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::int8_t a = i < bits_.size() ? bits_[i] : -1;
    std::int8_t b = i < other.bits_.size() ? other.bits_[i] : -1;
    if (a != b) return false;
  }
  return true;
}

}  // namespace deplist
