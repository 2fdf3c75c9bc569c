#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deplist/dag.hpp"
#include "deplist/list_state.hpp"

namespace deplist {

/// IPv4 CIDR prefix; length 0 matches everything.
struct Ipv4Prefix {
  std::uint32_t addr = 0;
  int len = 0;

  bool matches(std::uint32_t ip) const;
  bool intersects(const Ipv4Prefix& other) const;
  std::string to_string() const;
};

/// Exact port or ANY.
struct PortMatch {
  std::optional<std::uint16_t> value;

  bool matches(std::uint16_t port) const { return !value || *value == port; }
  bool intersects(const PortMatch& other) const {
    return !value || !other.value || *value == *other.value;
  }
  std::string to_string() const { return value ? std::to_string(*value) : "ANY"; }
};

enum class RuleAction { Accept, Deny };

struct Rule {
  std::string label;  // rule number column; kept verbatim
  std::string proto;  // uppercase protocol name or "ANY"
  Ipv4Prefix src_ip;
  Ipv4Prefix dst_ip;
  PortMatch src_port;
  PortMatch dst_port;
  RuleAction action = RuleAction::Accept;
};

/// Rules in priority order: earlier row = higher priority.
struct RuleTable {
  std::vector<Rule> rules;
};

struct Packet {
  std::string proto;
  std::uint32_t src_ip = 0;
  std::uint32_t dst_ip = 0;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
};

/// CSV dialect with header row N,Proto,SrcIP,DstIP,SrcPort,DstPort,Action.
RuleTable parse_rules(const std::string& text);

/// One packet per line: proto,src,dst,sport,dport.
std::vector<Packet> parse_packets(const std::string& text);

std::string serialize_rules(const RuleTable& table);

bool rule_matches(const Rule& rule, const Packet& packet);

/// True iff the match regions intersect and (unless strict) the actions
/// differ. Same-action overlapping rules are order-independent for the
/// resulting action, so by default they impose no constraint; strict mode
/// constrains every intersecting pair.
bool rules_overlap(const Rule& a, const Rule& b, bool strict = false);

/// Node i = rule at table index i. Every overlapping pair contributes the edge
/// (lower-priority rule, higher-priority rule): the higher-priority rule must
/// stay in front. Acyclic by construction.
DependencyDag extract_dependencies(const RuleTable& table, bool strict = false);

struct ClassifyResult {
  int rule_index = 0;  // node id / table index
  std::string label;
  RuleAction action = RuleAction::Accept;
  int cost = 0;  // list position of the matched rule
};

/// First rule in list order matching the packet; empty means the default
/// policy applies and nothing is charged.
std::optional<ClassifyResult> classify(const Packet& packet, const ListState& list,
                                       const RuleTable& table);

}  // namespace deplist
