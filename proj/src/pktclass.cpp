#include "deplist/pktclass.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "deplist/errors.hpp"

namespace deplist {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  fail(Errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

long parse_number(const std::string& s, int line_no, const std::string& what) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
    parse_fail(line_no, what + ": expected a number, got '" + s + "'");
  return std::stol(s);
}

Ipv4Prefix parse_cidr(const std::string& text, int line_no) {
  std::string body = text;
  int len = 32;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    body = text.substr(0, slash);
    std::string len_text = text.substr(slash + 1);
    if (len_text.empty() || len_text.size() > 3 ||
        len_text.find_first_not_of("0123456789") != std::string::npos)
      fail(Errc::bad_cidr, "line " + std::to_string(line_no) + ": bad prefix length in '" + text + "'");
    len = static_cast<int>(std::stol(len_text));
    if (len < 0 || len > 32)
      fail(Errc::bad_cidr, "line " + std::to_string(line_no) + ": prefix length " +
                               std::to_string(len) + " outside 0..32");
  }
  std::uint32_t addr = 0;
  int octets = 0;
  std::string part;
  std::istringstream in(body);
  while (std::getline(in, part, '.')) {
    if (part.empty() || part.size() > 3 ||
        part.find_first_not_of("0123456789") != std::string::npos || ++octets > 4 ||
        std::stol(part) > 255)
      fail(Errc::bad_cidr, "line " + std::to_string(line_no) + ": bad IPv4 address '" + body + "'");
    addr = (addr << 8) | static_cast<std::uint32_t>(std::stol(part));
  }
  if (octets != 4)
    fail(Errc::bad_cidr, "line " + std::to_string(line_no) + ": bad IPv4 address '" + body + "'");
  return {addr, len};
}

PortMatch parse_port(const std::string& text, int line_no) {
  if (upper(text) == "ANY") return {};
  if (text.empty() || text.size() > 5 || text.find_first_not_of("0123456789") != std::string::npos)
    fail(Errc::bad_port, "line " + std::to_string(line_no) + ": bad port '" + text + "'");
  long value = std::stol(text);
  if (value > 65535)
    fail(Errc::bad_port, "line " + std::to_string(line_no) + ": port " + std::to_string(value) +
                             " outside 0..65535");
  return {static_cast<std::uint16_t>(value)};
}

}  // namespace

bool Ipv4Prefix::matches(std::uint32_t ip) const {
  if (len == 0) return true;
  std::uint32_t mask = len == 32 ? 0xffffffffu : ~((std::uint32_t{1} << (32 - len)) - 1);
  return (ip & mask) == (addr & mask);
}

bool Ipv4Prefix::intersects(const Ipv4Prefix& other) const {
  int common = std::min(len, other.len);
  if (common == 0) return true;
  std::uint32_t mask = common == 32 ? 0xffffffffu : ~((std::uint32_t{1} << (32 - common)) - 1);
  return (addr & mask) == (other.addr & mask);
}

std::string Ipv4Prefix::to_string() const {
  std::ostringstream out;
  out << ((addr >> 24) & 0xff) << '.' << ((addr >> 16) & 0xff) << '.' << ((addr >> 8) & 0xff)
      << '.' << (addr & 0xff);
  if (len != 32) out << '/' << len;
  return out.str();
}

RuleTable parse_rules(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  RuleTable table;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split_csv(t);
    if (!saw_header) {
      const std::vector<std::string> expected = {"N",       "Proto",   "SrcIP", "DstIP",
                                                 "SrcPort", "DstPort", "Action"};
      if (fields.size() != expected.size())
        parse_fail(line_no, "expected header N,Proto,SrcIP,DstIP,SrcPort,DstPort,Action");
      for (std::size_t i = 0; i < expected.size(); ++i)
        if (fields[i] != expected[i]) parse_fail(line_no, "unexpected header field '" + fields[i] + "'");
      saw_header = true;
      continue;
    }
    if (fields.size() != 7) parse_fail(line_no, "expected 7 fields, got " + std::to_string(fields.size()));
    Rule rule;
    rule.label = fields[0];
    if (rule.label.empty()) parse_fail(line_no, "empty rule id");
    for (const Rule& existing : table.rules)
      if (existing.label == rule.label)
        fail(Errc::validation_error, "line " + std::to_string(line_no) + ": duplicate rule id '" +
                                         rule.label + "'");
    rule.proto = upper(fields[1]);
    rule.src_ip = upper(fields[2]) == "ANY" ? Ipv4Prefix{0, 0} : parse_cidr(fields[2], line_no);
    rule.dst_ip = upper(fields[3]) == "ANY" ? Ipv4Prefix{0, 0} : parse_cidr(fields[3], line_no);
    rule.src_port = parse_port(fields[4], line_no);
    rule.dst_port = parse_port(fields[5], line_no);
    std::string action = upper(fields[6]);
    if (action == "ACCEPT")
      rule.action = RuleAction::Accept;
    else if (action == "DENY")
      rule.action = RuleAction::Deny;
    else
      parse_fail(line_no, "unknown action '" + fields[6] + "'");
    table.rules.push_back(std::move(rule));
  }
  if (!saw_header) fail(Errc::parse_error, "empty rule table");
  return table;
}

std::vector<Packet> parse_packets(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<Packet> packets;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split_csv(t);
    if (fields.size() != 5) parse_fail(line_no, "expected proto,src,dst,sport,dport");
    Packet p;
    p.proto = upper(fields[0]);
    Ipv4Prefix src = parse_cidr(fields[1], line_no);
    Ipv4Prefix dst = parse_cidr(fields[2], line_no);
    if (src.len != 32 || dst.len != 32) parse_fail(line_no, "packet addresses must be host addresses");
    p.src_ip = src.addr;
    p.dst_ip = dst.addr;
    long sport = parse_number(fields[3], line_no, "source port");
    long dport = parse_number(fields[4], line_no, "destination port");
    if (sport > 65535 || dport > 65535)
      fail(Errc::bad_port, "line " + std::to_string(line_no) + ": port outside 0..65535");
    p.src_port = static_cast<std::uint16_t>(sport);
    p.dst_port = static_cast<std::uint16_t>(dport);
    packets.push_back(std::move(p));
  }
  return packets;
}

std::string serialize_rules(const RuleTable& table) {
  std::ostringstream out;
  out << "N,Proto,SrcIP,DstIP,SrcPort,DstPort,Action\n";
  for (const Rule& r : table.rules) {
    out << r.label << ',' << r.proto << ','
        << (r.src_ip.len == 0 ? "ANY" : r.src_ip.to_string()) << ','
        << (r.dst_ip.len == 0 ? "ANY" : r.dst_ip.to_string()) << ',' << r.src_port.to_string()
        << ',' << r.dst_port.to_string() << ','
        << (r.action == RuleAction::Accept ? "ACCEPT" : "DENY") << '\n';
  }
  return out.str();
}

bool rule_matches(const Rule& rule, const Packet& packet) {
  if (rule.proto != "ANY" && rule.proto != packet.proto) return false;
  return rule.src_ip.matches(packet.src_ip) && rule.dst_ip.matches(packet.dst_ip) &&
         rule.src_port.matches(packet.src_port) && rule.dst_port.matches(packet.dst_port);
}

bool rules_overlap(const Rule& a, const Rule& b, bool strict) {
  bool proto_meet = a.proto == "ANY" || b.proto == "ANY" || a.proto == b.proto;
  bool regions_meet = proto_meet && a.src_ip.intersects(b.src_ip) &&
                      a.dst_ip.intersects(b.dst_ip) && a.src_port.intersects(b.src_port) &&
                      a.dst_port.intersects(b.dst_port);
  if (strict) return regions_meet;
  return regions_meet && a.action != b.action;
}

DependencyDag extract_dependencies(const RuleTable& table, bool strict) {
  const int n = static_cast<int>(table.rules.size());
  std::vector<NodeId> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = i;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rules_overlap(table.rules[i], table.rules[j], strict))
        edges.emplace_back(j, i);  // higher-priority rule i must stay in front
  return DependencyDag::build(std::move(nodes), std::move(edges));
}

std::optional<ClassifyResult> classify(const Packet& packet, const ListState& list,
                                       const RuleTable& table) {
  if (list.size() != static_cast<int>(table.rules.size()))
    fail(Errc::node_set_mismatch, "list must order exactly the table's rules");
  for (int pos = 1; pos <= list.size(); ++pos) {
    int idx = list.at(pos);
    if (idx < 0 || idx >= static_cast<int>(table.rules.size()))
      fail(Errc::unknown_node, "list references rule index " + std::to_string(idx));
    const Rule& rule = table.rules[idx];
    if (rule_matches(rule, packet)) return ClassifyResult{idx, rule.label, rule.action, pos};
  }
  return std::nullopt;
}

}  // namespace deplist
