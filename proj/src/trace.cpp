#include "deplist/trace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace deplist {

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  fail(Errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

[[noreturn]] void validation_fail(int line_no, const std::string& what) {
  fail(Errc::validation_error, "line " + std::to_string(line_no) + ": " + what);
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
      return false;
  return true;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> names;
  std::string part;
  std::istringstream in(csv);
  while (std::getline(in, part, ','))
    if (!part.empty()) names.push_back(part);
  return names;
}

std::string join_names(const Trace& trace, std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += trace.name_of(ids[i]);
  }
  return out;
}

}  // namespace

const std::string& Trace::name_of(NodeId id) const {
  if (id < 0 || id >= static_cast<int>(names.size()))
    fail(Errc::unknown_node, "node id " + std::to_string(id) + " out of range");
  return names[id];
}

NodeId Trace::id_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<NodeId>(i);
  fail(Errc::unknown_node, "unknown node '" + name + "'");
}

Trace parse_trace(const std::string& text) {
  Trace trace;
  std::map<std::string, NodeId> ids;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> init;
  bool saw_nodes = false;
  bool saw_init = false;

  auto lookup = [&](const std::string& name, int line_no) -> NodeId {
    auto it = ids.find(name);
    if (it == ids.end()) validation_fail(line_no, "unknown node '" + name + "'");
    return it->second;
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = tokens_of(raw);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];

    if (keyword == "nodes") {
      if (saw_nodes) parse_fail(line_no, "duplicate nodes line");
      if (tokens.size() < 2) parse_fail(line_no, "nodes line needs at least one name");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!valid_name(tokens[i])) parse_fail(line_no, "bad node name '" + tokens[i] + "'");
        if (ids.count(tokens[i])) validation_fail(line_no, "duplicate node '" + tokens[i] + "'");
        ids[tokens[i]] = static_cast<NodeId>(trace.names.size());
        trace.names.push_back(tokens[i]);
      }
      saw_nodes = true;
    } else if (keyword == "edge") {
      if (!saw_nodes) parse_fail(line_no, "edge before nodes");
      if (tokens.size() != 3) parse_fail(line_no, "edge needs exactly two names");
      edges.emplace_back(lookup(tokens[1], line_no), lookup(tokens[2], line_no));
    } else if (keyword == "init") {
      if (!saw_nodes) parse_fail(line_no, "init before nodes");
      if (saw_init) parse_fail(line_no, "duplicate init line");
      for (std::size_t i = 1; i < tokens.size(); ++i) init.push_back(lookup(tokens[i], line_no));
      saw_init = true;
    } else if (keyword == "access" || keyword == "delete") {
      if (!saw_init) parse_fail(line_no, keyword + " before init");
      if (tokens.size() != 2) parse_fail(line_no, keyword + " needs exactly one name");
      NodeId node = lookup(tokens[1], line_no);
      trace.requests.push_back(keyword == "access" ? Request::access(node)
                                                   : Request::remove(node));
    } else if (keyword == "insert") {
      if (!saw_init) parse_fail(line_no, "insert before init");
      if (tokens.size() != 4 || tokens[2].rfind("before=", 0) != 0 ||
          tokens[3].rfind("after=", 0) != 0)
        parse_fail(line_no, "expected: insert <name> before=<names> after=<names>");
      NodeId node = lookup(tokens[1], line_no);
      std::vector<NodeId> preds, succs;
      for (const auto& name : split_names(tokens[2].substr(7)))
        preds.push_back(lookup(name, line_no));
      for (const auto& name : split_names(tokens[3].substr(6)))
        succs.push_back(lookup(name, line_no));
      trace.requests.push_back(Request::insert(node, std::move(preds), std::move(succs)));
    } else {
      parse_fail(line_no, "unknown keyword '" + keyword + "'");
    }
  }

  if (!saw_nodes) fail(Errc::parse_error, "missing nodes line");
  if (!saw_init) fail(Errc::parse_error, "missing init line");

  std::vector<std::pair<NodeId, NodeId>> init_edges;
  std::set<NodeId> init_set(init.begin(), init.end());
  if (init_set.size() != init.size()) fail(Errc::validation_error, "init repeats a node");
  for (const auto& [u, v] : edges) {
    if (!init_set.count(u) || !init_set.count(v))
      fail(Errc::validation_error,
           "edge endpoints must be initial nodes; constraints of inserted nodes belong on their "
           "insert line");
    init_edges.emplace_back(u, v);
  }
  trace.dag = DependencyDag::build(std::vector<NodeId>(init.begin(), init.end()),
                                   std::move(init_edges));
  trace.initial = ListState(init);
  if (!trace.dag.is_linear_extension(trace.initial))
    fail(Errc::validation_error, "initial order violates the declared edges");

  // Replay presence check.
  std::set<NodeId> present = init_set;
  for (std::size_t i = 0; i < trace.requests.size(); ++i) {
    const Request& r = trace.requests[i];
    const std::string where = "request " + std::to_string(i + 1);
    switch (r.kind) {
      case RequestKind::Access:
        if (!present.count(r.node))
          fail(Errc::validation_error, where + ": access to absent node " + trace.name_of(r.node));
        break;
      case RequestKind::Insert: {
        if (present.count(r.node))
          fail(Errc::validation_error, where + ": insert of present node " + trace.name_of(r.node));
        std::set<NodeId> seen;
        for (NodeId p : r.insert_preds) {
          if (!present.count(p))
            fail(Errc::validation_error, where + ": constraint references absent node " +
                                             trace.name_of(p));
          seen.insert(p);
        }
        for (NodeId s : r.insert_succs) {
          if (!present.count(s))
            fail(Errc::validation_error, where + ": constraint references absent node " +
                                             trace.name_of(s));
          if (seen.count(s))
            fail(Errc::validation_error, where + ": node " + trace.name_of(s) +
                                             " listed as both before and after");
        }
        present.insert(r.node);
        break;
      }
      case RequestKind::Delete:
        if (!present.count(r.node))
          fail(Errc::validation_error, where + ": delete of absent node " + trace.name_of(r.node));
        present.erase(r.node);
        break;
    }
  }
  return trace;
}

std::string serialize_trace(const Trace& trace) {
  std::ostringstream out;
  out << "nodes";
  for (const auto& name : trace.names) out << ' ' << name;
  out << '\n';
  for (const auto& [u, v] : trace.dag.edges())
    out << "edge " << trace.name_of(u) << ' ' << trace.name_of(v) << '\n';
  out << "init";
  for (NodeId id : trace.initial.order()) out << ' ' << trace.name_of(id);
  out << '\n';
  for (const Request& r : trace.requests) {
    switch (r.kind) {
      case RequestKind::Access:
        out << "access " << trace.name_of(r.node) << '\n';
        break;
      case RequestKind::Insert:
        out << "insert " << trace.name_of(r.node) << " before=" << join_names(trace, r.insert_preds)
            << " after=" << join_names(trace, r.insert_succs) << '\n';
        break;
      case RequestKind::Delete:
        out << "delete " << trace.name_of(r.node) << '\n';
        break;
    }
  }
  return out.str();
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open trace file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace(buffer.str());
}

}  // namespace deplist
