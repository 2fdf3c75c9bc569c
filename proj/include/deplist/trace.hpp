#pragma once

#include <string>
#include <vector>

#include "deplist/algorithms.hpp"
#include "deplist/dag.hpp"
#include "deplist/list_state.hpp"

namespace deplist {

/// A parsed trace file: node declarations, the initial DAG and order, and the
/// request sequence. Node ids are positions in `names`.
///
/// Line-oriented grammar ('#' starts a comment):
///   nodes <name>+          every node the trace ever mentions
///   edge <u> <v>           v must precede u; endpoints must be initial nodes
///   init <name>+           the initially present nodes, head first
///   access <name>
///   insert <name> before=<csv-names> after=<csv-names>
///                          before: nodes that must come before the new node;
///                          after: nodes the new node must come before
///   delete <name>
struct Trace {
  std::vector<std::string> names;
  DependencyDag dag;  // over the initial nodes
  ListState initial;
  std::vector<Request> requests;

  const std::string& name_of(NodeId id) const;
  NodeId id_of(const std::string& name) const;  // throws UnknownNode
};

/// Parses and validates: syntax, DAG acyclicity, the initial order being a
/// linear extension, and a full replay presence check of the requests.
Trace parse_trace(const std::string& text);

/// Canonical form; parse(serialize(t)) == t and serialize(parse(s)) == s for
/// canonical inputs.
std::string serialize_trace(const Trace& trace);

Trace read_trace_file(const std::string& path);

}  // namespace deplist
