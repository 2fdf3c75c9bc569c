#pragma once

#include <stdexcept>
#include <string>

namespace deplist {

/// Machine-checkable failure categories; the message carries the detail.
enum class Errc {
  cycle_detected,
  unknown_node,
  self_edge,
  duplicate_node,
  node_absent,
  node_present,
  infeasible_move,
  infeasible_insert,
  node_set_mismatch,
  unordered_chain,
  missing_bit,
  non_empty_dag,
  too_large,
  not_feasible,
  parse_error,
  validation_error,
  bad_spec,
  bad_cidr,
  bad_port,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

const char* errc_name(Errc code);

}  // namespace deplist
