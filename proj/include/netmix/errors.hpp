#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace netmix {

enum class ErrorCode {
  syntax_error,
  validation_failed,
  unknown_topology,
  unknown_node,
  cyclic_graph,
  bad_config,
  path_explosion,
  domain_explosion,
  disjointness_violated,
  empty_domain,
  no_path,
  too_large,
  field_too_small,
  field_not_prime,
  no_decodable_code,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// One structural or constraint violation. Violations are data, not exceptions:
// validate() and verify_solution() return lists of these.
struct Violation {
  std::string kind;     // short machine-checkable tag, e.g. "source-in-edge"
  std::string message;  // human-readable, names the offending node/edge/flow
};

using ValidationReport = std::vector<Violation>;

inline bool has_violation(const ValidationReport& report, const std::string& kind) {
  for (const auto& v : report)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace netmix
