#pragma once

#include <optional>
#include <string>

#include "netmix/centralized.hpp"
#include "netmix/restarts.hpp"
#include "netmix/rlnc.hpp"

namespace netmix {

// Parses the JSON instance document and validates the result. Throws
// Error(syntax_error) on malformed input and Error(validation_failed) when
// the parsed instance violates the model assumptions.
NetworkInstance parse_instance(const std::string& text);

// Stable-field-order JSON document; parse(serialize(x)) == x.
std::string serialize_instance(const NetworkInstance& instance);

// Builtin benchmark topologies: "fig3", "butterfly", "sprint-core".
// Throws Error(unknown_topology).
NetworkInstance builtin(const std::string& name);

struct DemandGenConfig {
  int terminal_count = 2;             // 2 or 3
  std::vector<NodeId> terminal_pool;  // distinct candidate terminals
  double q = 1.5;                     // expected demands per terminal, in [1,2]
  int realizations = 1;
  std::uint64_t seed = 0;
};

// Random two-source demand realizations: per realization, `terminal_count`
// distinct terminals drawn from the pool, each demanding one source uniformly
// and the other with probability q-1. Deterministic given the seed.
std::vector<Demands> random_demands(const NetworkInstance& instance,
                                    const DemandGenConfig& config);

// Solution document: cost, used edges, per-(flow, terminal) paths, mixing
// vectors and beta triples; or a feasible=false marker carrying the status.
std::string write_solution(const NetworkInstance& instance, const SolveOutcome& outcome);

// Code export: q, per-edge coding vectors and nonzero local coefficients;
// enough for an external decoder to replay the round trip bit-exactly.
std::string write_code(const NetworkInstance& instance, const LinearCode& code);

// CSV writers for the solver traces.
std::string engine_trace_csv(const CflResult& engine);
std::string restart_csv(const RestartOutcome& restarts);
std::string path_choice_csv(const CflSolve& solve, const Demands& demands);
std::string edge_event_csv(const NetworkInstance& instance, const CflSolve& solve);

}  // namespace netmix
