#pragma once

#include <optional>

#include "netmix/paths.hpp"

namespace netmix {

// Extra feasibility gates shared by the exact solvers.
//   routing:      at most one flow per edge in x (no mixing anywhere)
//   beta_all_one: beta fixed to 1 on every adjacent pair before propagation,
//                 so x is the reachability closure (restricted baseline)
struct SolveFlags {
  bool routing = false;
  bool beta_all_one = false;
  int path_cap = 10000;
};

struct SolveOutcome {
  bool feasible = false;
  // Distinguishes a proven "infeasible" from a CFL "budget_exhausted".
  std::string status = "infeasible";
  Cost cost = 0;
  MixingSolution solution;
  PathSelection selection;
  Demands demands;  // effective demands the solution satisfies (with expansion)
};

// Exact minimum-cost solve: lazy best-first scan over per-terminal
// edge-disjoint path combinations in nondecreasing union cost, gated by the
// terminal-purity check; the first passing combination is optimal. Ties break
// lexicographically on the path-index tuple.
SolveOutcome solve_centralized(const NetworkInstance& instance, const Demands& demands,
                               const SolveFlags& flags = {});

// Optimizes over all demand-set expansions P_t <= expanded <= P, ascending by
// total added demand; returns the minimizing expansion's outcome.
SolveOutcome solve_with_expansion(const NetworkInstance& instance, const Demands& demands,
                                  const SolveFlags& flags = {});

// Every expansion tuple of the given demands, ascending by total added
// demand (the base demands come first).
std::vector<Demands> expansions_of(const NetworkInstance& instance, const Demands& demands);

struct OracleOptions {
  enum class Mode { path_selections, assignments };
  Mode mode = Mode::path_selections;
  int max_edges = 20;
  long long max_states = 4'000'000;
  SolveFlags flags;
};

// Independent correctness oracle. Mode path_selections exhausts every path
// selection tuple and evaluates the full constraint set on each via
// verify_solution; mode assignments enumerates binary f per demanded pair
// (checking conservation directly) and searches beta assignments for a
// mixing witness, bypassing the path machinery. Throws Error(too_large) when
// the instance exceeds the configured bounds.
SolveOutcome brute_force_oracle(const NetworkInstance& instance, const Demands& demands,
                                const OracleOptions& options = {});

}  // namespace netmix
