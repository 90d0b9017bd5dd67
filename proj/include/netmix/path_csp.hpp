#pragma once

#include <memory>

#include "netmix/restarts.hpp"
#include "netmix/paths.hpp"

namespace netmix {

// The path-based CSP: one variable per demanded (flow, terminal) pair with
// domain 1..N_p^t, one clause per pair (edge-disjointness at that terminal
// plus global terminal purity, on the globally derived solution). All
// variables are coupled, so every variable participates in every clause.
class PathCsp : public ClauseSystem {
 public:
  PathCsp(const NetworkInstance& instance, Demands demands, PathTable table);

  int variable_count() const override { return static_cast<int>(keys_.size()); }
  int domain_size(int variable) const override;
  int clause_count() const override { return static_cast<int>(keys_.size()); }
  void begin_assignment(std::span<const int> assignment) override;
  bool clause(int k, std::span<const int> assignment) const override;
  std::span<const int> participating(int variable) const override;

  const std::vector<std::pair<FlowId, int>>& keys() const { return keys_; }
  const PathTable& table() const { return table_; }
  const Demands& demands() const { return demands_; }
  PathSelection selection_for(std::span<const int> assignment) const;

 private:
  const NetworkInstance& instance_;
  Demands demands_;
  PathTable table_;
  std::vector<std::pair<FlowId, int>> keys_;  // terminal-major, flows ascending
  std::vector<int> all_clauses_;
  std::vector<bool> disjoint_;
  bool purity_ = false;
};

// Throws Error(no_path) when some demanded pair has no flow path (the mixing
// problem is then infeasible).
std::unique_ptr<PathCsp> build_path_csp(const NetworkInstance& instance,
                                        const Demands& demands, int path_cap = 10000);

// One path-based CFL run. A missing result is budget exhaustion, not an
// infeasibility proof, except when some demanded pair has no path at all
// (then status is "infeasible").
CflSolve solve_path_cfl(const NetworkInstance& instance, const Demands& demands,
                        const CflParams& params, bool record_choices = false,
                        int path_cap = 10000);

RestartOutcome path_restart_loop(const NetworkInstance& instance, const Demands& demands,
                                 const CflParams& params, int restarts,
                                 int path_cap = 10000);

}  // namespace netmix
