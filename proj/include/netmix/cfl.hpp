#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netmix/errors.hpp"
#include "netmix/rng.hpp"

namespace netmix {

struct CflParams {
  double a = 1.0;
  double b = 0.01;
  int max_iterations = 100000;
  std::uint64_t seed = 0;
};

// A finite-domain CSP as seen by the engine: K clauses over M variables plus
// the participation map (the clauses a variable's unilateral change can
// flip, or any superset).
class ClauseSystem {
 public:
  virtual ~ClauseSystem() = default;
  virtual int variable_count() const = 0;
  virtual int domain_size(int variable) const = 0;
  virtual int clause_count() const = 0;
  // Called once per iteration with the freshly drawn joint assignment before
  // any clause() calls; lets implementations derive shared state.
  virtual void begin_assignment(std::span<const int> assignment) { (void)assignment; }
  virtual bool clause(int k, std::span<const int> assignment) const = 0;
  virtual std::span<const int> participating(int variable) const = 0;
};

// Per-variable probability distributions over the finite domains, evolved by
// the satisfied/unsatisfied update rule. Draws come from per-variable RNG
// streams derived from the seed by variable index, so adding observers never
// perturbs the draws.
struct CflState {
  std::vector<std::vector<double>> dist;
  std::vector<int> assignment;  // -1 before the first draw
  std::vector<Rng> streams;
  int iteration = 0;
};

struct CflTraceRow {
  int iteration = 0;
  int satisfied_variables = 0;
  bool all_satisfied = false;
};

struct CflResult {
  std::optional<std::vector<int>> assignment;  // first globally satisfying draw
  int iterations = 0;                          // iterations actually run
  std::vector<CflTraceRow> trace;
  // chosen value per variable per iteration; filled only when record_choices
  std::vector<std::vector<int>> choices;
};

// Uniform distributions, no assignment drawn yet. Throws Error(empty_domain).
CflState cfl_init(const std::vector<int>& domain_sizes, const CflParams& params);

// One distribution update. satisfied: degenerate at chosen; otherwise the
// interpolation toward uniform-away-from-chosen with parameters (a, b).
void update_rule(std::span<double> dist, bool satisfied, int chosen, double a, double b);

// One synchronous iteration: redraw all variables simultaneously, evaluate
// each variable's participating clauses under the new joint assignment, then
// update every distribution. Returns per-variable satisfied flags.
std::vector<bool> cfl_step(CflState& state, ClauseSystem& system, const CflParams& params);

// Runs until some drawn assignment satisfies every clause, or max_iterations.
CflResult cfl_run(CflState& state, ClauseSystem& system, const CflParams& params,
                  bool record_choices = false);

}  // namespace netmix
