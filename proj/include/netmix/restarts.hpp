#pragma once

#include <functional>

#include "netmix/centralized.hpp"
#include "netmix/cfl.hpp"

namespace netmix {

// One CFL solver run: solution outcome plus the engine trace. For the path
// solver, `variables` names the (flow, terminal-index) behind each choice
// column; the edge solver's columns are edge ids.
struct CflSolve {
  SolveOutcome outcome;
  CflResult engine;
  std::vector<std::pair<FlowId, int>> variables;
};

struct RestartRecord {
  int restart = 0;
  bool feasible = false;
  Cost cost = 0;
  Cost running_min = 0;  // minimum cost among feasible restarts so far
  bool has_min = false;
  int iterations = 0;
};

struct RestartOutcome {
  SolveOutcome best;
  std::vector<RestartRecord> records;
};

// Generic restart meta-loop: independent runs with seeds derived from the
// master seed by restart index, merged by running-minimum cost. Restarts run
// concurrently; the merge is identical to the sequential order.
RestartOutcome restart_loop(int restarts, const CflParams& params,
                            const std::function<CflSolve(std::uint64_t seed)>& run);

}  // namespace netmix
