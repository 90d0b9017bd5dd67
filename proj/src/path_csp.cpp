#include "netmix/path_csp.hpp"

#include <numeric>

namespace netmix {

PathCsp::PathCsp(const NetworkInstance& instance, Demands demands, PathTable table)
    : instance_(instance), demands_(std::move(demands)), table_(std::move(table)) {
  for (int ti = 0; ti < demands_.terminal_count(); ++ti)
    for (FlowId p : mask_flows(demands_.effective(ti))) keys_.emplace_back(p, ti);
  all_clauses_.resize(keys_.size());
  std::iota(all_clauses_.begin(), all_clauses_.end(), 0);
  disjoint_.assign(demands_.entries.size(), false);
}

int PathCsp::domain_size(int variable) const {
  return static_cast<int>(
      table_.at(keys_[(size_t)variable].first, keys_[(size_t)variable].second).size());
}

PathSelection PathCsp::selection_for(std::span<const int> assignment) const {
  PathSelection sel;
  for (size_t m = 0; m < keys_.size(); ++m) sel.index[keys_[m]] = assignment[m];
  return sel;
}

void PathCsp::begin_assignment(std::span<const int> assignment) {
  DerivedSelection d =
      DerivedSelection::build(instance_, demands_, table_, selection_for(assignment));
  disjoint_ = std::move(d.disjoint);
  purity_ = d.purity;
}

bool PathCsp::clause(int k, std::span<const int> /*assignment*/) const {
  return disjoint_[static_cast<size_t>(keys_[(size_t)k].second)] && purity_;
}

std::span<const int> PathCsp::participating(int /*variable*/) const { return all_clauses_; }

std::unique_ptr<PathCsp> build_path_csp(const NetworkInstance& instance,
                                        const Demands& demands, int path_cap) {
  PathTable table = enumerate_path_table(instance, demands, path_cap);
  for (const auto& [key, paths] : table.paths) {
    if (paths.empty())
      throw Error(ErrorCode::no_path,
                  "no flow path from source of flow " + std::to_string(key.first) +
                      " to terminal " +
                      std::to_string(demands.entries[(size_t)key.second].terminal));
  }
  return std::make_unique<PathCsp>(instance, demands, std::move(table));
}

CflSolve solve_path_cfl(const NetworkInstance& instance, const Demands& demands,
                        const CflParams& params, bool record_choices, int path_cap) {
  CflSolve result;
  result.outcome.demands = demands;
  std::unique_ptr<PathCsp> csp;
  try {
    csp = build_path_csp(instance, demands, path_cap);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::no_path) {
      result.outcome.status = "infeasible";
      return result;
    }
    throw;
  }

  std::vector<int> domains;
  for (int m = 0; m < csp->variable_count(); ++m) domains.push_back(csp->domain_size(m));
  CflState state = cfl_init(domains, params);
  result.engine = cfl_run(state, *csp, params, record_choices);
  result.variables = csp->keys();

  if (result.engine.assignment) {
    PathSelection sel = csp->selection_for(*result.engine.assignment);
    MixingSolution solution = derive_from_selection(instance, demands, csp->table(), sel);
    result.outcome.feasible = true;
    result.outcome.status = "feasible";
    result.outcome.cost = solution_cost(instance, solution.z);
    result.outcome.solution = std::move(solution);
    result.outcome.selection = std::move(sel);
  } else {
    result.outcome.status = "budget_exhausted";
  }
  return result;
}

RestartOutcome path_restart_loop(const NetworkInstance& instance, const Demands& demands,
                                 const CflParams& params, int restarts, int path_cap) {
  RestartOutcome out = restart_loop(restarts, params, [&](std::uint64_t seed) {
    CflParams p = params;
    p.seed = seed;
    return solve_path_cfl(instance, demands, p, false, path_cap);
  });
  if (!out.best.feasible) out.best.demands = demands;
  return out;
}

}  // namespace netmix
