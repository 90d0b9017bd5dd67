#include "netmix/cfl.hpp"

#include <algorithm>

#include "netmix/kernels.hpp"

namespace netmix {

CflState cfl_init(const std::vector<int>& domain_sizes, const CflParams& params) {
  CflState state;
  state.dist.reserve(domain_sizes.size());
  state.streams.reserve(domain_sizes.size());
  for (size_t m = 0; m < domain_sizes.size(); ++m) {
    int n = domain_sizes[m];
    if (n < 1) throw Error(ErrorCode::empty_domain, "variable " + std::to_string(m) +
                                                        " has an empty domain");
    state.dist.emplace_back(static_cast<size_t>(n), 1.0 / n);
    state.streams.emplace_back(derive_seed(params.seed, seed_stream::cfl_variable, m));
  }
  state.assignment.assign(domain_sizes.size(), -1);
  return state;
}

void update_rule(std::span<double> dist, bool satisfied, int chosen, double a, double b) {
  if (satisfied) {
    std::fill(dist.begin(), dist.end(), 0.0);
    dist[static_cast<size_t>(chosen)] = 1.0;
    return;
  }
  kernels::unsat_update(dist, static_cast<size_t>(chosen), a, b);
}

namespace {

int draw(std::vector<double>& dist, Rng& rng) {
  // First index whose running (left-to-right) mass exceeds u. The scan order
  // is part of the determinism contract.
  double u = rng.uniform01();
  double acc = 0;
  for (size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(dist.size()) - 1;  // guards rounding shortfall
}

}  // namespace

std::vector<bool> cfl_step(CflState& state, ClauseSystem& system, const CflParams& params) {
  const int M = system.variable_count();
  for (int m = 0; m < M; ++m)
    state.assignment[static_cast<size_t>(m)] =
        draw(state.dist[static_cast<size_t>(m)], state.streams[static_cast<size_t>(m)]);

  system.begin_assignment(state.assignment);
  std::vector<char> clause_value(static_cast<size_t>(system.clause_count()), 2);
  auto eval = [&](int k) {
    char& v = clause_value[static_cast<size_t>(k)];
    if (v == 2) v = system.clause(k, state.assignment) ? 1 : 0;
    return v == 1;
  };

  std::vector<bool> satisfied(static_cast<size_t>(M), true);
  for (int m = 0; m < M; ++m) {
    for (int k : system.participating(m)) {
      if (!eval(k)) {
        satisfied[static_cast<size_t>(m)] = false;
        break;
      }
    }
  }

  for (int m = 0; m < M; ++m)
    update_rule(state.dist[static_cast<size_t>(m)], satisfied[static_cast<size_t>(m)],
                state.assignment[static_cast<size_t>(m)], params.a, params.b);

  ++state.iteration;
  return satisfied;
}

CflResult cfl_run(CflState& state, ClauseSystem& system, const CflParams& params,
                  bool record_choices) {
  CflResult result;
  const int M = system.variable_count();
  const int K = system.clause_count();
  if (M == 0) {
    // vacuously satisfied
    result.assignment = std::vector<int>{};
    return result;
  }
  for (int it = 1; it <= params.max_iterations; ++it) {
    std::vector<bool> flags = cfl_step(state, system, params);
    result.iterations = it;
    if (record_choices) result.choices.push_back(state.assignment);

    int count = 0;
    for (bool f : flags) count += f ? 1 : 0;
    bool all = true;
    for (int k = 0; k < K && all; ++k) all = system.clause(k, state.assignment);
    result.trace.push_back(CflTraceRow{it, count, all});
    if (all) {
      result.assignment = state.assignment;
      return result;
    }
  }
  return result;
}

}  // namespace netmix
