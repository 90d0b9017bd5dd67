#include "netmix/restarts.hpp"

#include "netmix/parallel.hpp"

namespace netmix {

RestartOutcome restart_loop(int restarts, const CflParams& params,
                            const std::function<CflSolve(std::uint64_t seed)>& run) {
  if (restarts < 1) throw Error(ErrorCode::bad_config, "restarts must be >= 1");
  std::vector<CflSolve> solves(static_cast<size_t>(restarts));
  parallel_for(restarts, [&](int r) {
    solves[static_cast<size_t>(r)] =
        run(derive_seed(params.seed, seed_stream::restart, static_cast<std::uint64_t>(r)));
  });

  RestartOutcome out;
  bool has_min = false;
  Cost running = 0;
  for (int r = 0; r < restarts; ++r) {
    CflSolve& s = solves[static_cast<size_t>(r)];
    RestartRecord rec;
    rec.restart = r;
    rec.feasible = s.outcome.feasible;
    rec.cost = s.outcome.feasible ? s.outcome.cost : 0;
    rec.iterations = s.engine.iterations;
    if (s.outcome.feasible && (!has_min || s.outcome.cost < running)) {
      running = s.outcome.cost;
      has_min = true;
      out.best = std::move(s.outcome);
    }
    rec.running_min = running;
    rec.has_min = has_min;
    out.records.push_back(rec);
  }
  if (!has_min) out.best.status = "budget_exhausted";
  return out;
}

}  // namespace netmix
