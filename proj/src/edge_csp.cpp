#include "netmix/edge_csp.hpp"

#include <algorithm>

namespace netmix {

EdgeDomain enumerate_domain(const NetworkInstance& instance, const Demands& demands,
                            EdgeId edge, int cap) {
  if (cap < 1) throw Error(ErrorCode::bad_config, "domain cap must be >= 1");
  const Edge& ed = instance.edges()[static_cast<size_t>(edge)];
  const int P = instance.flow_count();
  if (P > 16)
    throw Error(ErrorCode::domain_explosion,
                "edge domains are exponential in the flow count; " + std::to_string(P) +
                    " flows exceed the practical envelope");
  const std::uint64_t full = (P == 0) ? 0 : (P == 64 ? ~0ULL : ((1ULL << P) - 1));

  // admissible x values
  std::vector<std::uint64_t> xs;
  std::uint64_t purity_mask = full;
  if (int ti = demands.index_of(ed.to); ti >= 0) purity_mask = demands.effective(ti);
  if (auto p = instance.source_flow(ed.from)) {
    std::uint64_t unit = 1ULL << (*p - 1);
    if ((unit & ~purity_mask) == 0) xs.push_back(unit);
  } else {
    for (std::uint64_t x = 0; x <= full; ++x) {
      if ((x & ~purity_mask) == 0) xs.push_back(x);
      if (x == full) break;
    }
  }

  EdgeDomain domain;
  domain.edge = edge;
  const int T = demands.terminal_count();
  for (std::uint64_t x : xs) {
    // per-terminal options: carry nothing, or exactly one demanded flow with f <= x
    std::vector<std::vector<std::uint64_t>> options(static_cast<size_t>(T));
    for (int ti = 0; ti < T; ++ti) {
      options[(size_t)ti].push_back(0);
      for (FlowId p : mask_flows(demands.effective(ti))) {
        std::uint64_t bit = 1ULL << (p - 1);
        if (bit & x) options[(size_t)ti].push_back(bit);
      }
    }
    std::vector<size_t> idx(static_cast<size_t>(T), 0);
    while (true) {
      EdgeDomain::Entry entry;
      entry.x = MixVector{x};
      for (int ti = 0; ti < T; ++ti) entry.f.push_back(options[(size_t)ti][idx[(size_t)ti]]);
      domain.entries.push_back(std::move(entry));
      if (static_cast<int>(domain.entries.size()) > cap)
        throw Error(ErrorCode::domain_explosion,
                    "edge domain exceeds " + std::to_string(cap) + " entries");
      int k = T - 1;
      for (; k >= 0; --k) {
        if (++idx[(size_t)k] < options[(size_t)k].size()) break;
        idx[(size_t)k] = 0;
      }
      if (k < 0) break;
    }
  }
  return domain;
}

bool phi_f(const NetworkInstance& instance, const Demands& demands, NodeId node,
           const std::vector<std::vector<std::uint64_t>>& f) {
  for (int ti = 0; ti < demands.terminal_count(); ++ti) {
    const Demands::Entry& entry = demands.entries[(size_t)ti];
    for (FlowId p : mask_flows(entry.expanded)) {
      const std::uint64_t bit = 1ULL << (p - 1);
      int balance = 0;
      for (EdgeId e : instance.out_edges(node))
        if (f[static_cast<size_t>(e)][(size_t)ti] & bit) ++balance;
      for (EdgeId e : instance.in_edges(node))
        if (f[static_cast<size_t>(e)][(size_t)ti] & bit) --balance;
      int sigma = (node == instance.source(p) ? 1 : 0) - (node == entry.terminal ? 1 : 0);
      if (balance != sigma) return false;
    }
  }
  return true;
}

bool phi_x(const NetworkInstance& instance, EdgeId edge, MixVector x_edge,
           const std::vector<MixVector>& x) {
  const Edge& ed = instance.edges()[static_cast<size_t>(edge)];
  MixVector acc{};
  for (EdgeId in : instance.in_edges(ed.from)) {
    MixVector xi = x[static_cast<size_t>(in)];
    if (xi.subset_of(x_edge)) acc |= xi;
  }
  return acc == x_edge;
}

std::vector<ClauseRef> clause_partition(const NetworkInstance& instance, EdgeId edge) {
  const Edge& ed = instance.edges()[static_cast<size_t>(edge)];
  std::vector<ClauseRef> refs;
  refs.push_back(ClauseRef{ClauseRef::Kind::flow_conservation, ed.from, -1});
  refs.push_back(ClauseRef{ClauseRef::Kind::flow_conservation, ed.to, -1});
  if (!instance.is_source(ed.from))
    refs.push_back(ClauseRef{ClauseRef::Kind::mixing_consistency, 0, edge});
  for (EdgeId out : instance.out_edges(ed.to))
    refs.push_back(ClauseRef{ClauseRef::Kind::mixing_consistency, 0, out});
  return refs;
}

EdgeCsp::EdgeCsp(const NetworkInstance& instance, Demands demands,
                 std::vector<EdgeDomain> domains)
    : instance_(instance), demands_(std::move(demands)), domains_(std::move(domains)) {
  // clause ids: conservation per node (node order), then mixing consistency
  // per non-source-tail edge (edge order)
  std::map<NodeId, int> node_clause;
  for (NodeId n : instance_.nodes()) {
    node_clause[n] = static_cast<int>(clauses_.size());
    clauses_.push_back(ClauseRef{ClauseRef::Kind::flow_conservation, n, -1});
  }
  std::map<EdgeId, int> edge_clause;
  for (EdgeId e = 0; e < instance_.edge_count(); ++e) {
    if (instance_.is_source(instance_.edges()[(size_t)e].from)) continue;
    edge_clause[e] = static_cast<int>(clauses_.size());
    clauses_.push_back(ClauseRef{ClauseRef::Kind::mixing_consistency, 0, e});
  }
  for (EdgeId e = 0; e < instance_.edge_count(); ++e) {
    std::vector<int> part;
    for (const ClauseRef& ref : clause_partition(instance_, e)) {
      if (ref.kind == ClauseRef::Kind::flow_conservation)
        part.push_back(node_clause.at(ref.node));
      else
        part.push_back(edge_clause.at(ref.edge));
    }
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    participation_.push_back(std::move(part));
  }
  f_.assign(domains_.size(), {});
  x_.assign(domains_.size(), MixVector{});
  values_.assign(clauses_.size(), 0);
}

void EdgeCsp::begin_assignment(std::span<const int> assignment) {
  for (size_t e = 0; e < domains_.size(); ++e) {
    const EdgeDomain::Entry& entry = domains_[e].entries[(size_t)assignment[e]];
    f_[e] = entry.f;
    x_[e] = entry.x;
  }
  for (size_t k = 0; k < clauses_.size(); ++k) {
    const ClauseRef& ref = clauses_[k];
    if (ref.kind == ClauseRef::Kind::flow_conservation)
      values_[k] = phi_f(instance_, demands_, ref.node, f_) ? 1 : 0;
    else
      values_[k] = phi_x(instance_, ref.edge, x_[(size_t)ref.edge], x_) ? 1 : 0;
  }
}

bool EdgeCsp::clause(int k, std::span<const int> /*assignment*/) const {
  return values_[(size_t)k] == 1;
}

std::span<const int> EdgeCsp::participating(int variable) const {
  return participation_[(size_t)variable];
}

MixingSolution EdgeCsp::assemble(std::span<const int> assignment) const {
  MixingSolution s = MixingSolution::empty(instance_, demands_.terminal_count());
  for (size_t e = 0; e < domains_.size(); ++e) {
    const EdgeDomain::Entry& entry = domains_[e].entries[(size_t)assignment[e]];
    s.f[e] = entry.f;
    s.x[e] = entry.x;
    int zmax = 0;
    for (std::uint64_t ft : entry.f) zmax = std::max(zmax, std::popcount(ft));
    s.z[e] = static_cast<std::uint8_t>(zmax);
  }
  for (int pid = 0; pid < instance_.pair_count(); ++pid) {
    const NetworkInstance::EdgePair& pair = instance_.edge_pairs()[(size_t)pid];
    s.beta[(size_t)pid] =
        s.x[(size_t)pair.in].subset_of(s.x[(size_t)pair.out]) ? 1 : 0;
  }
  return s;
}

CflSolve solve_edge_cfl(const NetworkInstance& instance, const Demands& demands,
                        const CflParams& params, bool record_choices, int domain_cap) {
  CflSolve result;
  result.outcome.demands = demands;

  std::vector<EdgeDomain> domains;
  for (EdgeId e = 0; e < instance.edge_count(); ++e) {
    EdgeDomain d = enumerate_domain(instance, demands, e, domain_cap);
    if (d.entries.empty()) {
      // a local constraint set with no admissible value: proven infeasible
      result.outcome.status = "infeasible";
      return result;
    }
    domains.push_back(std::move(d));
  }

  EdgeCsp csp(instance, demands, std::move(domains));
  std::vector<int> sizes;
  for (int m = 0; m < csp.variable_count(); ++m) sizes.push_back(csp.domain_size(m));
  CflState state = cfl_init(sizes, params);
  result.engine = cfl_run(state, csp, params, record_choices);

  if (result.engine.assignment) {
    MixingSolution solution = csp.assemble(*result.engine.assignment);
    result.outcome.feasible = true;
    result.outcome.status = "feasible";
    result.outcome.cost = solution_cost(instance, solution.z);
    result.outcome.solution = std::move(solution);
  } else {
    result.outcome.status = "budget_exhausted";
  }
  return result;
}

RestartOutcome edge_restart_loop(const NetworkInstance& instance, const Demands& demands,
                                 const CflParams& params, int restarts, int domain_cap) {
  RestartOutcome out = restart_loop(restarts, params, [&](std::uint64_t seed) {
    CflParams p = params;
    p.seed = seed;
    return solve_edge_cfl(instance, demands, p, false, domain_cap);
  });
  if (!out.best.feasible) out.best.demands = demands;
  return out;
}

}  // namespace netmix
