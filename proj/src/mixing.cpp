#include "netmix/mixing.hpp"

#include <sstream>

namespace netmix {

namespace {

std::string edge_str(const NetworkInstance& inst, EdgeId e) {
  const Edge& ed = inst.edges()[static_cast<size_t>(e)];
  std::ostringstream os;
  os << "(" << ed.from << "," << ed.to << ")";
  return os.str();
}

}  // namespace

MixingSolution MixingSolution::empty(const NetworkInstance& instance, int terminal_count) {
  MixingSolution s;
  s.z.assign(instance.edges().size(), 0);
  s.f.assign(instance.edges().size(),
             std::vector<std::uint64_t>(static_cast<size_t>(terminal_count), 0));
  s.x.assign(instance.edges().size(), MixVector{});
  s.beta.assign(static_cast<size_t>(instance.pair_count()), 0);
  return s;
}

std::vector<MixVector> propagate_mixing(const NetworkInstance& instance,
                                        const std::vector<std::uint8_t>& beta) {
  std::vector<MixVector> x(instance.edges().size());
  for (EdgeId e : edges_in_topological_order(instance)) {
    const Edge& ed = instance.edges()[static_cast<size_t>(e)];
    if (auto p = instance.source_flow(ed.from)) {
      x[static_cast<size_t>(e)] = MixVector::unit(*p);
      continue;
    }
    MixVector acc{};
    for (int pid : instance.pairs_into(e)) {
      if (beta[static_cast<size_t>(pid)])
        acc |= x[static_cast<size_t>(instance.edge_pairs()[static_cast<size_t>(pid)].in)];
    }
    x[static_cast<size_t>(e)] = acc;
  }
  return x;
}

bool check_mixing_feasible(const NetworkInstance& instance, const Demands& demands,
                           const std::vector<MixVector>& x) {
  for (const Demands::Entry& entry : demands.entries) {
    for (EdgeId e : instance.in_edges(entry.terminal)) {
      if (x[static_cast<size_t>(e)].bits & ~entry.expanded) return false;
    }
  }
  return true;
}

ValidationReport verify_solution(const NetworkInstance& instance, const Demands& demands,
                                 const MixingSolution& solution) {
  ValidationReport report;
  auto add = [&](const std::string& kind, const std::string& message) {
    report.push_back(Violation{kind, message});
  };

  const size_t E = instance.edges().size();
  const size_t T = demands.entries.size();
  if (solution.z.size() != E || solution.f.size() != E || solution.x.size() != E ||
      solution.beta.size() != static_cast<size_t>(instance.pair_count())) {
    add("shape", "solution field sizes do not match the instance");
    return report;
  }

  for (size_t e = 0; e < E; ++e) {
    if (solution.f[e].size() != T) {
      add("shape", "per-terminal f width does not match the demands");
      return report;
    }
    if (solution.z[e] > 1) add("binary", "z not binary on edge " + edge_str(instance, (EdgeId)e));
    for (size_t ti = 0; ti < T; ++ti) {
      std::uint64_t ft = solution.f[e][ti];
      if (ft & ~demands.entries[ti].expanded)
        add("f-outside-demand", "f carries an undemanded flow to terminal " +
                                    std::to_string(demands.entries[ti].terminal) + " on edge " +
                                    edge_str(instance, (EdgeId)e));
      // one unit of (coded) flow per edge and terminal
      if (std::popcount(ft) > solution.z[e])
        add("f-exceeds-z", "sum of f over terminal " +
                               std::to_string(demands.entries[ti].terminal) +
                               "'s flows exceeds z on edge " + edge_str(instance, (EdgeId)e));
      if (ft & ~solution.x[e].bits)
        add("f-exceeds-x",
            "f = 1 with x = 0 on edge " + edge_str(instance, (EdgeId)e) + " for terminal " +
                std::to_string(demands.entries[ti].terminal));
    }
  }

  // flow conservation with sigma = +1 at the source, -1 at the terminal
  for (size_t ti = 0; ti < T; ++ti) {
    const Demands::Entry& entry = demands.entries[ti];
    for (FlowId p : mask_flows(entry.expanded)) {
      const std::uint64_t bit = 1ULL << (p - 1);
      for (NodeId n : instance.nodes()) {
        int balance = 0;
        for (EdgeId e : instance.out_edges(n))
          if (solution.f[static_cast<size_t>(e)][ti] & bit) ++balance;
        for (EdgeId e : instance.in_edges(n))
          if (solution.f[static_cast<size_t>(e)][ti] & bit) --balance;
        int sigma = 0;
        if (n == instance.source(p)) sigma = 1;
        if (n == entry.terminal) sigma -= 1;
        if (balance != sigma)
          add("conservation", "flow " + std::to_string(p) + " to terminal " +
                                  std::to_string(entry.terminal) +
                                  " violates conservation at node " + std::to_string(n));
      }
    }
  }

  // x consistent with beta: source edges carry unit vectors, the rest the
  // beta-selected OR, i.e. exactly the propagated values.
  std::vector<MixVector> prop = propagate_mixing(instance, solution.beta);
  for (size_t e = 0; e < E; ++e) {
    const Edge& ed = instance.edges()[e];
    if (auto p = instance.source_flow(ed.from)) {
      if (!(solution.x[e] == MixVector::unit(*p)))
        add("x-source", "source edge " + edge_str(instance, (EdgeId)e) +
                            " does not carry the unit vector of flow " + std::to_string(*p));
    } else if (!(solution.x[e] == prop[e])) {
      add("x-propagation", "x on edge " + edge_str(instance, (EdgeId)e) +
                               " is not the beta-selected OR of its incoming vectors");
    }
  }

  for (size_t ti = 0; ti < T; ++ti) {
    const Demands::Entry& entry = demands.entries[ti];
    for (EdgeId e : instance.in_edges(entry.terminal)) {
      if (solution.x[static_cast<size_t>(e)].bits & ~entry.expanded)
        add("terminal-purity", "extraneous flow reaches terminal " +
                                   std::to_string(entry.terminal) + " on edge " +
                                   edge_str(instance, e));
    }
  }

  return report;
}

Cost solution_cost(const NetworkInstance& instance, const std::vector<std::uint8_t>& z) {
  Cost total = 0;
  for (size_t e = 0; e < z.size(); ++e)
    if (z[e]) total += instance.edges()[e].cost;
  return total;
}

}  // namespace netmix
