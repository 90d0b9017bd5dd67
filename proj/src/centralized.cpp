#include "netmix/centralized.hpp"

#include <algorithm>
#include <queue>

namespace netmix {

namespace {

struct EdgeSet {
  std::vector<std::uint64_t> blocks;

  void add(EdgeId e) {
    size_t b = static_cast<size_t>(e) / 64;
    if (b >= blocks.size()) blocks.resize(b + 1, 0);
    blocks[b] |= 1ULL << (static_cast<size_t>(e) % 64);
  }
  void merge(const EdgeSet& other) {
    if (other.blocks.size() > blocks.size()) blocks.resize(other.blocks.size(), 0);
    for (size_t i = 0; i < other.blocks.size(); ++i) blocks[i] |= other.blocks[i];
  }
  bool contains(EdgeId e) const {
    size_t b = static_cast<size_t>(e) / 64;
    return b < blocks.size() && (blocks[b] >> (static_cast<size_t>(e) % 64)) & 1;
  }
};

Cost edge_set_cost(const NetworkInstance& instance, const EdgeSet& set) {
  Cost total = 0;
  for (EdgeId e = 0; e < instance.edge_count(); ++e)
    if (set.contains(e)) total += instance.edges()[static_cast<size_t>(e)].cost;
  return total;
}

struct TerminalCombos {
  // per combination: per-flow path indices (flows ascending) and union of edges
  std::vector<std::vector<int>> tuples;
  std::vector<EdgeSet> edges;
  std::vector<FlowId> flows;  // ascending demanded flows of this terminal
};

std::vector<TerminalCombos> build_combos(const Demands& demands, const PathTable& table) {
  std::vector<TerminalCombos> out(demands.entries.size());
  for (int ti = 0; ti < demands.terminal_count(); ++ti) {
    TerminalCombos& tc = out[static_cast<size_t>(ti)];
    tc.flows = mask_flows(demands.effective(ti));
    std::vector<std::vector<Path>> flow_paths;
    for (FlowId p : tc.flows) flow_paths.push_back(table.at(p, ti));
    tc.tuples = disjoint_combinations(flow_paths);
    for (const std::vector<int>& tuple : tc.tuples) {
      EdgeSet set;
      for (size_t fi = 0; fi < tuple.size(); ++fi)
        for (EdgeId e : flow_paths[fi][static_cast<size_t>(tuple[fi])]) set.add(e);
      tc.edges.push_back(std::move(set));
    }
  }
  return out;
}

PathSelection selection_from_combos(const std::vector<TerminalCombos>& combos,
                                    const std::vector<int>& picks) {
  PathSelection sel;
  for (size_t ti = 0; ti < picks.size(); ++ti) {
    const TerminalCombos& tc = combos[ti];
    const std::vector<int>& tuple = tc.tuples[static_cast<size_t>(picks[ti])];
    for (size_t fi = 0; fi < tc.flows.size(); ++fi)
      sel.index[{tc.flows[fi], static_cast<int>(ti)}] = tuple[fi];
  }
  return sel;
}

bool routing_ok(const std::vector<MixVector>& x) {
  for (MixVector v : x)
    if (v.count() > 1) return false;
  return true;
}

// Feasibility gate for a complete selection under the solver flags. Fills the
// solution on success.
bool gate(const NetworkInstance& instance, const Demands& demands, const PathTable& table,
          const PathSelection& sel, const SolveFlags& flags, MixingSolution* out) {
  DerivedSelection d = DerivedSelection::build(instance, demands, table, sel);
  for (bool ok : d.disjoint)
    if (!ok) return false;

  MixingSolution s;
  s.f = std::move(d.f);
  if (flags.beta_all_one) {
    s.beta.assign(static_cast<size_t>(instance.pair_count()), 1);
    s.x = propagate_mixing(instance, s.beta);
    for (size_t e = 0; e < s.x.size(); ++e)
      for (size_t ti = 0; ti < s.f[e].size(); ++ti)
        if (s.f[e][ti] & ~s.x[e].bits) return false;
  } else {
    s.beta = std::move(d.beta);
    s.x = std::move(d.x);
  }
  if (!check_mixing_feasible(instance, demands, s.x)) return false;
  if (flags.routing && !routing_ok(s.x)) return false;

  s.z.assign(instance.edges().size(), 0);
  for (size_t e = 0; e < s.z.size(); ++e) {
    int zmax = 0;
    for (std::uint64_t ft : s.f[e]) zmax = std::max(zmax, std::popcount(ft));
    s.z[e] = static_cast<std::uint8_t>(zmax);
  }
  *out = std::move(s);
  return true;
}

SolveOutcome solve_with_table(const NetworkInstance& instance, const Demands& demands,
                              const PathTable& table, const SolveFlags& flags) {
  SolveOutcome outcome;
  outcome.demands = demands;
  if (!table.complete()) return outcome;  // some demanded pair has no path

  std::vector<TerminalCombos> combos = build_combos(demands, table);
  for (const TerminalCombos& tc : combos)
    if (tc.tuples.empty()) return outcome;  // no edge-disjoint routing to this terminal

  // Uniform-cost search over terminal prefixes: the key is the cost of the
  // union of the chosen edge sets, which is nondecreasing along children, so
  // complete states pop in nondecreasing true cost.
  struct State {
    Cost cost;
    std::vector<int> picks;
    EdgeSet used;
  };
  auto worse = [](const State& a, const State& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.picks > b.picks;
  };
  std::priority_queue<State, std::vector<State>, decltype(worse)> queue(worse);
  queue.push(State{0, {}, {}});
  const size_t T = combos.size();
  while (!queue.empty()) {
    State state = queue.top();
    queue.pop();
    if (state.picks.size() == T) {
      PathSelection sel = selection_from_combos(combos, state.picks);
      MixingSolution solution;
      if (gate(instance, demands, table, sel, flags, &solution)) {
        outcome.feasible = true;
        outcome.status = "feasible";
        outcome.cost = solution_cost(instance, solution.z);
        outcome.solution = std::move(solution);
        outcome.selection = std::move(sel);
        return outcome;
      }
      continue;
    }
    const TerminalCombos& tc = combos[state.picks.size()];
    for (int ci = 0; ci < static_cast<int>(tc.tuples.size()); ++ci) {
      State child;
      child.picks = state.picks;
      child.picks.push_back(ci);
      child.used = state.used;
      child.used.merge(tc.edges[static_cast<size_t>(ci)]);
      child.cost = edge_set_cost(instance, child.used);
      queue.push(std::move(child));
    }
  }
  return outcome;
}

// Cache of enumerated paths keyed by (flow, terminal node); expansions add
// demanded pairs but never change the underlying source->terminal paths.
struct PathCache {
  const NetworkInstance& instance;
  int cap;
  std::map<std::pair<FlowId, NodeId>, std::vector<Path>> cache;

  const std::vector<Path>& get(FlowId p, NodeId terminal) {
    auto key = std::make_pair(p, terminal);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, enumerate_paths(instance, instance.source(p), terminal, cap))
               .first;
    return it->second;
  }

  PathTable table_for(const Demands& demands) {
    PathTable t;
    for (int ti = 0; ti < demands.terminal_count(); ++ti)
      for (FlowId p : mask_flows(demands.effective(ti)))
        t.paths[{p, ti}] = get(p, demands.entries[static_cast<size_t>(ti)].terminal);
    return t;
  }
};

}  // namespace

SolveOutcome solve_centralized(const NetworkInstance& instance, const Demands& demands,
                               const SolveFlags& flags) {
  PathTable table = enumerate_path_table(instance, demands, flags.path_cap);
  return solve_with_table(instance, demands, table, flags);
}

std::vector<Demands> expansions_of(const NetworkInstance& instance, const Demands& demands) {
  const int P = instance.flow_count();
  const std::uint64_t full = (P == 64) ? ~0ULL : ((1ULL << P) - 1);

  std::vector<std::vector<std::uint64_t>> tuples;
  std::vector<std::uint64_t> current;
  auto rec = [&](auto&& self, size_t ti) -> void {
    if (ti == demands.entries.size()) {
      tuples.push_back(current);
      return;
    }
    const std::uint64_t base = demands.entries[ti].expanded;
    std::uint64_t addable = full & ~base;
    // iterate all subsets of addable, ascending
    std::uint64_t sub = 0;
    while (true) {
      current.push_back(base | sub);
      self(self, ti + 1);
      current.pop_back();
      if (sub == addable) break;
      sub = (sub - addable) & addable;
    }
  };
  rec(rec, 0);
  auto added = [&](const std::vector<std::uint64_t>& tuple) {
    int total = 0;
    for (size_t ti = 0; ti < tuple.size(); ++ti)
      total += std::popcount(tuple[ti] & ~demands.entries[ti].expanded);
    return total;
  };
  std::stable_sort(tuples.begin(), tuples.end(),
                   [&](const auto& a, const auto& b) { return added(a) < added(b); });

  std::vector<Demands> out;
  out.reserve(tuples.size());
  for (const std::vector<std::uint64_t>& tuple : tuples) {
    Demands expanded = demands;
    for (size_t ti = 0; ti < tuple.size(); ++ti) expanded.entries[ti].expanded = tuple[ti];
    out.push_back(std::move(expanded));
  }
  return out;
}

SolveOutcome solve_with_expansion(const NetworkInstance& instance, const Demands& demands,
                                  const SolveFlags& flags) {
  PathCache cache{instance, flags.path_cap, {}};
  SolveOutcome best;
  best.demands = demands;
  for (const Demands& expanded : expansions_of(instance, demands)) {
    PathTable table = cache.table_for(expanded);
    SolveOutcome outcome = solve_with_table(instance, expanded, table, flags);
    if (outcome.feasible && (!best.feasible || outcome.cost < best.cost)) best = outcome;
  }
  return best;
}

namespace {

bool conservation_holds(const NetworkInstance& instance, std::uint64_t mask, FlowId p,
                        NodeId terminal) {
  for (NodeId n : instance.nodes()) {
    int balance = 0;
    for (EdgeId e : instance.out_edges(n))
      if ((mask >> e) & 1) ++balance;
    for (EdgeId e : instance.in_edges(n))
      if ((mask >> e) & 1) --balance;
    int sigma = (n == instance.source(p) ? 1 : 0) - (n == terminal ? 1 : 0);
    if (balance != sigma) return false;
  }
  return true;
}

SolveOutcome oracle_assignments(const NetworkInstance& instance, const Demands& demands,
                                const OracleOptions& options) {
  const int E = instance.edge_count();
  const int pair_count = instance.pair_count();
  if (E > 16 || pair_count > 16)
    throw Error(ErrorCode::too_large, "assignment-mode oracle handles at most 16 edges and "
                                      "16 adjacent pairs");

  // Candidate f edge-masks per demanded pair, by direct conservation check.
  std::vector<std::pair<FlowId, int>> keys;
  std::vector<std::vector<std::uint64_t>> candidates;
  for (int ti = 0; ti < demands.terminal_count(); ++ti) {
    for (FlowId p : mask_flows(demands.effective(ti))) {
      keys.emplace_back(p, ti);
      std::vector<std::uint64_t> ok;
      for (std::uint64_t mask = 0; mask < (1ULL << E); ++mask)
        if (conservation_holds(instance, mask, p, demands.entries[(size_t)ti].terminal))
          ok.push_back(mask);
      candidates.push_back(std::move(ok));
    }
  }

  SolveOutcome best;
  best.demands = demands;
  long long states = 0;
  std::vector<std::uint64_t> pick(keys.size(), 0);
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == keys.size()) {
      // per-terminal edge-disjointness: masks of one terminal must not overlap
      for (int ti = 0; ti < demands.terminal_count(); ++ti) {
        std::uint64_t seen = 0;
        for (size_t i = 0; i < keys.size(); ++i) {
          if (keys[i].second != ti) continue;
          if (seen & pick[i]) return;
          seen |= pick[i];
        }
      }
      std::vector<std::uint8_t> z(static_cast<size_t>(E), 0);
      std::vector<std::vector<std::uint64_t>> f(
          static_cast<size_t>(E),
          std::vector<std::uint64_t>(demands.entries.size(), 0));
      for (size_t i = 0; i < keys.size(); ++i)
        for (int e = 0; e < E; ++e)
          if ((pick[i] >> e) & 1)
            f[static_cast<size_t>(e)][static_cast<size_t>(keys[i].second)] |=
                1ULL << (keys[i].first - 1);
      for (int e = 0; e < E; ++e) {
        int zmax = 0;
        for (std::uint64_t ft : f[static_cast<size_t>(e)])
          zmax = std::max(zmax, std::popcount(ft));
        if (zmax > 1) return;
        z[static_cast<size_t>(e)] = static_cast<std::uint8_t>(zmax);
      }
      Cost cost = solution_cost(instance, z);
      if (best.feasible && cost >= best.cost) return;

      // search for a mixing witness beta
      const std::uint64_t beta_limit = 1ULL << pair_count;
      for (std::uint64_t bmask = 0; bmask < beta_limit; ++bmask) {
        std::uint64_t m = options.flags.beta_all_one ? beta_limit - 1 : bmask;
        std::vector<std::uint8_t> beta(static_cast<size_t>(pair_count), 0);
        for (int i = 0; i < pair_count; ++i) beta[(size_t)i] = (m >> i) & 1;
        std::vector<MixVector> x = propagate_mixing(instance, beta);
        bool ok = check_mixing_feasible(instance, demands, x);
        if (ok && options.flags.routing) ok = routing_ok(x);
        if (ok) {
          for (int e = 0; e < E && ok; ++e)
            for (size_t ti = 0; ti < demands.entries.size() && ok; ++ti)
              if (f[static_cast<size_t>(e)][ti] & ~x[static_cast<size_t>(e)].bits) ok = false;
        }
        if (ok) {
          best.feasible = true;
          best.status = "feasible";
          best.cost = cost;
          best.solution.z = z;
          best.solution.f = f;
          best.solution.x = std::move(x);
          best.solution.beta = std::move(beta);
          break;
        }
        if (options.flags.beta_all_one) break;
      }
      return;
    }
    for (std::uint64_t mask : candidates[k]) {
      if (++states > options.max_states)
        throw Error(ErrorCode::too_large, "oracle state budget exceeded");
      pick[k] = mask;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace

SolveOutcome brute_force_oracle(const NetworkInstance& instance, const Demands& demands,
                                const OracleOptions& options) {
  if (instance.edge_count() > options.max_edges)
    throw Error(ErrorCode::too_large,
                "oracle bound: instance has more than " + std::to_string(options.max_edges) +
                    " edges");
  if (options.mode == OracleOptions::Mode::assignments)
    return oracle_assignments(instance, demands, options);

  PathTable table = enumerate_path_table(instance, demands, options.flags.path_cap);
  SolveOutcome best;
  best.demands = demands;

  std::vector<std::pair<FlowId, int>> keys;
  long long product = 1;
  for (const auto& [key, list] : table.paths) {
    keys.push_back(key);
    if (list.empty()) return best;
    product *= static_cast<long long>(list.size());
    if (product > options.max_states)
      throw Error(ErrorCode::too_large, "oracle state budget exceeded");
  }

  // Odometer over all selection tuples, lexicographic ascending.
  std::vector<int> idx(keys.size(), 0);
  while (true) {
    PathSelection sel;
    for (size_t i = 0; i < keys.size(); ++i) sel.index[keys[i]] = idx[i];

    DerivedSelection d = DerivedSelection::build(instance, demands, table, sel);
    bool disjoint = true;
    for (bool ok : d.disjoint) disjoint = disjoint && ok;
    if (disjoint) {
      MixingSolution s = derive_from_selection(instance, demands, table, sel);
      if (options.flags.beta_all_one) {
        s.beta.assign(static_cast<size_t>(instance.pair_count()), 1);
        s.x = propagate_mixing(instance, s.beta);
      }
      bool ok = verify_solution(instance, demands, s).empty();
      if (ok && options.flags.routing) ok = routing_ok(s.x);
      if (ok) {
        Cost cost = solution_cost(instance, s.z);
        if (!best.feasible || cost < best.cost) {
          best.feasible = true;
          best.status = "feasible";
          best.cost = cost;
          best.solution = std::move(s);
          best.selection = std::move(sel);
        }
      }
    }

    size_t k = 0;
    for (; k < keys.size(); ++k) {
      if (++idx[k] < static_cast<int>(table.paths.at(keys[k]).size())) break;
      idx[k] = 0;
    }
    if (k == keys.size()) break;
  }
  return best;
}

}  // namespace netmix
