#include "netmix/paths.hpp"

#include <algorithm>

namespace netmix {

bool PathTable::complete() const {
  for (const auto& [key, list] : paths)
    if (list.empty()) return false;
  return true;
}

std::vector<Path> enumerate_paths(const NetworkInstance& instance, NodeId source,
                                  NodeId terminal, int cap) {
  if (!instance.has_node(source) || !instance.has_node(terminal))
    throw Error(ErrorCode::unknown_node, "path endpoints must be existing nodes");
  if (cap < 1) throw Error(ErrorCode::bad_config, "path cap must be >= 1");

  std::vector<Path> result;
  Path current;
  // Out-edges sorted by head id give lexicographic order by node sequence.
  // On a DAG every walk is simple, so no visited set is needed.
  auto sorted_out = [&](NodeId n) {
    std::vector<EdgeId> out = instance.out_edges(n);
    std::sort(out.begin(), out.end(), [&](EdgeId a, EdgeId b) {
      return instance.edges()[static_cast<size_t>(a)].to <
             instance.edges()[static_cast<size_t>(b)].to;
    });
    return out;
  };

  struct Frame {
    std::vector<EdgeId> out;
    size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back(Frame{sorted_out(source), 0});
  if (source == terminal) return result;  // no zero-length flow paths
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next >= top.out.size()) {
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    EdgeId e = top.out[top.next++];
    NodeId head = instance.edges()[static_cast<size_t>(e)].to;
    current.push_back(e);
    if (head == terminal) {
      result.push_back(current);
      if (static_cast<int>(result.size()) > cap)
        throw Error(ErrorCode::path_explosion, "more than " + std::to_string(cap) +
                                                   " paths from " + std::to_string(source) +
                                                   " to " + std::to_string(terminal));
      current.pop_back();
    } else {
      stack.push_back(Frame{sorted_out(head), 0});
    }
  }
  return result;
}

PathTable enumerate_path_table(const NetworkInstance& instance, const Demands& demands,
                               int cap) {
  PathTable table;
  for (int ti = 0; ti < demands.terminal_count(); ++ti) {
    const Demands::Entry& entry = demands.entries[static_cast<size_t>(ti)];
    for (FlowId p : mask_flows(entry.expanded))
      table.paths[{p, ti}] = enumerate_paths(instance, instance.source(p), entry.terminal, cap);
  }
  return table;
}

std::vector<std::vector<int>> disjoint_combinations(
    const std::vector<std::vector<Path>>& flow_paths) {
  std::vector<std::vector<int>> result;
  std::vector<int> chosen;
  // edge-usage bitset over edge ids
  std::vector<std::uint64_t> used;
  auto block = [&](EdgeId e) -> std::pair<size_t, std::uint64_t> {
    return {static_cast<size_t>(e) / 64, 1ULL << (static_cast<size_t>(e) % 64)};
  };
  auto mark = [&](const Path& path, bool on) {
    for (EdgeId e : path) {
      auto [b, m] = block(e);
      if (b >= used.size()) used.resize(b + 1, 0);
      if (on)
        used[b] |= m;
      else
        used[b] &= ~m;
    }
  };
  auto clashes = [&](const Path& path) {
    for (EdgeId e : path) {
      auto [b, m] = block(e);
      if (b < used.size() && (used[b] & m)) return true;
    }
    return false;
  };

  auto rec = [&](auto&& self, size_t flow) -> void {
    if (flow == flow_paths.size()) {
      result.push_back(chosen);
      return;
    }
    for (int i = 0; i < static_cast<int>(flow_paths[flow].size()); ++i) {
      const Path& path = flow_paths[flow][static_cast<size_t>(i)];
      if (clashes(path)) continue;
      mark(path, true);
      chosen.push_back(i);
      self(self, flow + 1);
      chosen.pop_back();
      mark(path, false);
    }
  };
  rec(rec, 0);
  return result;
}

DerivedSelection DerivedSelection::build(const NetworkInstance& instance,
                                         const Demands& demands, const PathTable& table,
                                         const PathSelection& selection) {
  DerivedSelection d;
  const size_t E = instance.edges().size();
  const size_t T = demands.entries.size();
  d.f.assign(E, std::vector<std::uint64_t>(T, 0));
  d.disjoint.assign(T, true);

  for (const auto& [key, idx] : selection.index) {
    auto [p, ti] = key;
    const Path& path = table.at(p, ti)[static_cast<size_t>(idx)];
    const std::uint64_t bit = 1ULL << (p - 1);
    for (EdgeId e : path) {
      if (d.f[static_cast<size_t>(e)][static_cast<size_t>(ti)] != 0)
        d.disjoint[static_cast<size_t>(ti)] = false;
      d.f[static_cast<size_t>(e)][static_cast<size_t>(ti)] |= bit;
    }
  }

  // beta = 1 exactly on consecutive edge pairs of some selected path
  d.beta.assign(static_cast<size_t>(instance.pair_count()), 0);
  for (const auto& [key, idx] : selection.index) {
    auto [p, ti] = key;
    const Path& path = table.at(p, ti)[static_cast<size_t>(idx)];
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      int pid = instance.pair_index(path[k], path[k + 1]);
      d.beta[static_cast<size_t>(pid)] = 1;
    }
  }

  d.x = propagate_mixing(instance, d.beta);
  d.purity = check_mixing_feasible(instance, demands, d.x);
  return d;
}

MixingSolution derive_from_selection(const NetworkInstance& instance, const Demands& demands,
                                     const PathTable& table, const PathSelection& selection) {
  DerivedSelection d = DerivedSelection::build(instance, demands, table, selection);
  for (size_t ti = 0; ti < d.disjoint.size(); ++ti) {
    if (!d.disjoint[ti])
      throw Error(ErrorCode::disjointness_violated,
                  "selected paths to terminal " +
                      std::to_string(demands.entries[ti].terminal) + " share an edge");
  }
  MixingSolution s;
  s.f = std::move(d.f);
  s.beta = std::move(d.beta);
  s.x = std::move(d.x);
  s.z.assign(instance.edges().size(), 0);
  for (size_t e = 0; e < s.z.size(); ++e) {
    int zmax = 0;
    for (std::uint64_t ft : s.f[e]) zmax = std::max(zmax, std::popcount(ft));
    s.z[e] = static_cast<std::uint8_t>(zmax);
  }
  return s;
}

bool path_clause(const NetworkInstance& instance, const Demands& demands,
                 const PathTable& table, const PathSelection& selection, FlowId /*p*/,
                 int ti) {
  DerivedSelection d = DerivedSelection::build(instance, demands, table, selection);
  return d.disjoint[static_cast<size_t>(ti)] && d.purity;
}

}  // namespace netmix
