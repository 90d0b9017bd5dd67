#pragma once

#include <map>
#include <utility>
#include <vector>

#include "netmix/mixing.hpp"
#include "netmix/network.hpp"

namespace netmix {

using Path = std::vector<EdgeId>;  // consecutive edges of a simple directed path

// Enumerated flow paths per demanded (flow, terminal-index) pair.
struct PathTable {
  // key: (flow p, terminal index into the Demands entries)
  std::map<std::pair<FlowId, int>, std::vector<Path>> paths;

  const std::vector<Path>& at(FlowId p, int ti) const { return paths.at({p, ti}); }
  bool complete() const;  // every listed pair has at least one path
};

// One selected path index per demanded pair (0-based into the PathTable).
struct PathSelection {
  std::map<std::pair<FlowId, int>, int> index;
};

// All simple directed source->terminal paths, deterministic lexicographic
// order by node sequence. Throws Error(path_explosion) past `cap`.
std::vector<Path> enumerate_paths(const NetworkInstance& instance, NodeId source,
                                  NodeId terminal, int cap = 10000);

// Path tables for every demanded pair of `demands` (effective sets).
PathTable enumerate_path_table(const NetworkInstance& instance, const Demands& demands,
                               int cap = 10000);

// Index tuples (one per demanded flow of terminal ti, flows ascending) whose
// paths are pairwise edge-disjoint. Node sharing is allowed.
std::vector<std::vector<int>> disjoint_combinations(
    const std::vector<std::vector<Path>>& flow_paths);

// Derives the full decision tuple from a selection: f marks selected path
// edges, z is the per-edge max over terminals, beta = 1 exactly on
// consecutive edge pairs of some selected path, x by propagation.
// Throws Error(disjointness_violated) when two of one terminal's paths share
// an edge.
MixingSolution derive_from_selection(const NetworkInstance& instance, const Demands& demands,
                                     const PathTable& table, const PathSelection& selection);

// The per-pair clause of the path CSP: 1 iff terminal ti's selected paths are
// pairwise edge-disjoint and the derived x is extraneous-free at every
// terminal. Evaluated on the globally derived solution.
bool path_clause(const NetworkInstance& instance, const Demands& demands,
                 const PathTable& table, const PathSelection& selection, FlowId p, int ti);

// Shared evaluation state for all clauses of one selection; building it once
// per iteration keeps clause evaluation cheap.
struct DerivedSelection {
  std::vector<std::vector<std::uint64_t>> f;  // per edge, per terminal
  std::vector<std::uint8_t> beta;
  std::vector<MixVector> x;
  std::vector<bool> disjoint;  // per terminal
  bool purity = false;         // extraneous-free at every terminal

  static DerivedSelection build(const NetworkInstance& instance, const Demands& demands,
                                const PathTable& table, const PathSelection& selection);
};

}  // namespace netmix
