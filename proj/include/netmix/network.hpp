#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netmix/errors.hpp"

namespace netmix {

using NodeId = int;
using FlowId = int;  // dense ids 1..P
using EdgeId = int;  // index into NetworkInstance::edges()
using Cost = double;

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  Cost cost = 0.0;
};

struct TerminalSpec {
  NodeId node = 0;
  std::vector<FlowId> demands;  // sorted ascending
};

// Immutable directed network with flows, sources and terminals. Adjacency and
// the adjacent-edge-pair table are indexed once at construction; instances are
// safe to share across concurrent solver runs.
class NetworkInstance {
 public:
  // An adjacent edge pair ((k,i),(i,j)): the index space of the local mixing
  // coefficients beta.
  struct EdgePair {
    EdgeId in = -1;
    EdgeId out = -1;
  };

  NetworkInstance() = default;
  NetworkInstance(std::vector<NodeId> nodes, std::vector<Edge> edges,
                  std::vector<NodeId> sources, std::vector<TerminalSpec> terminals);

  int flow_count() const { return static_cast<int>(sources_.size()); }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  // Source node of flow p (1-based).
  NodeId source(FlowId p) const { return sources_.at(static_cast<size_t>(p - 1)); }
  const std::vector<NodeId>& sources() const { return sources_; }
  const std::vector<TerminalSpec>& terminals() const { return terminals_; }

  bool has_node(NodeId n) const { return node_pos_.count(n) != 0; }
  bool is_source(NodeId n) const { return source_flow(n).has_value(); }
  std::optional<FlowId> source_flow(NodeId n) const;

  const std::vector<EdgeId>& in_edges(NodeId n) const;
  const std::vector<EdgeId>& out_edges(NodeId n) const;
  std::optional<EdgeId> find_edge(NodeId from, NodeId to) const;

  const std::vector<EdgePair>& edge_pairs() const { return pairs_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  // -1 when the two edges are not adjacent head-to-tail.
  int pair_index(EdgeId in, EdgeId out) const;
  // Pair ids whose out member is the given edge.
  const std::vector<int>& pairs_into(EdgeId e) const;

 private:
  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  std::vector<NodeId> sources_;
  std::vector<TerminalSpec> terminals_;

  std::map<NodeId, int> node_pos_;
  std::map<NodeId, std::vector<EdgeId>> in_;
  std::map<NodeId, std::vector<EdgeId>> out_;
  std::map<std::pair<NodeId, NodeId>, EdgeId> by_endpoints_;
  std::vector<EdgePair> pairs_;
  std::map<std::pair<EdgeId, EdgeId>, int> pair_idx_;
  std::vector<std::vector<int>> pairs_into_;
  std::vector<EdgeId> no_edges_;
};

// Per-terminal demand sets, with an optional expansion overlay. Flow sets are
// bitmasks (bit p-1 for flow p); flow_count() <= 64 keeps them in one word.
struct Demands {
  struct Entry {
    NodeId terminal = 0;
    std::uint64_t base = 0;      // P_t
    std::uint64_t expanded = 0;  // effective set: P_t <= expanded <= P
  };
  std::vector<Entry> entries;

  static Demands from_instance(const NetworkInstance& instance);
  std::uint64_t effective(int terminal_index) const {
    return entries[static_cast<size_t>(terminal_index)].expanded;
  }
  bool has_expansion() const;
  int terminal_count() const { return static_cast<int>(entries.size()); }
  // -1 when the node is not a terminal of these demands.
  int index_of(NodeId node) const;
};

std::uint64_t flow_mask(const std::vector<FlowId>& flows);
std::vector<FlowId> mask_flows(std::uint64_t mask);

// Structural validation of the model assumptions. Violations are data; an
// empty report means the instance is valid.
ValidationReport validate(const NetworkInstance& instance);

// Deterministic topological order (Kahn, ties by ascending node id).
// Throws Error(cyclic_graph) when the graph has a cycle.
std::vector<NodeId> topological_order(const NetworkInstance& instance);

// (I_i, O_i) as sorted node sets. Throws Error(unknown_node).
std::pair<std::vector<NodeId>, std::vector<NodeId>> neighbors(const NetworkInstance& instance,
                                                              NodeId node);

// Edge ids ordered so that every edge's tail precedes its head; processing in
// this order sees all in-edges of a tail before any of its out-edges.
std::vector<EdgeId> edges_in_topological_order(const NetworkInstance& instance);

}  // namespace netmix
