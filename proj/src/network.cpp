#include "netmix/network.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace netmix {

NetworkInstance::NetworkInstance(std::vector<NodeId> nodes, std::vector<Edge> edges,
                                 std::vector<NodeId> sources,
                                 std::vector<TerminalSpec> terminals)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      sources_(std::move(sources)),
      terminals_(std::move(terminals)) {
  for (size_t i = 0; i < nodes_.size(); ++i) node_pos_.emplace(nodes_[i], static_cast<int>(i));
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    in_[ed.to].push_back(e);
    out_[ed.from].push_back(e);
    by_endpoints_.emplace(std::make_pair(ed.from, ed.to), e);
  }
  // Pair table in (out-edge, in-edge) order so pairs_into_ lists are contiguous.
  pairs_into_.resize(edges_.size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    auto it = in_.find(ed.from);
    if (it == in_.end()) continue;
    for (EdgeId k : it->second) {
      int id = static_cast<int>(pairs_.size());
      pairs_.push_back(EdgePair{k, e});
      pair_idx_.emplace(std::make_pair(k, e), id);
      pairs_into_[static_cast<size_t>(e)].push_back(id);
    }
  }
}

std::optional<FlowId> NetworkInstance::source_flow(NodeId n) const {
  for (size_t p = 0; p < sources_.size(); ++p)
    if (sources_[p] == n) return static_cast<FlowId>(p + 1);
  return std::nullopt;
}

const std::vector<EdgeId>& NetworkInstance::in_edges(NodeId n) const {
  auto it = in_.find(n);
  return it == in_.end() ? no_edges_ : it->second;
}

const std::vector<EdgeId>& NetworkInstance::out_edges(NodeId n) const {
  auto it = out_.find(n);
  return it == out_.end() ? no_edges_ : it->second;
}

std::optional<EdgeId> NetworkInstance::find_edge(NodeId from, NodeId to) const {
  auto it = by_endpoints_.find(std::make_pair(from, to));
  if (it == by_endpoints_.end()) return std::nullopt;
  return it->second;
}

int NetworkInstance::pair_index(EdgeId in, EdgeId out) const {
  auto it = pair_idx_.find(std::make_pair(in, out));
  return it == pair_idx_.end() ? -1 : it->second;
}

const std::vector<int>& NetworkInstance::pairs_into(EdgeId e) const {
  return pairs_into_[static_cast<size_t>(e)];
}

Demands Demands::from_instance(const NetworkInstance& instance) {
  Demands d;
  for (const TerminalSpec& t : instance.terminals()) {
    std::uint64_t m = flow_mask(t.demands);
    d.entries.push_back(Entry{t.node, m, m});
  }
  return d;
}

bool Demands::has_expansion() const {
  for (const Entry& e : entries)
    if (e.expanded != e.base) return true;
  return false;
}

int Demands::index_of(NodeId node) const {
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i].terminal == node) return static_cast<int>(i);
  return -1;
}

std::uint64_t flow_mask(const std::vector<FlowId>& flows) {
  std::uint64_t m = 0;
  for (FlowId p : flows) m |= 1ULL << (p - 1);
  return m;
}

std::vector<FlowId> mask_flows(std::uint64_t mask) {
  std::vector<FlowId> out;
  for (FlowId p = 1; mask != 0; ++p, mask >>= 1)
    if (mask & 1) out.push_back(p);
  return out;
}

namespace {

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.from << "," << e.to << ")";
  return os.str();
}

}  // namespace

ValidationReport validate(const NetworkInstance& instance) {
  ValidationReport report;
  auto add = [&](const std::string& kind, const std::string& message) {
    report.push_back(Violation{kind, message});
  };

  {
    std::set<NodeId> seen;
    for (NodeId n : instance.nodes()) {
      if (n < 0) add("negative-node-id", "node id " + std::to_string(n) + " is negative");
      if (!seen.insert(n).second)
        add("duplicate-node", "node " + std::to_string(n) + " listed twice");
    }
  }

  std::set<std::pair<NodeId, NodeId>> endpoint_seen;
  for (const Edge& e : instance.edges()) {
    if (!instance.has_node(e.from) || !instance.has_node(e.to))
      add("unknown-node", "edge " + edge_str(e) + " references an unknown node");
    if (!endpoint_seen.insert(std::make_pair(e.from, e.to)).second)
      add("parallel-edge", "parallel edge " + edge_str(e) +
                               "; model multi-edges by splitting each extra link "
                               "with an intermediate node");
    if (e.cost < 0)
      add("negative-cost", "edge " + edge_str(e) + " has negative usage cost");
  }

  try {
    topological_order(instance);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::cyclic_graph)
      add("cyclic", "graph is cyclic: no topological order exists");
    else
      throw;
  }

  const int P = instance.flow_count();
  if (P > 64) add("too-many-flows", "flow count exceeds 64 (mixing vectors pack into one word)");
  {
    std::set<NodeId> source_nodes;
    for (FlowId p = 1; p <= P; ++p) {
      NodeId s = instance.source(p);
      if (!instance.has_node(s)) {
        add("unknown-node", "source of flow " + std::to_string(p) + " is an unknown node");
        continue;
      }
      if (!source_nodes.insert(s).second)
        add("shared-source", "node " + std::to_string(s) + " is the source of two flows");
      if (!instance.in_edges(s).empty())
        add("source-in-edge",
            "source has incoming edge: node " + std::to_string(s) + " (flow " +
                std::to_string(p) + ")");
    }
  }

  std::uint64_t demanded = 0;
  std::set<NodeId> terminal_nodes;
  for (const TerminalSpec& t : instance.terminals()) {
    if (!instance.has_node(t.node)) {
      add("unknown-node", "terminal " + std::to_string(t.node) + " is an unknown node");
      continue;
    }
    if (!terminal_nodes.insert(t.node).second)
      add("duplicate-terminal", "terminal " + std::to_string(t.node) + " listed twice");
    if (!instance.out_edges(t.node).empty())
      add("terminal-out-edge", "terminal has outgoing edge: node " + std::to_string(t.node));
    if (instance.is_source(t.node))
      add("terminal-is-source", "terminal " + std::to_string(t.node) + " is also a source");
    if (t.demands.empty())
      add("empty-demand", "terminal " + std::to_string(t.node) + " demands no flow");
    for (FlowId p : t.demands) {
      if (p < 1 || p > P)
        add("unknown-flow", "terminal " + std::to_string(t.node) + " demands unknown flow " +
                                std::to_string(p));
      else
        demanded |= 1ULL << (p - 1);
    }
  }
  if (P >= 1 && P <= 64 && demanded != ((P == 64) ? ~0ULL : ((1ULL << P) - 1)))
    add("undemanded-flow", "some flow is demanded by no terminal");

  return report;
}

std::vector<NodeId> topological_order(const NetworkInstance& instance) {
  std::map<NodeId, int> indeg;
  for (NodeId n : instance.nodes()) indeg[n] = 0;
  for (const Edge& e : instance.edges()) {
    if (indeg.count(e.to) && indeg.count(e.from)) ++indeg[e.to];
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (auto& [n, d] : indeg)
    if (d == 0) ready.push(n);
  std::vector<NodeId> order;
  order.reserve(instance.nodes().size());
  while (!ready.empty()) {
    NodeId n = ready.top();
    ready.pop();
    order.push_back(n);
    for (EdgeId e : instance.out_edges(n)) {
      NodeId m = instance.edges()[static_cast<size_t>(e)].to;
      auto it = indeg.find(m);
      if (it != indeg.end() && --it->second == 0) ready.push(m);
    }
  }
  if (order.size() != instance.nodes().size())
    throw Error(ErrorCode::cyclic_graph, "graph is cyclic: no topological order exists");
  return order;
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> neighbors(const NetworkInstance& instance,
                                                              NodeId node) {
  if (!instance.has_node(node))
    throw Error(ErrorCode::unknown_node, "unknown node " + std::to_string(node));
  std::vector<NodeId> in, out;
  for (EdgeId e : instance.in_edges(node))
    in.push_back(instance.edges()[static_cast<size_t>(e)].from);
  for (EdgeId e : instance.out_edges(node))
    out.push_back(instance.edges()[static_cast<size_t>(e)].to);
  std::sort(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  return {in, out};
}

std::vector<EdgeId> edges_in_topological_order(const NetworkInstance& instance) {
  std::vector<NodeId> order = topological_order(instance);
  std::map<NodeId, int> pos;
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<EdgeId> ids(instance.edges().size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<EdgeId>(i);
  std::stable_sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) {
    return pos[instance.edges()[static_cast<size_t>(a)].from] <
           pos[instance.edges()[static_cast<size_t>(b)].from];
  });
  return ids;
}

}  // namespace netmix
