#include "netmix/instance_io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace netmix {

using ordered_json = nlohmann::ordered_json;

NetworkInstance parse_instance(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw Error(ErrorCode::syntax_error, std::string("instance document: ") + err.what());
  }
  try {
    std::vector<NodeId> nodes;
    for (const auto& n : doc.at("nodes")) nodes.push_back(n.get<NodeId>());
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges"))
      edges.push_back(Edge{e.at("from").get<NodeId>(), e.at("to").get<NodeId>(),
                           e.at("cost").get<Cost>()});
    std::map<int, NodeId> source_map;
    for (const auto& [key, value] : doc.at("sources").items()) {
      size_t pos = 0;
      int p = std::stoi(key, &pos);
      if (pos != key.size() || p < 1)
        throw Error(ErrorCode::syntax_error, "source key '" + key + "' is not a flow id");
      if (!source_map.emplace(p, value.get<NodeId>()).second)
        throw Error(ErrorCode::syntax_error, "duplicate source for flow " + key);
    }
    std::vector<NodeId> sources;
    for (int p = 1; p <= static_cast<int>(source_map.size()); ++p) {
      auto it = source_map.find(p);
      if (it == source_map.end())
        throw Error(ErrorCode::syntax_error,
                    "flow ids must be dense 1..P; missing flow " + std::to_string(p));
      sources.push_back(it->second);
    }
    std::vector<TerminalSpec> terminals;
    for (const auto& t : doc.at("terminals")) {
      TerminalSpec spec;
      spec.node = t.at("node").get<NodeId>();
      for (const auto& d : t.at("demands")) spec.demands.push_back(d.get<FlowId>());
      std::sort(spec.demands.begin(), spec.demands.end());
      terminals.push_back(std::move(spec));
    }
    NetworkInstance instance(std::move(nodes), std::move(edges), std::move(sources),
                             std::move(terminals));
    ValidationReport report = validate(instance);
    if (!report.empty()) {
      std::ostringstream os;
      os << "instance is invalid:";
      for (const Violation& v : report) os << " [" << v.message << "]";
      throw Error(ErrorCode::validation_failed, os.str());
    }
    return instance;
  } catch (const nlohmann::json::exception& err) {
    throw Error(ErrorCode::syntax_error, std::string("instance document: ") + err.what());
  }
}

std::string serialize_instance(const NetworkInstance& instance) {
  ordered_json doc;
  doc["nodes"] = instance.nodes();
  doc["edges"] = ordered_json::array();
  for (const Edge& e : instance.edges())
    doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"cost", e.cost}});
  ordered_json sources = ordered_json::object();
  for (FlowId p = 1; p <= instance.flow_count(); ++p)
    sources[std::to_string(p)] = instance.source(p);
  doc["sources"] = std::move(sources);
  doc["terminals"] = ordered_json::array();
  for (const TerminalSpec& t : instance.terminals())
    doc["terminals"].push_back({{"node", t.node}, {"demands", t.demands}});
  return doc.dump(2) + "\n";
}

NetworkInstance builtin(const std::string& name) {
  auto unit_edges = [](std::initializer_list<std::pair<NodeId, NodeId>> list) {
    std::vector<Edge> edges;
    for (auto [a, b] : list) edges.push_back(Edge{a, b, 1.0});
    return edges;
  };
  if (name == "fig3") {
    return NetworkInstance(
        {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11},
        unit_edges({{1, 3},
                    {2, 5},
                    {3, 4},
                    {3, 8},
                    {3, 9},
                    {4, 6},
                    {5, 4},
                    {5, 7},
                    {6, 7},
                    {6, 10},
                    {9, 10},
                    {9, 11},
                    {11, 8}}),
        {1, 2},
        {TerminalSpec{8, {1}}, TerminalSpec{7, {1, 2}}, TerminalSpec{10, {1, 2}}});
  }
  if (name == "butterfly") {
    // Two-unicast butterfly: coding edge (3,4), two-hop side branches.
    return NetworkInstance(
        {1, 2, 3, 4, 5, 6, 7, 8},
        unit_edges({{1, 3}, {2, 3}, {3, 4}, {4, 7}, {4, 8}, {1, 5}, {5, 8}, {2, 6}, {6, 7}}),
        {1, 2}, {TerminalSpec{7, {1}}, TerminalSpec{8, {2}}});
  }
  if (name == "sprint-core") {
    std::vector<Edge> edges = {
        {8, 10, 1},  {10, 7, 1}, {7, 4, 1}, {4, 1, 1},  {1, 2, 1},
        {10, 5, 20}, {5, 1, 1},  {7, 9, 1}, {9, 2, 1},  {11, 9, 1},
        {11, 10, 1}, {7, 6, 1},  {10, 6, 20}, {8, 6, 1}, {9, 4, 10},
    };
    return NetworkInstance({1, 2, 4, 5, 6, 7, 8, 9, 10, 11}, std::move(edges), {8, 11},
                           {TerminalSpec{2, {1, 2}}, TerminalSpec{6, {2}}});
  }
  throw Error(ErrorCode::unknown_topology, "unknown builtin topology '" + name + "'");
}

std::vector<Demands> random_demands(const NetworkInstance& instance,
                                    const DemandGenConfig& config) {
  if (instance.flow_count() != 2)
    throw Error(ErrorCode::bad_config, "the demand protocol is two-source");
  if (config.q < 1.0 || config.q > 2.0)
    throw Error(ErrorCode::bad_config, "q must lie in [1,2]");
  if (config.terminal_count != 2 && config.terminal_count != 3)
    throw Error(ErrorCode::bad_config, "terminal count must be 2 or 3");
  if (static_cast<int>(config.terminal_pool.size()) < config.terminal_count)
    throw Error(ErrorCode::bad_config, "terminal pool smaller than the terminal count");
  if (config.realizations < 1)
    throw Error(ErrorCode::bad_config, "realization count must be >= 1");
  for (NodeId n : config.terminal_pool)
    if (!instance.has_node(n))
      throw Error(ErrorCode::bad_config, "terminal pool node " + std::to_string(n) +
                                             " is not in the instance");

  std::vector<Demands> out;
  out.reserve(static_cast<size_t>(config.realizations));
  for (int r = 0; r < config.realizations; ++r) {
    Rng rng(derive_seed(config.seed, seed_stream::demand_realization,
                        static_cast<std::uint64_t>(r)));
    // distinct terminals: partial Fisher-Yates over a sorted pool copy
    std::vector<NodeId> pool = config.terminal_pool;
    std::sort(pool.begin(), pool.end());
    Demands demands;
    for (int t = 0; t < config.terminal_count; ++t) {
      size_t pick = static_cast<size_t>(t) +
                    static_cast<size_t>(rng.uniform_int(pool.size() - static_cast<size_t>(t)));
      std::swap(pool[static_cast<size_t>(t)], pool[pick]);
      FlowId first = rng.uniform_int(2) == 0 ? 1 : 2;
      std::uint64_t mask = 1ULL << (first - 1);
      if (rng.bernoulli(config.q - 1.0)) mask |= 1ULL << ((3 - first) - 1);
      demands.entries.push_back(
          Demands::Entry{pool[static_cast<size_t>(t)], mask, mask});
    }
    out.push_back(std::move(demands));
  }
  return out;
}

std::string write_solution(const NetworkInstance& instance, const SolveOutcome& outcome) {
  ordered_json doc;
  doc["feasible"] = outcome.feasible;
  doc["status"] = outcome.status;
  if (!outcome.feasible) return doc.dump(2) + "\n";

  doc["cost"] = outcome.cost;
  if (outcome.demands.has_expansion()) {
    doc["expansion"] = ordered_json::array();
    for (const Demands::Entry& e : outcome.demands.entries)
      doc["expansion"].push_back(
          {{"node", e.terminal}, {"demands", mask_flows(e.base)},
           {"expanded", mask_flows(e.expanded)}});
  }
  doc["used_edges"] = ordered_json::array();
  for (size_t e = 0; e < outcome.solution.z.size(); ++e) {
    if (!outcome.solution.z[e]) continue;
    const Edge& ed = instance.edges()[e];
    doc["used_edges"].push_back({{"from", ed.from}, {"to", ed.to}, {"cost", ed.cost}});
  }
  doc["paths"] = ordered_json::array();
  for (size_t ti = 0; ti < outcome.demands.entries.size(); ++ti) {
    const Demands::Entry& entry = outcome.demands.entries[ti];
    for (FlowId p : mask_flows(entry.expanded)) {
      // follow the f-marked edges from the source
      std::vector<NodeId> nodes{instance.source(p)};
      const std::uint64_t bit = 1ULL << (p - 1);
      NodeId at = nodes.back();
      while (at != entry.terminal) {
        bool advanced = false;
        for (EdgeId e : instance.out_edges(at)) {
          if (outcome.solution.f[static_cast<size_t>(e)][ti] & bit) {
            at = instance.edges()[static_cast<size_t>(e)].to;
            nodes.push_back(at);
            advanced = true;
            break;
          }
        }
        if (!advanced) break;
      }
      doc["paths"].push_back(
          {{"flow", p}, {"terminal", entry.terminal}, {"nodes", nodes}});
    }
  }
  doc["x"] = ordered_json::array();
  for (size_t e = 0; e < outcome.solution.x.size(); ++e) {
    if (outcome.solution.x[e].bits == 0) continue;
    const Edge& ed = instance.edges()[e];
    doc["x"].push_back({{"from", ed.from},
                        {"to", ed.to},
                        {"flows", mask_flows(outcome.solution.x[e].bits)}});
  }
  doc["beta"] = ordered_json::array();
  for (size_t pid = 0; pid < outcome.solution.beta.size(); ++pid) {
    if (!outcome.solution.beta[pid]) continue;
    const NetworkInstance::EdgePair& pair = instance.edge_pairs()[pid];
    const Edge& in = instance.edges()[static_cast<size_t>(pair.in)];
    const Edge& out = instance.edges()[static_cast<size_t>(pair.out)];
    doc["beta"].push_back({{"tail", in.from}, {"mid", in.to}, {"head", out.to}});
  }
  return doc.dump(2) + "\n";
}

std::string write_code(const NetworkInstance& instance, const LinearCode& code) {
  ordered_json doc;
  doc["q"] = code.q;
  doc["c"] = ordered_json::array();
  for (size_t e = 0; e < code.c.size(); ++e) {
    const Edge& ed = instance.edges()[e];
    doc["c"].push_back({{"from", ed.from}, {"to", ed.to}, {"coeffs", code.c[e]}});
  }
  doc["alpha"] = ordered_json::array();
  for (size_t pid = 0; pid < code.alpha.size(); ++pid) {
    if (code.alpha[pid] == 0) continue;
    const NetworkInstance::EdgePair& pair = instance.edge_pairs()[pid];
    const Edge& in = instance.edges()[static_cast<size_t>(pair.in)];
    const Edge& out = instance.edges()[static_cast<size_t>(pair.out)];
    doc["alpha"].push_back({{"tail", in.from},
                            {"mid", in.to},
                            {"head", out.to},
                            {"value", code.alpha[pid]}});
  }
  return doc.dump(2) + "\n";
}

std::string engine_trace_csv(const CflResult& engine) {
  std::ostringstream os;
  os << "iteration,satisfied_count,all_satisfied\n";
  for (const CflTraceRow& row : engine.trace)
    os << row.iteration << "," << row.satisfied_variables << ","
       << (row.all_satisfied ? 1 : 0) << "\n";
  return os.str();
}

std::string restart_csv(const RestartOutcome& restarts) {
  std::ostringstream os;
  os << "restart_index,feasible,cost,running_min\n";
  for (const RestartRecord& rec : restarts.records) {
    os << rec.restart << "," << (rec.feasible ? 1 : 0) << ",";
    if (rec.feasible) os << rec.cost;
    os << ",";
    if (rec.has_min) os << rec.running_min;
    os << "\n";
  }
  return os.str();
}

std::string path_choice_csv(const CflSolve& solve, const Demands& demands) {
  std::ostringstream os;
  os << "iteration,flow,terminal,path_index\n";
  for (size_t it = 0; it < solve.engine.choices.size(); ++it) {
    for (size_t m = 0; m < solve.variables.size(); ++m) {
      auto [p, ti] = solve.variables[m];
      os << (it + 1) << "," << p << "," << demands.entries[(size_t)ti].terminal << ","
         << (solve.engine.choices[it][m] + 1) << "\n";
    }
  }
  return os.str();
}

std::string edge_event_csv(const NetworkInstance& instance, const CflSolve& solve) {
  std::ostringstream os;
  os << "iteration,edge_from,edge_to,chosen_index,matches_final\n";
  const std::vector<int>* final_assignment =
      solve.engine.assignment ? &*solve.engine.assignment : nullptr;
  for (size_t it = 0; it < solve.engine.choices.size(); ++it) {
    for (size_t e = 0; e < solve.engine.choices[it].size(); ++e) {
      const Edge& ed = instance.edges()[e];
      int chosen = solve.engine.choices[it][e];
      int matches = final_assignment && (*final_assignment)[e] == chosen ? 1 : 0;
      os << (it + 1) << "," << ed.from << "," << ed.to << "," << chosen << "," << matches
         << "\n";
    }
  }
  return os.str();
}

}  // namespace netmix
