#include <doctest.h>

#include "netmix/instance_io.hpp"
#include "netmix/paths.hpp"
#include "test_support.hpp"

using namespace netmix;

namespace {

std::vector<NodeId> node_sequence(const NetworkInstance& instance, const Path& path) {
  std::vector<NodeId> nodes;
  if (path.empty()) return nodes;
  nodes.push_back(instance.edges()[static_cast<size_t>(path.front())].from);
  for (EdgeId e : path) nodes.push_back(instance.edges()[static_cast<size_t>(e)].to);
  return nodes;
}

}  // namespace

TEST_CASE("fig3 has exactly the two quoted paths from source 1 to terminal 8") {
  NetworkInstance fig3 = builtin("fig3");
  std::vector<Path> paths = enumerate_paths(fig3, 1, 8);
  REQUIRE(paths.size() == 2);
  CHECK(node_sequence(fig3, paths[0]) == std::vector<NodeId>{1, 3, 8});
  CHECK(node_sequence(fig3, paths[1]) == std::vector<NodeId>{1, 3, 9, 11, 8});
}

TEST_CASE("a chain has its unique path") {
  NetworkInstance chain({1, 2, 3}, {{1, 2, 1}, {2, 3, 1}}, {1}, {TerminalSpec{3, {1}}});
  std::vector<Path> paths = enumerate_paths(chain, 1, 3);
  REQUIRE(paths.size() == 1);
  CHECK(node_sequence(chain, paths[0]) == std::vector<NodeId>{1, 2, 3});
}

TEST_CASE("butterfly cross pairs have a side path and a coding-point path") {
  NetworkInstance butterfly = builtin("butterfly");
  std::vector<Path> paths = enumerate_paths(butterfly, 1, 8);
  REQUIRE(paths.size() == 2);
  CHECK(node_sequence(butterfly, paths[0]) == std::vector<NodeId>{1, 3, 4, 8});
  CHECK(node_sequence(butterfly, paths[1]) == std::vector<NodeId>{1, 5, 8});
  // the demanded pairs are forced through the coding point
  CHECK(enumerate_paths(butterfly, 1, 7).size() == 1);
  CHECK(enumerate_paths(butterfly, 2, 8).size() == 1);
}

TEST_CASE("path cap throws loudly") {
  NetworkInstance fig3 = builtin("fig3");
  CHECK_THROWS_AS(enumerate_paths(fig3, 1, 8, 1), Error);
}

TEST_CASE("enumeration count matches the brute-force counter on random DAGs") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    NetworkInstance instance = test::random_instance(rng);
    for (FlowId p = 1; p <= instance.flow_count(); ++p) {
      for (const TerminalSpec& t : instance.terminals()) {
        int expected = test::count_paths_brute(instance, instance.source(p), t.node);
        CHECK(static_cast<int>(enumerate_paths(instance, instance.source(p), t.node).size()) ==
              expected);
      }
    }
  }
}

TEST_CASE("disjoint combinations on fig3 terminal 7") {
  NetworkInstance fig3 = builtin("fig3");
  std::vector<std::vector<Path>> flow_paths = {enumerate_paths(fig3, 1, 7),
                                               enumerate_paths(fig3, 2, 7)};
  std::vector<std::vector<int>> combos = disjoint_combinations(flow_paths);
  REQUIRE(combos.size() == 1);
  CHECK(node_sequence(fig3, flow_paths[0][static_cast<size_t>(combos[0][0])]) ==
        std::vector<NodeId>{1, 3, 4, 6, 7});
  CHECK(node_sequence(fig3, flow_paths[1][static_cast<size_t>(combos[0][1])]) ==
        std::vector<NodeId>{2, 5, 7});
}

TEST_CASE("two flows forced through one shared edge have no disjoint combination") {
  // both sources funnel into the single edge (3,4)
  NetworkInstance funnel({1, 2, 3, 4, 5}, {{1, 3, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}},
                         {1, 2}, {TerminalSpec{5, {1, 2}}});
  std::vector<std::vector<Path>> flow_paths = {enumerate_paths(funnel, 1, 5),
                                               enumerate_paths(funnel, 2, 5)};
  CHECK(disjoint_combinations(flow_paths).empty());
}

TEST_CASE("singleton demands never conflict") {
  NetworkInstance fig3 = builtin("fig3");
  std::vector<std::vector<Path>> flow_paths = {enumerate_paths(fig3, 1, 8)};
  CHECK(disjoint_combinations(flow_paths).size() == flow_paths[0].size());
}

TEST_CASE("derive_from_selection on fig3 solution (a)") {
  NetworkInstance fig3 = builtin("fig3");
  Demands demands = Demands::from_instance(fig3);
  PathTable table = enumerate_path_table(fig3, demands);

  // indices of the quoted solution-(a) paths
  auto index_of = [&](FlowId p, int ti, const std::vector<NodeId>& nodes) {
    const std::vector<Path>& list = table.at(p, ti);
    for (size_t i = 0; i < list.size(); ++i)
      if (node_sequence(fig3, list[i]) == nodes) return static_cast<int>(i);
    FAIL("path not found");
    return -1;
  };
  PathSelection sel;
  sel.index[{1, 0}] = index_of(1, 0, {1, 3, 8});
  sel.index[{1, 1}] = index_of(1, 1, {1, 3, 4, 6, 7});
  sel.index[{2, 1}] = index_of(2, 1, {2, 5, 7});
  sel.index[{1, 2}] = index_of(1, 2, {1, 3, 9, 10});
  sel.index[{2, 2}] = index_of(2, 2, {2, 5, 4, 6, 10});

  MixingSolution s = derive_from_selection(fig3, demands, table, sel);
  CHECK(solution_cost(fig3, s.z) == 11);
  CHECK(verify_solution(fig3, demands, s).empty());

  // both in-edges of node 4 feed (4,6)
  auto pid_346 = fig3.pair_index(*fig3.find_edge(3, 4), *fig3.find_edge(4, 6));
  auto pid_546 = fig3.pair_index(*fig3.find_edge(5, 4), *fig3.find_edge(4, 6));
  CHECK(s.beta[static_cast<size_t>(pid_346)] == 1);
  CHECK(s.beta[static_cast<size_t>(pid_546)] == 1);
  CHECK(s.x[static_cast<size_t>(*fig3.find_edge(4, 6))].bits == 0b11);

  // every (p, t) clause holds on this selection
  for (const auto& [key, idx] : sel.index)
    CHECK(path_clause(fig3, demands, table, sel, key.first, key.second));
}

TEST_CASE("single unicast on a chain: z equals f, beta only along the chain") {
  NetworkInstance chain({1, 2, 3, 4}, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}}, {1},
                        {TerminalSpec{4, {1}}});
  Demands demands = Demands::from_instance(chain);
  PathTable table = enumerate_path_table(chain, demands);
  PathSelection sel;
  sel.index[{1, 0}] = 0;
  MixingSolution s = derive_from_selection(chain, demands, table, sel);
  for (size_t e = 0; e < s.z.size(); ++e) CHECK(s.z[e] == (s.f[e][0] != 0 ? 1 : 0));
  for (std::uint8_t b : s.beta) CHECK(b == 1);
  CHECK(verify_solution(chain, demands, s).empty());
}

TEST_CASE("selection sharing an edge within one terminal throws") {
  NetworkInstance funnel({1, 2, 3, 4, 5}, {{1, 3, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}},
                         {1, 2}, {TerminalSpec{5, {1, 2}}});
  Demands demands = Demands::from_instance(funnel);
  PathTable table = enumerate_path_table(funnel, demands);
  PathSelection sel;
  sel.index[{1, 0}] = 0;
  sel.index[{2, 0}] = 0;
  CHECK_THROWS_AS(derive_from_selection(funnel, demands, table, sel), Error);
  CHECK_FALSE(path_clause(funnel, demands, table, sel, 1, 0));
}

TEST_CASE("butterfly two-unicast clause fails on the forced routing") {
  NetworkInstance butterfly = builtin("butterfly");
  Demands demands = Demands::from_instance(butterfly);
  PathTable table = enumerate_path_table(butterfly, demands);
  PathSelection sel;
  sel.index[{1, 0}] = 0;
  sel.index[{2, 1}] = 0;
  CHECK_FALSE(path_clause(butterfly, demands, table, sel, 1, 0));
  CHECK_FALSE(path_clause(butterfly, demands, table, sel, 2, 1));
}

TEST_CASE("feasible clauses imply a verify-clean derived solution on random instances") {
  Rng rng(33);
  int verified = 0;
  for (int trial = 0; trial < 120; ++trial) {
    NetworkInstance instance = test::random_instance(rng);
    Demands demands = Demands::from_instance(instance);
    PathTable table;
    try {
      table = enumerate_path_table(instance, demands, 200);
    } catch (const Error&) {
      continue;
    }
    if (!table.complete()) continue;
    // first selection in lexicographic order with all clauses true, if any
    std::vector<std::pair<FlowId, int>> keys;
    for (const auto& [key, list] : table.paths) keys.push_back(key);
    std::vector<int> idx(keys.size(), 0);
    bool done = false;
    while (!done) {
      PathSelection sel;
      for (size_t i = 0; i < keys.size(); ++i) sel.index[keys[i]] = idx[i];
      bool all = true;
      for (const auto& key : keys)
        all = all && path_clause(instance, demands, table, sel, key.first, key.second);
      if (all) {
        MixingSolution s = derive_from_selection(instance, demands, table, sel);
        CHECK(verify_solution(instance, demands, s).empty());
        ++verified;
        break;
      }
      size_t k = 0;
      for (; k < keys.size(); ++k) {
        if (++idx[k] < static_cast<int>(table.paths.at(keys[k]).size())) break;
        idx[k] = 0;
      }
      done = k == keys.size();
    }
  }
  CHECK(verified > 10);  // the generator must produce enough feasible cases
}
