#include <doctest.h>

#include "netmix/centralized.hpp"
#include "netmix/instance_io.hpp"

using namespace netmix;

TEST_CASE("builtins round-trip through serialize/parse") {
  for (const char* name : {"fig3", "butterfly", "sprint-core"}) {
    NetworkInstance original = builtin(name);
    NetworkInstance reparsed = parse_instance(serialize_instance(original));
    CHECK(serialize_instance(reparsed) == serialize_instance(original));
  }
}

TEST_CASE("unknown builtin name throws") {
  CHECK_THROWS_AS(builtin("fig4"), Error);
}

TEST_CASE("parse rejects a duplicate edge") {
  std::string doc = R"({
    "nodes": [1, 2, 3],
    "edges": [{"from": 1, "to": 3, "cost": 1}, {"from": 1, "to": 3, "cost": 1},
              {"from": 2, "to": 3, "cost": 1}],
    "sources": {"1": 1, "2": 2},
    "terminals": [{"node": 3, "demands": [1, 2]}]
  })";
  try {
    parse_instance(doc);
    FAIL("expected validation failure");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::validation_failed);
    CHECK(std::string(err.what()).find("parallel edge") != std::string::npos);
  }
}

TEST_CASE("parse rejects non-dense flow ids") {
  std::string doc = R"({
    "nodes": [1, 2],
    "edges": [{"from": 1, "to": 2, "cost": 1}],
    "sources": {"2": 1},
    "terminals": [{"node": 2, "demands": [1]}]
  })";
  CHECK_THROWS_AS(parse_instance(doc), Error);
}

TEST_CASE("parse reports malformed JSON as a syntax error") {
  try {
    parse_instance("{ nope");
    FAIL("expected syntax error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::syntax_error);
  }
}

TEST_CASE("sprint-core carries the quoted costs and flow-path edges") {
  NetworkInstance sprint = builtin("sprint-core");
  CHECK(validate(sprint).empty());
  auto cost_of = [&](NodeId a, NodeId b) {
    auto e = sprint.find_edge(a, b);
    REQUIRE(e.has_value());
    return sprint.edges()[static_cast<size_t>(*e)].cost;
  };
  CHECK(cost_of(9, 4) == 10);
  CHECK(cost_of(10, 5) == 20);
  CHECK(cost_of(10, 6) == 20);
  CHECK(cost_of(8, 10) == 1);

  // every edge of the quoted flow paths exists
  const std::vector<std::vector<NodeId>> quoted = {
      {8, 10, 7, 4, 1, 2}, {11, 10, 7, 9, 2}, {11, 9, 2},    {8, 6},
      {11, 10, 7, 6},      {8, 10, 5, 1, 2},  {11, 10, 6},   {8, 10, 7, 6},
  };
  for (const auto& path : quoted)
    for (size_t i = 0; i + 1 < path.size(); ++i)
      CHECK(sprint.find_edge(path[i], path[i + 1]).has_value());
}

TEST_CASE("butterfly has exactly one coding point upstream of both terminals") {
  NetworkInstance butterfly = builtin("butterfly");
  CHECK(validate(butterfly).empty());
  CHECK(butterfly.edges().size() == 9);
  int coding_points = 0;
  for (NodeId n : butterfly.nodes()) {
    if (butterfly.in_edges(n).size() != 2) continue;
    if (butterfly.out_edges(n).size() != 1) continue;
    // upstream of both terminals?
    bool up7 = !enumerate_paths(butterfly, n, 7).empty();
    bool up8 = !enumerate_paths(butterfly, n, 8).empty();
    if (up7 && up8) ++coding_points;
  }
  CHECK(coding_points == 1);
}

TEST_CASE("random demands are deterministic and respect q") {
  NetworkInstance sprint = builtin("sprint-core");
  DemandGenConfig config;
  config.terminal_count = 2;
  config.terminal_pool = {2, 4, 6, 9};
  config.realizations = 64;
  config.seed = 11;

  SUBCASE("q = 2 demands everything") {
    config.q = 2.0;
    for (const Demands& d : random_demands(sprint, config))
      for (const auto& e : d.entries) CHECK(e.base == 0b11);
  }
  SUBCASE("q = 1 demands a single source") {
    config.q = 1.0;
    for (const Demands& d : random_demands(sprint, config))
      for (const auto& e : d.entries) CHECK(std::popcount(e.base) == 1);
  }
  SUBCASE("terminals are distinct and from the pool") {
    config.q = 1.5;
    for (const Demands& d : random_demands(sprint, config)) {
      CHECK(d.entries.size() == 2);
      CHECK(d.entries[0].terminal != d.entries[1].terminal);
    }
  }
  SUBCASE("same seed, same realizations") {
    config.q = 1.5;
    auto a = random_demands(sprint, config);
    auto b = random_demands(sprint, config);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].entries.size() == b[i].entries.size());
      for (size_t t = 0; t < a[i].entries.size(); ++t) {
        CHECK(a[i].entries[t].terminal == b[i].entries[t].terminal);
        CHECK(a[i].entries[t].base == b[i].entries[t].base);
      }
    }
  }
}

TEST_CASE("mean demand size approaches q") {
  NetworkInstance sprint = builtin("sprint-core");
  DemandGenConfig config;
  config.terminal_count = 2;
  config.terminal_pool = {2, 4, 6, 9};
  config.realizations = 10000;
  config.q = 1.5;
  config.seed = 1234;
  double total = 0;
  long count = 0;
  for (const Demands& d : random_demands(sprint, config))
    for (const auto& e : d.entries) {
      total += std::popcount(e.base);
      ++count;
    }
  double mean = total / static_cast<double>(count);
  CHECK(mean == doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("random demands reject bad configs") {
  NetworkInstance sprint = builtin("sprint-core");
  DemandGenConfig config;
  config.terminal_pool = {2, 6};
  config.q = 2.5;
  CHECK_THROWS_AS(random_demands(sprint, config), Error);
  config.q = 1.5;
  config.terminal_count = 3;
  CHECK_THROWS_AS(random_demands(sprint, config), Error);
}

TEST_CASE("solution documents carry cost, paths and the feasibility marker") {
  NetworkInstance fig3 = builtin("fig3");
  Demands demands = Demands::from_instance(fig3);
  SolveOutcome outcome = solve_centralized(fig3, demands);
  REQUIRE(outcome.feasible);
  std::string doc = write_solution(fig3, outcome);
  CHECK(doc.find("\"cost\": 11") != std::string::npos);
  CHECK(doc.find("\"paths\"") != std::string::npos);

  SolveOutcome infeasible;
  infeasible.status = "infeasible";
  std::string marker = write_solution(fig3, infeasible);
  CHECK(marker.find("\"feasible\": false") != std::string::npos);
  CHECK(marker.find("paths") == std::string::npos);
}
