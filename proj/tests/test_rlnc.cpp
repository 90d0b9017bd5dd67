#include <doctest.h>

#include "netmix/centralized.hpp"
#include "netmix/instance_io.hpp"
#include "netmix/rlnc.hpp"
#include "test_support.hpp"

using namespace netmix;

namespace {

SolveOutcome fig3_solution() {
  NetworkInstance fig3 = builtin("fig3");
  return solve_centralized(fig3, Demands::from_instance(fig3));
}

SolveOutcome butterfly_expanded() {
  NetworkInstance butterfly = builtin("butterfly");
  return solve_with_expansion(butterfly, Demands::from_instance(butterfly));
}

}  // namespace

TEST_CASE("field rejects non-prime orders and small fields") {
  CHECK_THROWS_AS(Gf(6), Error);
  CHECK(Gf::is_prime(2));
  CHECK(Gf::is_prime(5));
  CHECK_FALSE(Gf::is_prime(1));
  Gf f5(5);
  for (std::uint32_t a = 1; a < 5; ++a) CHECK(f5.mul(a, f5.inv(a)) == 1);

  NetworkInstance fig3 = builtin("fig3");
  std::vector<std::uint8_t> beta(static_cast<size_t>(fig3.pair_count()), 0);
  Rng rng(1);
  // q = 2 <= T = 3 must be rejected
  CHECK_THROWS_AS(assign_coefficients(fig3, beta, 2, 3, rng), Error);
}

TEST_CASE("coefficients are zero where beta is zero, seeded draws reproduce") {
  NetworkInstance fig3 = builtin("fig3");
  SolveOutcome outcome = fig3_solution();
  REQUIRE(outcome.feasible);

  SUBCASE("all-zero beta gives all-zero alpha") {
    std::vector<std::uint8_t> beta(static_cast<size_t>(fig3.pair_count()), 0);
    Rng rng(3);
    std::vector<std::uint32_t> alpha = assign_coefficients(fig3, beta, 5, 3, rng);
    for (std::uint32_t a : alpha) CHECK(a == 0);
  }
  SUBCASE("draws are deterministic under the seed") {
    Rng rng1(9), rng2(9);
    auto a1 = assign_coefficients(fig3, outcome.solution.beta, 5, 3, rng1);
    auto a2 = assign_coefficients(fig3, outcome.solution.beta, 5, 3, rng2);
    CHECK(a1 == a2);
    for (size_t pid = 0; pid < a1.size(); ++pid)
      if (!outcome.solution.beta[pid]) CHECK(a1[pid] == 0);
  }
}

TEST_CASE("code propagation: chain identity and butterfly XOR") {
  NetworkInstance chain({1, 2, 3}, {{1, 2, 1}, {2, 3, 1}}, {1}, {TerminalSpec{3, {1}}});
  std::vector<std::uint32_t> alpha(static_cast<size_t>(chain.pair_count()), 1);
  auto c = propagate_code(chain, alpha, 5);
  CHECK(c[static_cast<size_t>(*chain.find_edge(2, 3))] == std::vector<std::uint32_t>{1});

  NetworkInstance butterfly = builtin("butterfly");
  std::vector<std::uint32_t> ones(static_cast<size_t>(butterfly.pair_count()), 1);
  auto cb = propagate_code(butterfly, ones, 2);
  CHECK(cb[static_cast<size_t>(*butterfly.find_edge(3, 4))] ==
        std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("coding vectors vanish where mixing vectors do") {
  Rng rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    NetworkInstance instance = test::random_instance(rng);
    std::vector<std::uint8_t> beta(static_cast<size_t>(instance.pair_count()), 0);
    for (auto& b : beta) b = rng.bernoulli(0.5) ? 1 : 0;
    std::vector<MixVector> x = propagate_mixing(instance, beta);
    Rng draw(trial);
    std::vector<std::uint32_t> alpha =
        assign_coefficients(instance, beta, 7, instance.terminals().size(), draw);
    auto c = propagate_code(instance, alpha, 7);
    for (size_t e = 0; e < c.size(); ++e)
      for (FlowId p = 1; p <= instance.flow_count(); ++p)
        if (!x[e].test(p)) CHECK(c[e][static_cast<size_t>(p - 1)] == 0);
  }
}

TEST_CASE("identity routing on a mixing-free solution gives identity matrices") {
  // two disjoint unicasts
  NetworkInstance g({1, 2, 3, 4, 5, 6}, {{1, 3, 1}, {3, 5, 1}, {2, 4, 1}, {4, 6, 1}},
                    {1, 2}, {TerminalSpec{5, {1}}, TerminalSpec{6, {2}}});
  Demands demands = Demands::from_instance(g);
  SolveOutcome outcome = solve_centralized(g, demands);
  REQUIRE(outcome.feasible);
  auto alpha = identity_routing_coefficients(g, outcome.solution.beta);
  auto c = propagate_code(g, alpha, 3);
  auto mats = terminal_matrices(g, demands, outcome.solution.f, c);
  for (const auto& [ti, m] : mats) {
    REQUIRE(m.size() == 1);
    CHECK(m[0][0] == 1);
  }
  CHECK(verify_decodable(g, demands, c, outcome.solution.f, 3));
}

TEST_CASE("identity routing stays decodable on fig3 and the butterfly") {
  {
    NetworkInstance fig3 = builtin("fig3");
    Demands demands = Demands::from_instance(fig3);
    SolveOutcome outcome = fig3_solution();
    auto alpha = identity_routing_coefficients(fig3, outcome.solution.beta);
    auto c = propagate_code(fig3, alpha, 5);
    CHECK(verify_decodable(fig3, demands, c, outcome.solution.f, 5));
  }
  {
    NetworkInstance butterfly = builtin("butterfly");
    SolveOutcome outcome = butterfly_expanded();
    REQUIRE(outcome.feasible);
    auto alpha = identity_routing_coefficients(butterfly, outcome.solution.beta);
    auto c = propagate_code(butterfly, alpha, 3);
    CHECK(verify_decodable(butterfly, outcome.demands, c, outcome.solution.f, 3));
  }
}

TEST_CASE("butterfly terminal matrices under the XOR code") {
  NetworkInstance butterfly = builtin("butterfly");
  SolveOutcome outcome = butterfly_expanded();
  auto alpha = identity_routing_coefficients(butterfly, outcome.solution.beta);
  auto c = propagate_code(butterfly, alpha, 2);
  auto mats = terminal_matrices(butterfly, outcome.demands, outcome.solution.f, c);
  REQUIRE(mats.size() == 2);
  // t1 = 7: flow 1 through the coding point (row (1,1)), flow 2 by the side (0,1)
  CHECK(mats.at(0) ==
        std::vector<std::vector<std::uint32_t>>{{1, 1}, {0, 1}});
  // t2 = 8: flow 1 by the side (1,0), flow 2 through the coding point (1,1)
  CHECK(mats.at(1) ==
        std::vector<std::vector<std::uint32_t>>{{1, 0}, {1, 1}});
  Gf f2(2);
  for (const auto& [ti, m] : mats) CHECK(gf_rank(f2, m) == 2);
}

TEST_CASE("alpha all zero on a used chain is not decodable") {
  NetworkInstance fig3 = builtin("fig3");
  Demands demands = Demands::from_instance(fig3);
  SolveOutcome outcome = fig3_solution();
  std::vector<std::uint32_t> alpha(static_cast<size_t>(fig3.pair_count()), 0);
  auto c = propagate_code(fig3, alpha, 5);
  CHECK_FALSE(verify_decodable(fig3, demands, c, outcome.solution.f, 5));
}

TEST_CASE("sample_code succeeds on fig3 with q = 5 and reports failure honestly") {
  NetworkInstance fig3 = builtin("fig3");
  Demands demands = Demands::from_instance(fig3);
  SolveOutcome outcome = fig3_solution();
  Rng rng(17);
  LinearCode code = sample_code(fig3, demands, outcome.solution, 5, rng, 32);
  CHECK(code.q == 5);
  CHECK(verify_decodable(fig3, demands, code.c, outcome.solution.f, 5));

  // q = 2 with T = 3 violates the field bound
  Rng rng2(17);
  CHECK_THROWS_AS(sample_code(fig3, demands, outcome.solution, 2, rng2, 4), Error);
}

TEST_CASE("roundtrip decodes every symbol tuple exactly (exhaustive)") {
  {
    NetworkInstance fig3 = builtin("fig3");
    Demands demands = Demands::from_instance(fig3);
    SolveOutcome outcome = fig3_solution();
    Rng rng(23);
    LinearCode code = sample_code(fig3, demands, outcome.solution, 5, rng, 32);
    for (std::uint32_t s1 = 0; s1 < 5; ++s1) {
      for (std::uint32_t s2 = 0; s2 < 5; ++s2) {
        RoundtripResult rt = roundtrip(fig3, demands, outcome.solution, code, {s1, s2});
        // every terminal recovers its demanded symbols
        for (int ti = 0; ti < demands.terminal_count(); ++ti) {
          std::vector<FlowId> flows = mask_flows(demands.effective(ti));
          const std::vector<std::uint32_t> want = [&] {
            std::vector<std::uint32_t> w;
            for (FlowId p : flows) w.push_back(p == 1 ? s1 : s2);
            return w;
          }();
          CHECK(rt.decoded.at(ti) == want);
        }
      }
    }
  }
}

TEST_CASE("butterfly XOR roundtrip: coding edge carries the sum") {
  NetworkInstance butterfly = builtin("butterfly");
  SolveOutcome outcome = butterfly_expanded();
  auto alpha = identity_routing_coefficients(butterfly, outcome.solution.beta);
  LinearCode code;
  code.q = 2;
  code.alpha = alpha;
  code.c = propagate_code(butterfly, alpha, 2);
  code.a_t = terminal_matrices(butterfly, outcome.demands, outcome.solution.f, code.c);
  RoundtripResult rt = roundtrip(butterfly, outcome.demands, outcome.solution, code, {1, 0});
  CHECK(rt.edge_symbols[static_cast<size_t>(*butterfly.find_edge(3, 4))] == 1);
  CHECK(rt.decoded.at(0) == std::vector<std::uint32_t>{1, 0});
  CHECK(rt.decoded.at(1) == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("all-zero sources give all-zero symbols") {
  NetworkInstance fig3 = builtin("fig3");
  Demands demands = Demands::from_instance(fig3);
  SolveOutcome outcome = fig3_solution();
  Rng rng(29);
  LinearCode code = sample_code(fig3, demands, outcome.solution, 5, rng, 32);
  RoundtripResult rt = roundtrip(fig3, demands, outcome.solution, code, {0, 0});
  for (std::uint32_t sym : rt.edge_symbols) CHECK(sym == 0);
  for (const auto& [ti, decoded] : rt.decoded)
    for (std::uint32_t v : decoded) CHECK(v == 0);
}

TEST_CASE("local recursion equals the coding-vector dot product on random DAGs") {
  Rng rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    NetworkInstance instance = test::random_instance(rng);
    const std::uint32_t q = 7;
    Gf field(q);
    // unconstrained random coefficients
    std::vector<std::uint32_t> alpha(static_cast<size_t>(instance.pair_count()), 0);
    for (auto& a : alpha) a = static_cast<std::uint32_t>(rng.uniform_int(q));
    auto c = propagate_code(instance, alpha, q);
    std::vector<std::uint32_t> sigma;
    for (FlowId p = 1; p <= instance.flow_count(); ++p)
      sigma.push_back(static_cast<std::uint32_t>(rng.uniform_int(q)));

    // local recursion
    std::vector<std::uint32_t> symbols(instance.edges().size(), 0);
    for (EdgeId e : edges_in_topological_order(instance)) {
      const Edge& ed = instance.edges()[static_cast<size_t>(e)];
      if (auto p = instance.source_flow(ed.from)) {
        symbols[static_cast<size_t>(e)] = sigma[static_cast<size_t>(*p - 1)];
        continue;
      }
      std::uint32_t sym = 0;
      for (int pid : instance.pairs_into(e))
        sym = field.add(sym, field.mul(alpha[static_cast<size_t>(pid)],
                                       symbols[(size_t)instance.edge_pairs()[(size_t)pid].in]));
      symbols[static_cast<size_t>(e)] = sym;
    }
    // global form
    for (size_t e = 0; e < symbols.size(); ++e) {
      std::uint32_t dot = 0;
      for (size_t p = 0; p < sigma.size(); ++p)
        dot = field.add(dot, field.mul(c[e][p], sigma[p]));
      CHECK(symbols[e] == dot);
    }
  }
}

TEST_CASE("code export lists q, vectors and nonzero coefficients") {
  NetworkInstance fig3 = builtin("fig3");
  Demands demands = Demands::from_instance(fig3);
  SolveOutcome outcome = fig3_solution();
  Rng rng(31);
  LinearCode code = sample_code(fig3, demands, outcome.solution, 5, rng, 32);
  std::string doc = write_code(fig3, code);
  CHECK(doc.find("\"q\": 5") != std::string::npos);
  CHECK(doc.find("\"coeffs\"") != std::string::npos);
  CHECK(doc.find("\"alpha\"") != std::string::npos);
}
