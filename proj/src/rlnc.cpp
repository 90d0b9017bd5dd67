#include "netmix/rlnc.hpp"

#include <algorithm>

namespace netmix {

std::vector<std::uint32_t> assign_coefficients(const NetworkInstance& /*instance*/,
                                               const std::vector<std::uint8_t>& beta,
                                               std::uint32_t q, int terminal_count, Rng& rng) {
  Gf field(q);  // rejects non-prime q
  if (q <= static_cast<std::uint32_t>(terminal_count))
    throw Error(ErrorCode::field_too_small,
                "field size " + std::to_string(q) + " must exceed the terminal count " +
                    std::to_string(terminal_count));
  std::vector<std::uint32_t> alpha(beta.size(), 0);
  for (size_t pid = 0; pid < beta.size(); ++pid)
    if (beta[pid]) alpha[pid] = static_cast<std::uint32_t>(rng.uniform_int(q));
  return alpha;
}

std::vector<std::uint32_t> identity_routing_coefficients(
    const NetworkInstance& instance, const std::vector<std::uint8_t>& beta) {
  (void)instance;
  std::vector<std::uint32_t> alpha(beta.size(), 0);
  for (size_t pid = 0; pid < beta.size(); ++pid) alpha[pid] = beta[pid] ? 1 : 0;
  return alpha;
}

std::vector<std::vector<std::uint32_t>> propagate_code(const NetworkInstance& instance,
                                                       const std::vector<std::uint32_t>& alpha,
                                                       std::uint32_t q) {
  Gf field(q);
  const size_t P = static_cast<size_t>(instance.flow_count());
  std::vector<std::vector<std::uint32_t>> c(instance.edges().size(),
                                            std::vector<std::uint32_t>(P, 0));
  for (EdgeId e : edges_in_topological_order(instance)) {
    const Edge& ed = instance.edges()[static_cast<size_t>(e)];
    if (auto p = instance.source_flow(ed.from)) {
      c[static_cast<size_t>(e)][static_cast<size_t>(*p - 1)] = 1;
      continue;
    }
    std::vector<std::uint32_t>& out = c[static_cast<size_t>(e)];
    for (int pid : instance.pairs_into(e)) {
      std::uint32_t a = alpha[static_cast<size_t>(pid)];
      if (a == 0) continue;
      const std::vector<std::uint32_t>& in =
          c[static_cast<size_t>(instance.edge_pairs()[(size_t)pid].in)];
      for (size_t i = 0; i < P; ++i) out[i] = field.add(out[i], field.mul(a, in[i]));
    }
  }
  return c;
}

namespace {

// Last edge of the delivered flow path of p into terminal ti, or -1.
EdgeId last_edge(const NetworkInstance& instance, const Demands& demands,
                 const std::vector<std::vector<std::uint64_t>>& f, int ti, FlowId p) {
  const std::uint64_t bit = 1ULL << (p - 1);
  for (EdgeId e : instance.in_edges(demands.entries[(size_t)ti].terminal))
    if (f[static_cast<size_t>(e)][(size_t)ti] & bit) return e;
  return -1;
}

}  // namespace

std::map<int, std::vector<std::vector<std::uint32_t>>> terminal_matrices(
    const NetworkInstance& instance, const Demands& demands,
    const std::vector<std::vector<std::uint64_t>>& f,
    const std::vector<std::vector<std::uint32_t>>& c) {
  std::map<int, std::vector<std::vector<std::uint32_t>>> result;
  for (int ti = 0; ti < demands.terminal_count(); ++ti) {
    std::vector<FlowId> flows = mask_flows(demands.effective(ti));
    std::vector<std::vector<std::uint32_t>> m;
    for (FlowId p : flows) {
      EdgeId e = last_edge(instance, demands, f, ti, p);
      if (e < 0) continue;
      std::vector<std::uint32_t> row;
      for (FlowId col : flows) row.push_back(c[static_cast<size_t>(e)][(size_t)(col - 1)]);
      m.push_back(std::move(row));
    }
    result[ti] = std::move(m);
  }
  return result;
}

bool verify_decodable(const NetworkInstance& instance, const Demands& demands,
                      const std::vector<std::vector<std::uint32_t>>& c,
                      const std::vector<std::vector<std::uint64_t>>& f, std::uint32_t q) {
  Gf field(q);
  for (int ti = 0; ti < demands.terminal_count(); ++ti) {
    const Demands::Entry& entry = demands.entries[(size_t)ti];
    std::vector<FlowId> flows = mask_flows(entry.expanded);
    for (FlowId p : flows) {
      EdgeId e = last_edge(instance, demands, f, ti, p);
      if (e < 0) return false;  // no delivered path for a demanded flow
      for (FlowId extraneous = 1; extraneous <= instance.flow_count(); ++extraneous) {
        if (entry.expanded & (1ULL << (extraneous - 1))) continue;
        if (c[static_cast<size_t>(e)][(size_t)(extraneous - 1)] != 0) return false;
      }
    }
  }
  auto mats = terminal_matrices(instance, demands, f, c);
  for (const auto& [ti, m] : mats) {
    size_t want = mask_flows(demands.effective(ti)).size();
    if (m.size() != want) return false;
    if (gf_rank(field, m) != static_cast<int>(want)) return false;
  }
  return true;
}

LinearCode sample_code(const NetworkInstance& instance, const Demands& demands,
                       const MixingSolution& solution, std::uint32_t q, Rng& rng,
                       int max_tries) {
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    std::vector<std::uint32_t> alpha =
        assign_coefficients(instance, solution.beta, q, demands.terminal_count(), rng);
    std::vector<std::vector<std::uint32_t>> c = propagate_code(instance, alpha, q);
    if (verify_decodable(instance, demands, c, solution.f, q)) {
      LinearCode code;
      code.q = q;
      code.alpha = std::move(alpha);
      code.c = std::move(c);
      code.a_t = terminal_matrices(instance, demands, solution.f, code.c);
      return code;
    }
  }
  throw Error(ErrorCode::no_decodable_code,
              "no decodable coefficient assignment in " + std::to_string(max_tries) +
                  " trials");
}

RoundtripResult roundtrip(const NetworkInstance& instance, const Demands& demands,
                          const MixingSolution& solution, const LinearCode& code,
                          const std::vector<std::uint32_t>& source_symbols) {
  Gf field(code.q);
  RoundtripResult result;
  result.edge_symbols.assign(instance.edges().size(), 0);
  for (EdgeId e : edges_in_topological_order(instance)) {
    const Edge& ed = instance.edges()[static_cast<size_t>(e)];
    if (auto p = instance.source_flow(ed.from)) {
      result.edge_symbols[static_cast<size_t>(e)] = source_symbols[(size_t)(*p - 1)];
      continue;
    }
    std::uint32_t sym = 0;
    for (int pid : instance.pairs_into(e)) {
      std::uint32_t a = code.alpha[static_cast<size_t>(pid)];
      if (a == 0) continue;
      sym = field.add(
          sym, field.mul(a, result.edge_symbols[(size_t)instance.edge_pairs()[(size_t)pid].in]));
    }
    result.edge_symbols[static_cast<size_t>(e)] = sym;
  }

  for (int ti = 0; ti < demands.terminal_count(); ++ti) {
    std::vector<FlowId> flows = mask_flows(demands.effective(ti));
    std::vector<std::uint32_t> received;
    for (FlowId p : flows) {
      EdgeId e = last_edge(instance, demands, solution.f, ti, p);
      received.push_back(result.edge_symbols[static_cast<size_t>(e)]);
    }
    std::vector<std::uint32_t> decoded;
    if (!gf_solve(field, code.a_t.at(ti), received, &decoded))
      throw Error(ErrorCode::no_decodable_code, "terminal matrix is singular");
    result.decoded[ti] = std::move(decoded);
  }
  return result;
}

}  // namespace netmix
