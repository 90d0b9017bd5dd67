#pragma once

#include <map>

#include "netmix/gf.hpp"
#include "netmix/mixing.hpp"
#include "netmix/rng.hpp"

namespace netmix {

// A scalar linear network code realizing a feasible mixing solution: local
// coefficients per adjacent edge pair, global coding vectors per edge, and
// per-terminal decoding matrices.
struct LinearCode {
  std::uint32_t q = 0;
  std::vector<std::uint32_t> alpha;             // per edge pair
  std::vector<std::vector<std::uint32_t>> c;    // per edge: P coefficients
  std::map<int, std::vector<std::vector<std::uint32_t>>> a_t;  // terminal idx -> P_t x P_t
};

// Uniform local coefficients on pairs with beta = 1, zero elsewhere (zero is
// allowed where beta = 1). Throws Error(field_too_small) when q <= T.
std::vector<std::uint32_t> assign_coefficients(const NetworkInstance& instance,
                                               const std::vector<std::uint8_t>& beta,
                                               std::uint32_t q, int terminal_count, Rng& rng);

// alpha = 1 on every consecutive pair of a delivered flow path, 0 elsewhere.
// A deterministic witness; decodable only when no edge mixes two selected
// paths, so callers assert decodability rather than assume it.
std::vector<std::uint32_t> identity_routing_coefficients(const NetworkInstance& instance,
                                                         const std::vector<std::uint8_t>& beta);

// Global coding vectors in topological order: unit vectors on source edges,
// alpha-weighted sums elsewhere.
std::vector<std::vector<std::uint32_t>> propagate_code(const NetworkInstance& instance,
                                                       const std::vector<std::uint32_t>& alpha,
                                                       std::uint32_t q);

// Decoding matrix per terminal: one row per delivered flow path (ascending
// flow id), columns the demanded flows ascending, entries from the path's
// last edge's coding vector.
std::map<int, std::vector<std::vector<std::uint32_t>>> terminal_matrices(
    const NetworkInstance& instance, const Demands& demands,
    const std::vector<std::vector<std::uint64_t>>& f,
    const std::vector<std::vector<std::uint32_t>>& c);

// True iff every terminal matrix is nonsingular over GF(q) and no used
// terminal in-edge carries a nonzero coefficient on an extraneous flow.
bool verify_decodable(const NetworkInstance& instance, const Demands& demands,
                      const std::vector<std::vector<std::uint32_t>>& c,
                      const std::vector<std::vector<std::uint64_t>>& f, std::uint32_t q);

// Draws coefficient assignments until one is decodable. Throws
// Error(no_decodable_code) after max_tries (the message reports the count).
LinearCode sample_code(const NetworkInstance& instance, const Demands& demands,
                       const MixingSolution& solution, std::uint32_t q, Rng& rng,
                       int max_tries = 32);

struct RoundtripResult {
  std::vector<std::uint32_t> edge_symbols;  // per edge
  // terminal index -> decoded symbol per demanded flow (ascending flow id)
  std::map<int, std::vector<std::uint32_t>> decoded;
};

// Simulates symbol transmission edge by edge via the local recursion and
// decodes at each terminal by solving A_t s = received.
RoundtripResult roundtrip(const NetworkInstance& instance, const Demands& demands,
                          const MixingSolution& solution, const LinearCode& code,
                          const std::vector<std::uint32_t>& source_symbols);

}  // namespace netmix
