#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "netmix/network.hpp"

namespace netmix {

// Global mixing vector of one edge: which flows may contribute to its symbol.
// Packed into one word so OR-propagation and subset tests are single ops.
struct MixVector {
  std::uint64_t bits = 0;

  static MixVector unit(FlowId p) { return MixVector{1ULL << (p - 1)}; }
  bool test(FlowId p) const { return (bits >> (p - 1)) & 1; }
  void set(FlowId p) { bits |= 1ULL << (p - 1); }
  int count() const { return std::popcount(bits); }
  bool subset_of(MixVector other) const { return (bits & ~other.bits) == 0; }
  MixVector& operator|=(MixVector other) {
    bits |= other.bits;
    return *this;
  }
  friend bool operator==(MixVector a, MixVector b) { return a.bits == b.bits; }
};

// The decision tuple of the mixing problem. f[e][ti] holds, as a flow mask,
// the flows delivered to terminal ti over edge e; beta is indexed by the
// instance's adjacent-edge-pair table.
struct MixingSolution {
  std::vector<std::uint8_t> z;              // per edge
  std::vector<std::vector<std::uint64_t>> f;  // per edge, per terminal index
  std::vector<MixVector> x;                 // per edge
  std::vector<std::uint8_t> beta;           // per edge pair

  static MixingSolution empty(const NetworkInstance& instance, int terminal_count);
};

// Propagates global mixing vectors from local coefficients in topological
// order: source edges carry unit vectors, every other edge the OR of its
// beta-selected incoming vectors.
std::vector<MixVector> propagate_mixing(const NetworkInstance& instance,
                                        const std::vector<std::uint8_t>& beta);

// Terminal-purity test: no in-edge of a terminal carries a flow outside the
// terminal's (effective) demand set.
bool check_mixing_feasible(const NetworkInstance& instance, const Demands& demands,
                           const std::vector<MixVector>& x);

// Checks every constraint of the mixing problem on a complete solution,
// including consistency of the supplied x with beta via propagation. Empty
// report == feasible.
ValidationReport verify_solution(const NetworkInstance& instance, const Demands& demands,
                                 const MixingSolution& solution);

Cost solution_cost(const NetworkInstance& instance, const std::vector<std::uint8_t>& z);

}  // namespace netmix
