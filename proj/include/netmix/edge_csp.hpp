#pragma once

#include <memory>

#include "netmix/restarts.hpp"

namespace netmix {

// Admissible (f, x) pairs for one edge under its local constraints: binary
// ranges, f <= x per demanded flow, at most one demanded flow per terminal,
// unit vectors on source edges, no extraneous flows on terminal in-edges.
struct EdgeDomain {
  struct Entry {
    std::vector<std::uint64_t> f;  // per terminal index: flow mask
    MixVector x;
  };
  EdgeId edge = -1;
  std::vector<Entry> entries;
};

// Complete, deterministically ordered enumeration of the local domain.
// Throws Error(domain_explosion) past `cap`.
EdgeDomain enumerate_domain(const NetworkInstance& instance, const Demands& demands,
                            EdgeId edge, int cap = 4096);

// Flow-conservation clause at a node, over the f-values of its incident
// edges (full per-edge table, per terminal index).
bool phi_f(const NetworkInstance& instance, const Demands& demands, NodeId node,
           const std::vector<std::vector<std::uint64_t>>& f);

// Existential-beta clause for an edge (i,j), i not a source: is x_ij an OR of
// some subset of the incoming vectors? The greedy support-inclusion test is
// exact: any valid subset contains only vectors with support inside x_ij, and
// taking all of them maximizes the OR.
bool phi_x(const NetworkInstance& instance, EdgeId edge, MixVector x_edge,
           const std::vector<MixVector>& x);

struct ClauseRef {
  enum class Kind { flow_conservation, mixing_consistency } kind;
  NodeId node = 0;   // for flow_conservation
  EdgeId edge = -1;  // for mixing_consistency
};

// The clause partition of an edge: conservation at both endpoints, its own
// mixing-consistency clause (absent when the tail is a source) and those of
// the head's out-edges.
std::vector<ClauseRef> clause_partition(const NetworkInstance& instance, EdgeId edge);

class EdgeCsp : public ClauseSystem {
 public:
  EdgeCsp(const NetworkInstance& instance, Demands demands, std::vector<EdgeDomain> domains);

  int variable_count() const override { return static_cast<int>(domains_.size()); }
  int domain_size(int variable) const override {
    return static_cast<int>(domains_[(size_t)variable].entries.size());
  }
  int clause_count() const override { return static_cast<int>(clauses_.size()); }
  void begin_assignment(std::span<const int> assignment) override;
  bool clause(int k, std::span<const int> assignment) const override;
  std::span<const int> participating(int variable) const override;

  const std::vector<EdgeDomain>& domains() const { return domains_; }
  const std::vector<ClauseRef>& clauses() const { return clauses_; }
  const Demands& demands() const { return demands_; }
  // Assembles (z, f, x, beta) from a satisfying assignment; beta is the
  // greedy support-inclusion witness, which propagation reproduces.
  MixingSolution assemble(std::span<const int> assignment) const;

 private:
  const NetworkInstance& instance_;
  Demands demands_;
  std::vector<EdgeDomain> domains_;
  std::vector<ClauseRef> clauses_;
  std::vector<std::vector<int>> participation_;
  // per-iteration caches
  std::vector<std::vector<std::uint64_t>> f_;
  std::vector<MixVector> x_;
  std::vector<char> values_;
};

// One edge-based CFL run. Any local domain coming up empty proves the mixing
// problem infeasible (status "infeasible").
CflSolve solve_edge_cfl(const NetworkInstance& instance, const Demands& demands,
                        const CflParams& params, bool record_choices = false,
                        int domain_cap = 4096);

RestartOutcome edge_restart_loop(const NetworkInstance& instance, const Demands& demands,
                                 const CflParams& params, int restarts, int domain_cap = 4096);

}  // namespace netmix
