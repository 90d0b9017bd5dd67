#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Inner-loop kernels for the CFL distribution update. Scalar reference and
// SIMD variants implement identical arithmetic (same operation order, no FMA
// contraction) and are required to produce bit-identical results; the
// equivalence tests assert that. Dispatch picks the widest variant the CPU
// supports at startup.
namespace netmix::kernels {

// Unsatisfied-branch distribution update:
//   q[i]      <- (1-b) q[i] + b / d      for i != chosen
//   q[chosen] <- (1-b) q[chosen] + a / d
// with d = (n - 1) + a/b. Preserves total mass exactly in exact arithmetic
// since a + (n-1) b = b (n - 1 + a/b).
void unsat_update(std::span<double> q, std::size_t chosen, double a, double b);

// Fixed-order reduction: four strided lane accumulators combined as
// ((l0+l1)+(l2+l3)), tail added serially. The order is the contract; every
// variant reproduces it bit-exactly.
double block_sum(std::span<const double> q);

std::string_view active_isa();  // "scalar", "avx2" or "neon"

// Per-variant entry points for the equivalence tests.
void unsat_update_scalar(std::span<double> q, std::size_t chosen, double a, double b);
double block_sum_scalar(std::span<const double> q);
#if defined(__x86_64__) || defined(__i386__)
bool cpu_has_avx2();
void unsat_update_avx2(std::span<double> q, std::size_t chosen, double a, double b);
double block_sum_avx2(std::span<const double> q);
#endif
#if defined(__aarch64__)
void unsat_update_neon(std::span<double> q, std::size_t chosen, double a, double b);
double block_sum_neon(std::span<const double> q);
#endif

}  // namespace netmix::kernels
