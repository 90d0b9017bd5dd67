#include "netmix/kernels.hpp"

namespace netmix::kernels {

namespace {

using UpdateFn = void (*)(std::span<double>, std::size_t, double, double);
using SumFn = double (*)(std::span<const double>);

struct Dispatch {
  UpdateFn update = &unsat_update_scalar;
  SumFn sum = &block_sum_scalar;
  std::string_view isa = "scalar";

  Dispatch() {
#if defined(__x86_64__) || defined(__i386__)
    if (cpu_has_avx2()) {
      update = &unsat_update_avx2;
      sum = &block_sum_avx2;
      isa = "avx2";
    }
#elif defined(__aarch64__)
    update = &unsat_update_neon;
    sum = &block_sum_neon;
    isa = "neon";
#endif
  }
};

const Dispatch& dispatch() {
  static const Dispatch d;
  return d;
}

}  // namespace

#if defined(__x86_64__) || defined(__i386__)
bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }
#endif

void unsat_update(std::span<double> q, std::size_t chosen, double a, double b) {
  dispatch().update(q, chosen, a, b);
}

double block_sum(std::span<const double> q) { return dispatch().sum(q); }

std::string_view active_isa() { return dispatch().isa; }

}  // namespace netmix::kernels
