#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "netmix/kernels.hpp"

namespace netmix::kernels {

void unsat_update_avx2(std::span<double> q, std::size_t chosen, double a, double b) {
  const double d = (static_cast<double>(q.size()) - 1.0) + a / b;
  const double keep = 1.0 - b;
  const double cb = b / d;
  const double ca = a / d;
  const double old_chosen = q[chosen];

  const __m256d vkeep = _mm256_set1_pd(keep);
  const __m256d vcb = _mm256_set1_pd(cb);
  std::size_t i = 0;
  for (; i + 4 <= q.size(); i += 4) {
    __m256d v = _mm256_loadu_pd(q.data() + i);
    v = _mm256_add_pd(_mm256_mul_pd(vkeep, v), vcb);
    _mm256_storeu_pd(q.data() + i, v);
  }
  for (; i < q.size(); ++i) q[i] = keep * q[i] + cb;
  q[chosen] = keep * old_chosen + ca;
}

double block_sum_avx2(std::span<const double> q) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= q.size(); i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(q.data() + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < q.size(); ++i) total += q[i];
  return total;
}

}  // namespace netmix::kernels

#endif
