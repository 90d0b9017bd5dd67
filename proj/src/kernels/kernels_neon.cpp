#if defined(__aarch64__)

#include <arm_neon.h>

#include "netmix/kernels.hpp"

namespace netmix::kernels {

void unsat_update_neon(std::span<double> q, std::size_t chosen, double a, double b) {
  const double d = (static_cast<double>(q.size()) - 1.0) + a / b;
  const double keep = 1.0 - b;
  const double cb = b / d;
  const double ca = a / d;
  const double old_chosen = q[chosen];

  const float64x2_t vkeep = vdupq_n_f64(keep);
  const float64x2_t vcb = vdupq_n_f64(cb);
  std::size_t i = 0;
  for (; i + 2 <= q.size(); i += 2) {
    float64x2_t v = vld1q_f64(q.data() + i);
    v = vaddq_f64(vmulq_f64(vkeep, v), vcb);
    vst1q_f64(q.data() + i, v);
  }
  for (; i < q.size(); ++i) q[i] = keep * q[i] + cb;
  q[chosen] = keep * old_chosen + ca;
}

double block_sum_neon(std::span<const double> q) {
  // Two vector registers give the same four strided lanes as the contract.
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= q.size(); i += 4) {
    acc01 = vaddq_f64(acc01, vld1q_f64(q.data() + i));
    acc23 = vaddq_f64(acc23, vld1q_f64(q.data() + i + 2));
  }
  double total = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
                 (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (; i < q.size(); ++i) total += q[i];
  return total;
}

}  // namespace netmix::kernels

#endif
