#include "netmix/kernels.hpp"

namespace netmix::kernels {

void unsat_update_scalar(std::span<double> q, std::size_t chosen, double a, double b) {
  const double d = (static_cast<double>(q.size()) - 1.0) + a / b;
  const double keep = 1.0 - b;
  const double cb = b / d;
  const double ca = a / d;
  const double old_chosen = q[chosen];
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = keep * q[i] + cb;
  q[chosen] = keep * old_chosen + ca;
}

double block_sum_scalar(std::span<const double> q) {
  double lane0 = 0, lane1 = 0, lane2 = 0, lane3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= q.size(); i += 4) {
    lane0 += q[i];
    lane1 += q[i + 1];
    lane2 += q[i + 2];
    lane3 += q[i + 3];
  }
  double total = (lane0 + lane1) + (lane2 + lane3);
  for (; i < q.size(); ++i) total += q[i];
  return total;
}

}  // namespace netmix::kernels
