#include "netmix/gf.hpp"

namespace netmix {

Gf::Gf(std::uint32_t q) : q_(q) {
  if (!is_prime(q))
    throw Error(ErrorCode::field_not_prime, "field order " + std::to_string(q) +
                                                " is not prime");
}

bool Gf::is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

std::uint32_t Gf::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::bad_config, "zero has no inverse");
  // Fermat: a^(q-2)
  std::uint64_t base = a % q_, result = 1, e = q_ - 2;
  while (e) {
    if (e & 1) result = result * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

int gf_rank(const Gf& field, std::vector<std::vector<std::uint32_t>> m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    std::uint32_t inv = field.inv(m[rank][col]);
    for (size_t c = col; c < cols; ++c) m[rank][c] = field.mul(m[rank][c], inv);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      std::uint32_t factor = m[r][col];
      for (size_t c = col; c < cols; ++c)
        m[r][c] = field.sub(m[r][c], field.mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

bool gf_solve(const Gf& field, std::vector<std::vector<std::uint32_t>> m,
              std::vector<std::uint32_t> rhs, std::vector<std::uint32_t>* solution) {
  const size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    std::uint32_t inv = field.inv(m[col][col]);
    for (size_t c = col; c < n; ++c) m[col][c] = field.mul(m[col][c], inv);
    rhs[col] = field.mul(rhs[col], inv);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      std::uint32_t factor = m[r][col];
      for (size_t c = col; c < n; ++c)
        m[r][c] = field.sub(m[r][c], field.mul(factor, m[col][c]));
      rhs[r] = field.sub(rhs[r], field.mul(factor, rhs[col]));
    }
  }
  *solution = std::move(rhs);
  return true;
}

}  // namespace netmix
