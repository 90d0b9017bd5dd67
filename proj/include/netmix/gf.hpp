#pragma once

#include <cstdint>
#include <vector>

#include "netmix/errors.hpp"

namespace netmix {

// Prime-field arithmetic; elements are residues 0..q-1.
class Gf {
 public:
  explicit Gf(std::uint32_t q);

  std::uint32_t order() const { return q_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % q_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + q_ - b) % q_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint32_t inv(std::uint32_t a) const;

  static bool is_prime(std::uint32_t q);

 private:
  std::uint32_t q_;
};

// Row-reduces a dense matrix over GF(q); returns its rank.
int gf_rank(const Gf& field, std::vector<std::vector<std::uint32_t>> m);

// Solves the square system m * s = rhs; false when m is singular.
bool gf_solve(const Gf& field, std::vector<std::vector<std::uint32_t>> m,
              std::vector<std::uint32_t> rhs, std::vector<std::uint32_t>* solution);

}  // namespace netmix
