#pragma once

#include <cstdint>
#include <random>

namespace netmix {

// Reproducibility contract: every random draw in this library goes through
// Rng (std::mt19937_64 plus the fixed mappings below) and every derived seed
// goes through derive_seed. These algorithms are part of the on-disk and
// cross-platform determinism guarantee and must never change.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Domain-separated seed derivation: `stream` distinguishes consumers
// (CFL variable draws, restart seeds, demand realizations, RLNC trials),
// `index` the instance within a stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (stream * 0xd1342543de82ef95ULL + index);
  std::uint64_t b = splitmix64(s);
  return b;
}

namespace seed_stream {
inline constexpr std::uint64_t cfl_variable = 1;
inline constexpr std::uint64_t restart = 2;
inline constexpr std::uint64_t demand_realization = 3;
inline constexpr std::uint64_t rlnc_trial = 4;
}  // namespace seed_stream

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1), 53-bit mantissa. Strictly below 1.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). Lemire multiply-shift with rejection.
  std::uint64_t uniform_int(std::uint64_t n) {
    std::uint64_t x = gen_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    std::uint64_t l = static_cast<std::uint64_t>(m);
    if (l < n) {
      std::uint64_t t = -n % n;
      while (l < t) {
        x = gen_();
        m = static_cast<__uint128_t>(x) * n;
        l = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace netmix
