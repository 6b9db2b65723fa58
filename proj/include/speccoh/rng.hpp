#pragma once

// Self-contained deterministic random numbers: splitmix64 seeding,
// xoshiro256++ streams, Box-Muller normals. Standard-library distributions
// are implementation-defined, so they are avoided; output depends only on
// the seed, never on the platform's <random>.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace speccoh {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stateless per-cell seed: replicate m at grid index l always gets the same
// stream regardless of scheduling.
inline std::uint64_t child_seed(std::uint64_t base, std::uint64_t replicate, std::uint64_t cell) {
  std::uint64_t s = base;
  (void)splitmix64(s);
  s ^= 0x9E3779B97F4A7C15ULL * (replicate + 1);
  (void)splitmix64(s);
  s ^= 0xD1B54A32D192ED03ULL * (cell + 1);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in (0, 1]; never zero, so log() below is safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = next_unit();
    const double v = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Standard complex Gaussian with E[z conj(z)] = 1: real and imaginary
  // parts independent, each with variance 1/2.
  std::complex<double> next_complex_normal() {
    constexpr double half = 0.70710678118654752440;  // 1/sqrt(2)
    const double re = next_normal();
    const double im = next_normal();
    return {half * re, half * im};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4]{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace speccoh
