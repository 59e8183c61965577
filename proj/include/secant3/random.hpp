#pragma once

#include <cstdint>
#include <random>

#include "secant3/scalar.hpp"

namespace secant3 {

// mt19937_64 with hand-rolled range mapping: the std distributions are not
// specified bit-for-bit across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} - span + 1) % span;
    std::uint64_t x = next();
    while (x < limit) x = next();
    return lo + static_cast<long>(span == 0 ? x : x % span);
  }

  // Uniform in [0, 1) with 53 random bits.
  Real uniform01() { return static_cast<Real>(next() >> 11) * 0x1.0p-53L; }

  // Nonzero integer in [-bound, bound].
  long nonzero_int(long bound) {
    const long v = uniform_int(1, bound);
    return uniform_int(0, 1) ? v : -v;
  }

  // Random rational num/den with |num| <= bound, 1 <= den <= den_bound.
  Rational rational(long bound, long den_bound = 1) {
    Rational r(uniform_int(-bound, bound), uniform_int(1, den_bound));
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

// Independent stream seed for (seed, index), splitmix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace secant3
