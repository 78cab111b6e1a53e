#pragma once

#include <cstdint>

#include "bdiv/rational.hpp"

namespace bdiv {

/// splitmix64 stream. Hand-rolled so that seeded check runs are byte-stable
/// across platforms and standard-library versions.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [lo, hi], inclusive.
  long long int_in(long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(next() % span);
  }

  bool coin() { return (next() & 1) != 0; }

  /// Positive rational p/q with p, q in [1, bound].
  Rat positive_rational(long long bound = 5) {
    return Rat(int_in(1, bound), int_in(1, bound));
  }

 private:
  std::uint64_t state_;
};

}  // namespace bdiv
