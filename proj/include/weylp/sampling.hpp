#pragma once

#include <cstdint>
#include <random>

#include "weylp/rational.hpp"

namespace weylp {

/// Seeded source of random exact points.
///
/// Every trial gets its own stream derived from (seed, trial), so results do
/// not depend on how trials are scheduled across threads.
class Sampler {
 public:
  static constexpr long kMaxNumDen = 10000;

  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  Sampler(std::uint64_t seed, std::uint64_t stream) : rng_(mix(seed, stream)) {}

  /// Positive rational n/d with n, d uniform in [1, 10^4].
  Rational positive() { return Rational(uniform(1, kMaxNumDen), uniform(1, kMaxNumDen)); }
  /// Positive rational with smaller numerator and denominator.
  Rational small_positive(long bound) { return Rational(uniform(1, bound), uniform(1, bound)); }
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 rng_;
};

inline constexpr int kPoleRetries = 10;

}  // namespace weylp
