#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "slcert/point.hpp"

namespace slcert {

/// splitmix64 finalizer of (seed, index); used to give every partition of a
/// sampling run its own stream.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// mt19937_64 with distribution code written out, so draws do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform in the disc |z| < radius.
  cplx in_disc(double radius) {
    return std::polar(radius * std::sqrt(uniform()), 2.0 * std::numbers::pi * uniform());
  }

  /// Uniform in the square |Re z|, |Im z| <= half.
  cplx in_square(double half) { return {uniform(-half, half), uniform(-half, half)}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace slcert
