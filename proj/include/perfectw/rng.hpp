#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "perfectw/common.hpp"

namespace perfectw {

/// SplitMix64 stream. Used wherever the library needs reproducible randomness
/// (Fock product-state sampling, synthesis multi-start seeds) so results do not
/// depend on standard-library distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller on the raw bit stream.
  double gaussian() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  /// Child seed for stream `index` derived from `root` (splitmix-style
  /// derivation; deterministic and collision-resistant for practical counts).
  static std::uint64_t derive(std::uint64_t root, std::uint64_t index) {
    SplitMix64 g(root + 0x9e3779b97f4a7c15ULL * (index + 1));
    return g.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace perfectw
