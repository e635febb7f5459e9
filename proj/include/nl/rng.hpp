#pragma once

#include <cstdint>
#include <cmath>

namespace nl {

/// Counter-based deterministic random generator.
///
/// Every draw is a pure function of (seed, counter), so streams can be
/// split by handing out disjoint counter ranges and results do not depend
/// on platform or library version.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t next_u64() { return mix(seed_, counter_++); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (uses two draws).
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  /// Independent substream; offset picks one of 2^32 disjoint streams.
  Rng split(std::uint64_t stream) const {
    return Rng(mix(seed_, 0x9e3779b97f4a7c15ull ^ stream), 0);
  }

  std::uint64_t counter() const { return counter_; }

private:
  // splitmix64 finalizer applied to seed + counter*odd.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t ctr) {
    std::uint64_t z = seed + ctr * 0x9e3779b97f4a7c15ull + 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace nl
