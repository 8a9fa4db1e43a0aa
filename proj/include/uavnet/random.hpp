#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace uavnet {

/// SplitMix64 finalizer. Used to turn structured keys into well-mixed seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// A random stream owned by one worker at a time.
///
/// Substreams are derived from a key tuple (e.g. seed, realization index,
/// strip) and never from execution order, so parallel consumers obtain the
/// same numbers regardless of scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  static RandomStream keyed(std::initializer_list<std::uint64_t> key) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto k : key) h = mix64(h ^ mix64(k));
    return RandomStream(h);
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Exponential with unit mean.
  double exponential() { return -std::log1p(-uniform()); }

  double angle() { return 2.0 * std::numbers::pi * uniform(); }

  std::uint64_t poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace uavnet
