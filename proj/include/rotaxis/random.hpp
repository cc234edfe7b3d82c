#pragma once

// Deterministic sampling. SplitMix64 (Steele, Lea & Flood 2014; the
// constants below are the published ones) drives Box-Muller normals, so a
// seed reproduces the same stream on every platform with IEEE doubles.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace rotaxis {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {rad * std::cos(th), rad * std::sin(th)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace rotaxis
