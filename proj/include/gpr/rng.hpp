#pragma once

#include <cmath>
#include <cstdint>

namespace gpr {

/// Counter-based pseudo-random stream.
///
/// The n-th raw output of a stream with key k is mix64(k + n * GOLDEN),
/// where mix64 is the SplitMix64 finalizer. A stream is a pure function
/// of (key, counter), so substreams for matrix j, restart r or trial t
/// are derived by folding the index into the key; no generator state is
/// shared between substreams and results do not depend on call order or
/// scheduling. Gaussians use the Marsaglia polar method (sqrt/log only,
/// no trigonometry) to keep outputs stable across libm implementations.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : state_(key) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Independent stream for (seed, index).
  static CounterRng substream(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(mix64(seed ^ mix64(index ^ 0x51ed2700a1b3c64dull)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (-1, 1).
  double next_symmetric() { return 2.0 * next_double() - 1.0; }

  /// Standard normal.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = next_symmetric();
      v = next_symmetric();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gpr
