#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace hofj {

// 64-bit finalizer used for seed scrambling and stream derivation.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream backed by std::mt19937_64 (bit-stable across
/// platforms by the standard). All draws are derived from raw engine output;
/// the std <random> distributions are avoided because they are not portable.
///
/// Stream semantics: stream k of root seed s is seeded with
/// splitmix64(s) ^ splitmix64(k + 1). Each stream must be owned by exactly
/// one logical walker/worker.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static RandomStream derive(std::uint64_t root_seed, std::uint64_t stream_index) {
    RandomStream s(0);
    s.engine_.seed(splitmix64(root_seed) ^ splitmix64(stream_index + 1));
    return s;
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hofj
