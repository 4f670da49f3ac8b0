#pragma once

#include <cstdint>

namespace tsens {

// Counter-based generator: splitmix64 finalizer applied to a per-stream base
// plus a Weyl increment of the counter. Stateless per draw, so the value of
// draw #i never depends on evaluation order -- ensembles are bit-reproducible
// regardless of thread count or scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed ^ mix(stream + 0x655F455351554944ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(base_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  // [0, 1), 53-bit resolution
  double uniform01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // [-1, 1)
  double uniform_pm1(std::uint64_t counter) const {
    return 2.0 * uniform01(counter) - 1.0;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t base_;
};

// Stream ids used across the library so that independent purposes never
// share a counter sequence.
namespace rng_stream {
inline constexpr std::uint64_t samples = 1;     // primary sample matrix A
inline constexpr std::uint64_t pair = 2;        // pick-freeze mate matrix B
inline constexpr std::uint64_t nominals = 3;    // fixed-parameter nominals
inline constexpr std::uint64_t evals = 4;       // error-evaluation draws
inline constexpr std::uint64_t bootstrap = 5;   // bootstrap resampling
inline constexpr std::uint64_t lanczos = 6;     // Lanczos start vector
inline constexpr std::uint64_t holdout = 7;     // validation draws in tests
}  // namespace rng_stream

}  // namespace tsens
