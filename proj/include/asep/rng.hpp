#pragma once

// Seeded random source. Draws are built from raw 64-bit engine output by
// fixed formulas, so a given seed produces the same stream on every platform
// (std:: distributions are implementation-defined and are not used).

#include <cstdint>
#include <random>

namespace asep {

/// splitmix64 finalizer; also used to derive per-replica seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `index` of a run seeded with `seed`:
/// splitmix64(seed ^ splitmix64(index + 1)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on (0, 1].
  double uniform_open0() { return 1.0 - uniform01(); }
  double exponential(double rate);
  bool bernoulli(double p) { return uniform01() < p; }
  /// P(k) = (1 - ratio) ratio^k on {0, 1, 2, ...}.
  std::uint64_t geometric(double ratio);
  /// Uniform on [0, total).
  double uniform(double total) { return uniform01() * total; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace asep
