#include "asep/rng.hpp"

#include "asep/error.hpp"

#include <cmath>
#include <limits>

namespace asep {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index + 1));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) throw DomainError("exponential rate must be positive");
  return -std::log(uniform_open0()) / rate;
}

std::uint64_t Rng::geometric(double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw DomainError("geometric ratio must lie in [0, 1)");
  if (ratio == 0.0) return 0;
  // Inversion: floor(log U / log ratio) has P(>= k) = ratio^k.
  const double k = std::floor(std::log(uniform_open0()) / std::log(ratio));
  if (k >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
    return std::numeric_limits<std::uint32_t>::max();
  }
  return static_cast<std::uint64_t>(k);
}

}  // namespace asep
