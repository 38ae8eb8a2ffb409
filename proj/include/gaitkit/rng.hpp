#pragma once

// Deterministic random number generation, "gaitkit rng v1".
//
// Engine: std::mt19937_64, whose output sequence is pinned by the C++
// standard. Standard-library *distributions* are not portable across
// implementations, so every sampling routine here is written out by hand.
// Integer and uniform-double draws (and everything built on them: shuffles,
// fold deals, null decisions) are bit-portable across conforming
// implementations; normal() goes through libm's log/cos and is pinned per
// math library. Within one build, every seeded run is bit-identical.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gaitkit {

using Rng = std::mt19937_64;

/// splitmix64 mixing step; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a stream seed from a base seed and one or more indices.
inline std::uint64_t derive_seed(std::uint64_t base) { return mix_seed(base); }

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, Rest... rest) {
  return derive_seed(mix_seed(base ^ mix_seed(index + 0x517cc1b727220a95ULL)), rest...);
}

/// Uniform double in [0, 1), 53 random bits.
inline double uniform_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_double(rng);
}

/// Uniform integer in [0, n). Fixed-point multiply; n must be > 0.
inline std::uint64_t bounded_uint(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

/// Standard normal deviate via Box-Muller (two engine draws per sample).
inline double normal(Rng& rng) {
  double u1 = 1.0 - uniform_double(rng);  // (0, 1]
  double u2 = uniform_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded_uint(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace gaitkit
