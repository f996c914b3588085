#pragma once

#include <cstdint>
#include <random>

#include "egs/special.hpp"

namespace egs::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent engine per (seed, stream) pair, so trials never share generator state.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL)));
}

/// Uniform on the open interval (0, 1) from the top 53 bits; identical on every platform.
inline double uniform(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53; }

inline double standard_normal(std::mt19937_64& g) { return special::normal_quantile(uniform(g)); }

/// Integer in [lo, hi].
inline std::uint64_t uniform_int(std::mt19937_64& g, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return lo + static_cast<std::uint64_t>(uniform(g) * static_cast<double>(span)) % span;
}

}  // namespace egs::rng
