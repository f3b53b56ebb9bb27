// Seeding and uniform draws for reproducible replicate streams.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "trapwalk/lattice.hpp"

namespace trapwalk {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replicate `index` under `master`: splitmix64(splitmix64(master) ^ index).
inline std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ index);
}

inline Rng replicate_rng(std::uint64_t master, std::uint64_t index) { return Rng(replicate_seed(master, index)); }

/// Uniform double in [0,1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Unbiased uniform integer in [0, n) for 0 < n <= 2^126, by rejection.
inline Coord uniform_below(Rng& rng, Coord n) {
  if (n <= 0) throw std::invalid_argument("uniform_below needs a positive bound");
  using U = unsigned __int128;
  const U un = static_cast<U>(n);
  const U limit = ~U(0) - (~U(0) % un);
  for (;;) {
    U r = (static_cast<U>(rng()) << 64) | static_cast<U>(rng());
    if (r < limit) return static_cast<Coord>(r % un);
  }
}

/// Uniform integer in [lo, hi].
inline Coord uniform_between(Rng& rng, Coord lo, Coord hi) {
  if (hi < lo) throw std::invalid_argument("uniform_between needs lo <= hi");
  return lo + uniform_below(rng, checked_add(checked_sub(hi, lo), 1));
}

}  // namespace trapwalk
