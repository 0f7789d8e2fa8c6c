// Seeding scheme. Every random object is driven by a std::mt19937_64 whose
// seed is derived from one user-facing 64-bit seed by SplitMix64 mixing of
// (seed, stream), so that sub-computations (trial i, GW sample j, ...) are
// reproducible independently of one another and of scheduling order.
#pragma once

#include <cstdint>
#include <random>

namespace lmph {

using Rng = std::mt19937_64;

/// One SplitMix64 output step applied to x.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for independent stream `stream` under master seed `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Generator for stream `stream` of master seed `seed`.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(derive_seed(seed, stream));
}

/// Uniform double in the open interval (0, 1) built from the top 53 bits.
inline double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace lmph
