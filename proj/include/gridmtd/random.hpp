#pragma once

#include <cstdint>
#include <random>

namespace gridmtd {

/// Mixes a tuple of indices into a 64-bit value (splitmix64 finalizer).
/// Used to derive independent, reproducible RNG streams per trial so that
/// campaigns can be sharded without coordinating generator state.
inline std::uint64_t mix_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename... Rest>
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t next, Rest... rest) {
  return mix_seed(mix_seed(seed) ^ next, rest...);
}

template <typename... Idx>
std::mt19937_64 make_rng(std::uint64_t seed, Idx... idx) {
  return std::mt19937_64(mix_seed(seed, static_cast<std::uint64_t>(idx)...));
}

}  // namespace gridmtd
