#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sphlrd {

using Rng = std::mt19937_64;

/// Counter-style stream derivation: mixes a master seed with a key path
/// (replication, scale, order, ...) through SplitMix64 so that every work
/// item owns an independent, reproducible engine.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  for (auto k : keys) h = mix(h ^ mix(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  return Rng(derive_seed(master, keys));
}

// Stream-family tags so unrelated consumers of one master seed never collide.
inline constexpr std::uint64_t kStreamInnovation = 1;
inline constexpr std::uint64_t kStreamPole = 2;
inline constexpr std::uint64_t kStreamCandidates = 3;
inline constexpr std::uint64_t kStreamPlacement = 4;

}  // namespace sphlrd
