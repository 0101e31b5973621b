// Usable under the terms in the Apache License, Version 2.0.

#pragma once

#include <cstdint>

#include "sckf/types.hpp"

namespace sckf {

/// SplitMix64 step; used to derive independent sub-seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seeded 64-bit hash of a byte string. For a fixed seed, distinct 8-byte
/// inputs map to distinct outputs.
std::uint64_t hash64(Bytes data, std::uint64_t seed) noexcept;

/// Maps a uniform 64-bit value onto [0, range) without division.
inline std::uint64_t fastrange64(std::uint64_t hash, std::uint64_t range) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(hash) * range) >> 64);
}

/// The three hash functions (phi, h1, h2) are drawn from sub-seeds of the
/// master seed.
struct HashSeeds {
  std::uint64_t phi;
  std::uint64_t h1;
  std::uint64_t h2;

  static HashSeeds derive(std::uint64_t master) noexcept {
    return {splitmix64(master ^ 0x7068690000000001ULL),
            splitmix64(master ^ 0x6831000000000002ULL),
            splitmix64(master ^ 0x6832000000000003ULL)};
  }
};

struct HashedElement {
  CellIndex h1;
  Fingerprint fp;
};

/// h1(x) uniform over [0, N); fp(x) uniform over [1, 2^f - 1].
HashedElement hash_element(Bytes x, const FilterParams& params) noexcept;
HashedElement hash_element(Bytes x, const HashSeeds& seeds, unsigned f,
                           std::uint64_t total_cells) noexcept;

/// h2 for the original variant: maps a fingerprint into [1, N - 1].
std::uint64_t h2_of(Fingerprint fp, std::uint64_t seed_h2,
                    std::uint64_t total_cells) noexcept;

}  // namespace sckf
