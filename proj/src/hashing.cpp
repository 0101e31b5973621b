// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/hashing.hpp"

#include <bit>
#include <cstring>

namespace sckf {
namespace {

constexpr std::uint64_t kC1 = 0x87C37B91114253D5ULL;
constexpr std::uint64_t kC2 = 0x4CF5AD432745937FULL;

constexpr std::uint64_t fmix64(std::uint64_t k) noexcept {
  k ^= k >> 33;
  k *= 0xFF51AFD7ED558CCDULL;
  k ^= k >> 33;
  k *= 0xC4CEB9FE1A85EC53ULL;
  k ^= k >> 33;
  return k;
}

inline std::uint64_t load_le64(const std::byte* p, std::size_t n) noexcept {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    v |= std::uint64_t(std::to_integer<unsigned>(p[i])) << (8 * i);
  }
  return v;
}

inline std::uint64_t mix_lane(std::uint64_t h, std::uint64_t k) noexcept {
  k *= kC1;
  k = std::rotl(k, 31);
  k *= kC2;
  h ^= k;
  return std::rotl(h, 27) * 5 + 0x52DCE729;
}

}  // namespace

std::uint64_t hash64(Bytes data, std::uint64_t seed) noexcept {
  std::uint64_t h = fmix64(seed);
  const std::byte* p = data.data();
  std::size_t left = data.size();
  while (left >= 8) {
    h = mix_lane(h, load_le64(p, 8));
    p += 8;
    left -= 8;
  }
  if (left > 0) {
    // Length is folded in below, so zero padding cannot alias a longer input.
    h = mix_lane(h, load_le64(p, left));
  }
  return fmix64(h ^ (data.size() * kC2));
}

HashedElement hash_element(Bytes x, const HashSeeds& seeds, unsigned f,
                           std::uint64_t total_cells) noexcept {
  const std::uint64_t fp_range = (std::uint64_t{1} << f) - 1;
  const auto fp = static_cast<std::uint32_t>(hash64(x, seeds.phi) % fp_range + 1);
  const std::uint64_t g = fastrange64(hash64(x, seeds.h1), total_cells);
  return {CellIndex::from_global(g, f), Fingerprint{fp}};
}

HashedElement hash_element(Bytes x, const FilterParams& params) noexcept {
  return hash_element(x, HashSeeds::derive(params.seed), params.fingerprint_bits_f,
                      params.total_cells());
}

std::uint64_t h2_of(Fingerprint fp, std::uint64_t seed_h2,
                    std::uint64_t total_cells) noexcept {
  const auto key = encode_u64(fp.value);
  return hash64(Bytes{key.data(), 4}, seed_h2) % (total_cells - 1) + 1;
}

}  // namespace sckf
