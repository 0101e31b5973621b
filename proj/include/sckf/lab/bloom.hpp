// Usable under the terms in the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <vector>

#include "sckf/types.hpp"

namespace sckf::lab {

/// Sizing of a Bloom baseline: `bits` cells, k probes, n elements.
struct BloomBaseline {
  std::uint64_t bits = 0;
  unsigned k = 1;
  std::uint64_t n = 0;
};

/// Plain Bloom filter used as a space/false-positive baseline. The k probe
/// positions come from double hashing two seeded 64-bit hashes.
class BloomFilter {
 public:
  /// Throws std::invalid_argument if bits == 0 or k == 0.
  BloomFilter(std::uint64_t bits, unsigned k, std::uint64_t seed);

  /// k minimizing the false-positive rate: round(bits ln 2 / n), at least 1.
  static unsigned optimal_k(std::uint64_t bits, std::uint64_t n);

  void insert(Bytes x);
  bool contains(Bytes x) const;
  void insert(std::uint64_t key) { insert(Bytes{encode_u64(key)}); }
  bool contains(std::uint64_t key) const { return contains(Bytes{encode_u64(key)}); }

  BloomBaseline baseline(std::uint64_t n) const noexcept { return {bits_, k_, n}; }
  std::uint64_t bits() const noexcept { return bits_; }
  unsigned k() const noexcept { return k_; }

 private:
  std::uint64_t bits_;
  unsigned k_;
  std::uint64_t seed_a_;
  std::uint64_t seed_b_;
  std::vector<std::uint64_t> words_;
};

}  // namespace sckf::lab
