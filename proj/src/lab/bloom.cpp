// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/lab/bloom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sckf/hashing.hpp"

namespace sckf::lab {

BloomFilter::BloomFilter(std::uint64_t bits, unsigned k, std::uint64_t seed)
    : bits_(bits),
      k_(k),
      seed_a_(splitmix64(seed ^ 0xB100D00000000001ULL)),
      seed_b_(splitmix64(seed ^ 0xB100D00000000002ULL)),
      words_((bits + 63) / 64, 0) {
  if (bits == 0 || k == 0) {
    throw std::invalid_argument("bloom filter needs bits > 0 and k > 0");
  }
}

unsigned BloomFilter::optimal_k(std::uint64_t bits, std::uint64_t n) {
  const double k = std::round(static_cast<double>(bits) * std::numbers::ln2 /
                              static_cast<double>(std::max<std::uint64_t>(n, 1)));
  return static_cast<unsigned>(std::max(1.0, k));
}

void BloomFilter::insert(Bytes x) {
  const std::uint64_t a = hash64(x, seed_a_);
  const std::uint64_t step = hash64(x, seed_b_) | 1;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t bit = fastrange64(a + i * step, bits_);
    words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
}

bool BloomFilter::contains(Bytes x) const {
  const std::uint64_t a = hash64(x, seed_a_);
  const std::uint64_t step = hash64(x, seed_b_) | 1;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t bit = fastrange64(a + i * step, bits_);
    if ((words_[bit / 64] & (std::uint64_t{1} << (bit % 64))) == 0) {
      return false;
    }
  }
  return true;
}

}  // namespace sckf::lab
