// Usable under the terms in the Apache License, Version 2.0.
//
// Test-only oracle: a plain blocked cuckoo table over 2^f cells that stores
// fingerprints in per-cell vectors and relocates by random walk. It shares
// nothing with Filter except the (local, fingerprint) pairs it is fed.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "sckf/types.hpp"

namespace sckf::testing {

class ReferenceBlockedCuckoo {
 public:
  ReferenceBlockedCuckoo(unsigned f, unsigned b, std::uint64_t seed)
      : b_(b), cells_(std::size_t{1} << f), rng_(seed) {}

  bool insert(std::uint32_t local, Fingerprint fp) {
    const auto saved = cells_;
    std::uint32_t cell = (rng_() & 1) ? local : local ^ fp.value;
    std::uint32_t carried = fp.value;
    for (int kicks = 0; kicks < 5000; ++kicks) {
      if (cells_[cell].size() < b_) {
        cells_[cell].push_back(carried);
        return true;
      }
      const std::uint32_t other = cell ^ carried;
      if (cells_[other].size() < b_) {
        cells_[other].push_back(carried);
        return true;
      }
      // Swap with a random resident and carry it to its other cell.
      auto& residents = cells_[cell];
      std::swap(carried, residents[rng_() % residents.size()]);
      cell ^= carried;
    }
    cells_ = saved;
    return false;
  }

  bool contains(std::uint32_t local, Fingerprint fp) const {
    return holds(local, fp.value) || holds(local ^ fp.value, fp.value);
  }

  bool erase(std::uint32_t local, Fingerprint fp) {
    for (std::uint32_t cell : {local, local ^ fp.value}) {
      auto& v = cells_[cell];
      if (auto it = std::find(v.begin(), v.end(), fp.value); it != v.end()) {
        v.erase(it);
        return true;
      }
    }
    return false;
  }

 private:
  bool holds(std::uint32_t cell, std::uint32_t value) const {
    const auto& v = cells_[cell];
    return std::find(v.begin(), v.end(), value) != v.end();
  }

  unsigned b_;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::mt19937_64 rng_;
};

}  // namespace sckf::testing
