// Usable under the terms in the Apache License, Version 2.0.
//
// Word-parallel fingerprint search. A word holds `lanes` fingerprints of f
// bits each, lane 0 in the least significant bits. One spare bit above the top
// lane (lanes * f <= 63) receives that lane's carry, so every lane's match
// signal lands inside the word.

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>

#include "sckf/types.hpp"

namespace sckf::bitmatch {

/// Sum of 2^(i*f) for i in [0, lanes): a 1 in the low bit of every lane.
struct LaneConstant {
  std::uint64_t bits = 0;
  unsigned f = 0;
  unsigned lanes = 0;

  /// 2^f * F: the carry landing bit above each lane.
  constexpr std::uint64_t carry_mask() const noexcept { return bits << f; }
};

/// Throws std::invalid_argument unless 2 <= f <= 32, lanes >= 1 and
/// lanes * f <= 63.
LaneConstant make_lane_constant(unsigned f, unsigned lanes);

/// A word interpreted as packed lanes. Bits above lanes_used * f are zero.
struct PackedWord {
  std::uint64_t word = 0;
  unsigned f = 0;
  unsigned lanes_used = 0;
};

/// r = ((q + F) ^ q ^ F) & 2^f F with q = w ^ (~value & (2^f - 1)) F. The
/// lowest set bit of r sits at (i + 1) f for the first lane i equal to value.
/// Higher bits may be spurious carries propagated from a matching lane.
/// value may be zero here (used to locate empty slots).
constexpr std::uint64_t carry_bits(std::uint64_t w, std::uint32_t value,
                                   const LaneConstant& F) noexcept {
  const std::uint64_t lane_mask = (std::uint64_t{1} << F.f) - 1;
  const std::uint64_t q = w ^ ((std::uint64_t{value} ^ lane_mask) * F.bits);
  return ((q + F.bits) ^ q ^ F.bits) & F.carry_mask();
}

/// Lane index of the first match encoded in r, if any.
constexpr std::optional<unsigned> first_lane(std::uint64_t r, unsigned f) noexcept {
  if (r == 0) {
    return std::nullopt;
  }
  const std::uint64_t lowest = r & ~(r - 1);
  return static_cast<unsigned>((std::countr_zero(lowest) - f) / f);
}

/// Smallest lane holding fp, computed without a per-lane loop.
constexpr std::optional<unsigned> find_fingerprint(std::uint64_t w, Fingerprint fp,
                                                   const LaneConstant& F) noexcept {
  return first_lane(carry_bits(w, fp.value, F), F.f);
}

/// Reference implementation: extracts and compares one lane at a time.
std::optional<unsigned> naive_find(const PackedWord& w, Fingerprint fp) noexcept;

/// Layout of one block of b slots across whole 64-bit words, floor(63/f)
/// lanes per word (fewer if b is smaller).
class BlockLayout {
 public:
  BlockLayout(unsigned f, unsigned b);

  unsigned fingerprint_bits() const noexcept { return f_; }
  unsigned block_size() const noexcept { return b_; }
  unsigned lanes_per_word() const noexcept { return lanes_; }
  unsigned words_per_block() const noexcept { return words_; }
  const LaneConstant& lane_constant() const noexcept { return constant_; }

  std::uint32_t get(std::span<const std::uint64_t> block, unsigned slot) const noexcept {
    const unsigned shift = (slot % lanes_) * f_;
    return static_cast<std::uint32_t>((block[slot / lanes_] >> shift) & mask_);
  }

  void set(std::span<std::uint64_t> block, unsigned slot, std::uint32_t value) const noexcept {
    const unsigned shift = (slot % lanes_) * f_;
    std::uint64_t& w = block[slot / lanes_];
    w = (w & ~(mask_ << shift)) | (std::uint64_t{value} << shift);
  }

  /// First slot holding fp, O(words_per_block).
  std::optional<unsigned> find(std::span<const std::uint64_t> block,
                               Fingerprint fp) const noexcept {
    for (unsigned i = 0; i < words_; ++i) {
      if (auto lane = find_fingerprint(block[i], fp, constant_)) {
        return i * lanes_ + *lane;
      }
    }
    return std::nullopt;
  }

  /// First empty slot, if the block is not full.
  std::optional<unsigned> find_empty(std::span<const std::uint64_t> block) const noexcept {
    for (unsigned i = 0; i < words_; ++i) {
      if (auto lane = first_lane(carry_bits(block[i], 0, constant_), f_)) {
        const unsigned slot = i * lanes_ + *lane;
        // Unused lanes of the last word read as zero; they are not slots.
        return slot < b_ ? std::optional<unsigned>(slot) : std::nullopt;
      }
    }
    return std::nullopt;
  }

  /// Clears the first copy of fp. Returns false if absent.
  bool remove(std::span<std::uint64_t> block, Fingerprint fp) const noexcept {
    if (auto slot = find(block, fp)) {
      set(block, *slot, 0);
      return true;
    }
    return false;
  }

  unsigned occupancy(std::span<const std::uint64_t> block) const noexcept;

 private:
  unsigned f_;
  unsigned b_;
  unsigned lanes_;
  unsigned words_;
  std::uint64_t mask_;
  LaneConstant constant_;
};

}  // namespace sckf::bitmatch
