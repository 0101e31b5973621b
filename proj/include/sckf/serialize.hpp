// Usable under the terms in the Apache License, Version 2.0.
//
// Wire format, little-endian throughout:
//
//   "SCKF" | version u8 (=1) | variant u8 | f u8 | b u8
//   | num_subtables u32 | stash_capacity u32 | seed u64 | stored_count u64
//   | N blocks, each ceil(b*f/64) u64 words, slot i at bit offset i*f
//   | per subtable: count u16, then count x (canonical_local u32, fingerprint u32)
//
// capacity_n and max_evictions are not part of the format; a decoded filter
// gets capacity_n = max(stored_count, 1) and the default eviction budget.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sckf/filter.hpp"

namespace sckf {

inline constexpr std::uint8_t kFormatVersion = 1;

enum class DecodeErrc {
  BadMagic,
  UnsupportedVersion,
  Truncated,
  Malformed,  // header fields or payload violate filter invariants
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  DecodeErrc code() const noexcept { return code_; }

 private:
  DecodeErrc code_;
};

/// Words per block in the wire format (dense packing, no carry spare bit).
constexpr std::size_t wire_words_per_block(unsigned b, unsigned f) noexcept {
  return (std::size_t{b} * f + 63) / 64;
}

std::vector<std::byte> serialize(const Filter& filter);

/// Throws DecodeError.
Filter deserialize(std::span<const std::byte> bytes);

}  // namespace sckf
