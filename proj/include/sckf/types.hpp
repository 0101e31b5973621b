// Usable under the terms in the Apache License, Version 2.0.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sckf {

/// Elements are opaque byte strings.
using Bytes = std::span<const std::byte>;

inline Bytes as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::byte*>(s.data()), s.size()};
}

/// Little-endian encoding of a 64-bit key; the harness universe is counters.
inline std::array<std::byte, 8> encode_u64(std::uint64_t v) noexcept {
  std::array<std::byte, 8> out{};
  for (std::size_t i = 0; i < 8; ++i) {
    out[i] = static_cast<std::byte>(v >> (8 * i));
  }
  return out;
}

enum class Variant : std::uint8_t {
  Simplified = 0,  // alternate cell = local ^ fingerprint, within one subtable
  Original = 1,    // alternate cell = global ^ h2(fingerprint)
};

/// A nonzero f-bit fingerprint. Zero marks an empty slot and is never a
/// valid fingerprint.
struct Fingerprint {
  std::uint32_t value = 0;

  constexpr Fingerprint() = default;
  constexpr explicit Fingerprint(std::uint32_t v) : value(v) {}

  constexpr bool valid_for(unsigned f) const noexcept {
    return value != 0 && (f >= 32 || value < (std::uint32_t{1} << f));
  }
  friend constexpr auto operator<=>(Fingerprint, Fingerprint) = default;
};

/// Cell address split into subtable (high bits) and local index (low f bits).
struct CellIndex {
  std::uint64_t subtable = 0;
  std::uint32_t local = 0;

  constexpr std::uint64_t global(unsigned f) const noexcept {
    return (subtable << f) | local;
  }
  static constexpr CellIndex from_global(std::uint64_t g, unsigned f) noexcept {
    const std::uint64_t mask = (std::uint64_t{1} << f) - 1;
    return {g >> f, static_cast<std::uint32_t>(g & mask)};
  }
  friend constexpr auto operator<=>(CellIndex, CellIndex) = default;
};

enum class InsertOutcome : std::uint8_t { Stored, Stashed, Failed };

/// Sizing and configuration for a filter.
struct FilterParams {
  std::uint64_t capacity_n = 1;
  unsigned block_size_b = 4;
  unsigned fingerprint_bits_f = 12;
  std::uint32_t num_subtables = 1;
  Variant variant = Variant::Simplified;
  std::uint32_t stash_capacity = 0;
  std::uint64_t seed = 0;
  std::uint32_t max_evictions = 512;

  static constexpr unsigned kMinFingerprintBits = 2;
  static constexpr unsigned kMaxFingerprintBits = 32;
  static constexpr unsigned kMaxBlockSize = 255;      // one header byte
  static constexpr std::uint32_t kMaxStash = 0xFFFF;  // u16 count on the wire

  std::uint64_t cells_per_subtable() const noexcept {
    return std::uint64_t{1} << fingerprint_bits_f;
  }
  std::uint64_t total_cells() const noexcept {
    return std::uint64_t{num_subtables} << fingerprint_bits_f;
  }
  std::uint64_t total_slots() const noexcept {
    return total_cells() * block_size_b;
  }

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

std::string_view to_string(Variant v) noexcept;
std::string_view to_string(InsertOutcome o) noexcept;

}  // namespace sckf
