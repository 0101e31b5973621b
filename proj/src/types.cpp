// Usable under the terms in the Apache License, Version 2.0.

#include <bit>
#include <stdexcept>
#include <string>

#include "sckf/types.hpp"

namespace sckf {
namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

void FilterParams::validate() const {
  if (capacity_n == 0) {
    reject("capacity_n must be positive");
  }
  if (block_size_b < 1 || block_size_b > kMaxBlockSize) {
    reject("block_size_b must be in [1, 255], got " + std::to_string(block_size_b));
  }
  if (fingerprint_bits_f < kMinFingerprintBits || fingerprint_bits_f > kMaxFingerprintBits) {
    reject("fingerprint_bits_f must be in [2, 32], got " + std::to_string(fingerprint_bits_f));
  }
  if (num_subtables == 0) {
    reject("num_subtables must be positive");
  }
  if (max_evictions == 0) {
    reject("max_evictions must be positive");
  }
  if (stash_capacity > kMaxStash) {
    reject("stash_capacity must be at most 65535");
  }
  if (variant == Variant::Original && !std::has_single_bit(num_subtables)) {
    // xor addressing needs N to be a power of two.
    reject("original variant needs a power-of-two cell count; num_subtables = " +
           std::to_string(num_subtables));
  }
  if (variant == Variant::Original && stash_capacity > 0) {
    reject("the stash is only defined for the simplified variant");
  }
  if (total_cells() > (std::uint64_t{1} << 40)) {
    reject("table too large: more than 2^40 cells");
  }
}

std::string_view to_string(Variant v) noexcept {
  return v == Variant::Simplified ? "simplified" : "original";
}

std::string_view to_string(InsertOutcome o) noexcept {
  switch (o) {
    case InsertOutcome::Stored:
      return "stored";
    case InsertOutcome::Stashed:
      return "stashed";
    case InsertOutcome::Failed:
      return "failed";
  }
  return "?";
}

}  // namespace sckf
