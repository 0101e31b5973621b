// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/bitmatch.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sckf::bitmatch {

LaneConstant make_lane_constant(unsigned f, unsigned lanes) {
  if (f < 2 || f > 32) {
    throw std::invalid_argument("lane width must be in [2, 32], got " + std::to_string(f));
  }
  if (lanes < 1 || lanes * f > 63) {
    throw std::invalid_argument("lanes * f must be in [f, 63], got " +
                                std::to_string(lanes) + " lanes of " + std::to_string(f));
  }
  std::uint64_t bits = 0;
  for (unsigned i = 0; i < lanes; ++i) {
    bits |= std::uint64_t{1} << (i * f);
  }
  return {bits, f, lanes};
}

std::optional<unsigned> naive_find(const PackedWord& w, Fingerprint fp) noexcept {
  const std::uint64_t mask = (std::uint64_t{1} << w.f) - 1;
  for (unsigned i = 0; i < w.lanes_used; ++i) {
    if (((w.word >> (i * w.f)) & mask) == fp.value) {
      return i;
    }
  }
  return std::nullopt;
}

BlockLayout::BlockLayout(unsigned f, unsigned b)
    : f_(f),
      b_(b),
      lanes_(std::min(b, 63 / std::max(f, 1u))),
      words_(0),
      mask_((std::uint64_t{1} << f) - 1),
      constant_(make_lane_constant(f, std::max(lanes_, 1u))) {
  if (b == 0) {
    throw std::invalid_argument("block size must be positive");
  }
  words_ = (b_ + lanes_ - 1) / lanes_;
}

unsigned BlockLayout::occupancy(std::span<const std::uint64_t> block) const noexcept {
  unsigned count = 0;
  for (unsigned slot = 0; slot < b_; ++slot) {
    count += get(block, slot) != 0;
  }
  return count;
}

}  // namespace sckf::bitmatch
