// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/bitmatch.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

namespace sckf::bitmatch {
namespace {

std::uint64_t pack(const std::vector<std::uint32_t>& lanes, unsigned f) {
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    w |= std::uint64_t{lanes[i]} << (i * f);
  }
  return w;
}

TEST(LaneConstant, DirectSums) {
  EXPECT_EQ(make_lane_constant(4, 4).bits, 0x1111u);
  EXPECT_EQ(make_lane_constant(8, 7).bits, 0x0001010101010101ULL);
  EXPECT_EQ(make_lane_constant(16, 1).bits, 0x1u);
  EXPECT_EQ(make_lane_constant(31, 2).bits, 0x80000001ULL);
}

TEST(LaneConstant, RejectsBadGeometry) {
  EXPECT_THROW(make_lane_constant(1, 3), std::invalid_argument);
  EXPECT_THROW(make_lane_constant(33, 1), std::invalid_argument);
  EXPECT_THROW(make_lane_constant(4, 0), std::invalid_argument);
  EXPECT_THROW(make_lane_constant(8, 8), std::invalid_argument);  // 64 bits, no carry room
  EXPECT_NO_THROW(make_lane_constant(21, 3));
  EXPECT_THROW(make_lane_constant(16, 4), std::invalid_argument);
}

TEST(LaneConstant, BitsSpacedByF) {
  for (unsigned f = 2; f <= 32; ++f) {
    for (unsigned lanes = 1; lanes * f <= 63; ++lanes) {
      const auto F = make_lane_constant(f, lanes);
      EXPECT_EQ(static_cast<unsigned>(std::popcount(F.bits)), lanes);
      for (unsigned i = 0; i < lanes; ++i) {
        EXPECT_TRUE(F.bits >> (i * f) & 1);
      }
    }
  }
}

TEST(FindFingerprint, WorkedExample) {
  // lanes [3, 7, 0, 3] low to high
  const auto F = make_lane_constant(4, 4);
  const std::uint64_t w = 0x3073;
  ASSERT_EQ(w, pack({3, 7, 0, 3}, 4));
  const std::uint64_t r = carry_bits(w, 3, F);
  EXPECT_EQ(r, (std::uint64_t{1} << 4) | (std::uint64_t{1} << 16));
  EXPECT_EQ(find_fingerprint(w, Fingerprint{3}, F), 0u);
  EXPECT_EQ(find_fingerprint(w, Fingerprint{7}, F), 1u);
  EXPECT_EQ(find_fingerprint(w, Fingerprint{5}, F), std::nullopt);
}

TEST(FindFingerprint, EmptyWordNeverMatches) {
  for (unsigned f : {2u, 5u, 12u, 31u, 32u}) {
    const auto F = make_lane_constant(f, 63 / f);
    for (std::uint32_t v : {1u, 2u, 3u}) {
      EXPECT_EQ(find_fingerprint(0, Fingerprint{v}, F), std::nullopt);
    }
  }
}

// All words for small geometries, every fingerprint.
TEST(FindFingerprint, ExhaustiveAgainstNaive) {
  struct Geometry {
    unsigned f;
    unsigned max_lanes;
  };
  for (Geometry g : {Geometry{2, 3}, Geometry{3, 3}, Geometry{4, 2}}) {
    for (unsigned lanes = 1; lanes <= g.max_lanes; ++lanes) {
      const auto F = make_lane_constant(g.f, lanes);
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << (g.f * lanes)); ++w) {
        for (std::uint32_t v = 1; v < (1u << g.f); ++v) {
          ASSERT_EQ(find_fingerprint(w, Fingerprint{v}, F), naive_find({w, g.f, lanes}, Fingerprint{v}))
              << "f=" << g.f << " lanes=" << lanes << " w=" << w << " fp=" << v;
        }
      }
    }
  }
}

TEST(FindFingerprint, RandomizedAgainstNaiveWithCarryLocalization) {
  std::mt19937_64 rng(42);
  for (unsigned f : {4u, 8u, 12u, 16u, 31u, 32u}) {
    const unsigned lanes = 63 / f;
    const auto F = make_lane_constant(f, lanes);
    const std::uint64_t mask = (std::uint64_t{1} << f) - 1;
    for (int iter = 0; iter < 100000; ++iter) {
      const auto fp = static_cast<std::uint32_t>(rng() % mask + 1);
      std::uint64_t w = 0;
      for (unsigned i = 0; i < lanes; ++i) {
        // Plant matches and near-misses (one bit off) often.
        std::uint64_t lane;
        switch (rng() % 4) {
          case 0: lane = fp; break;
          case 1: lane = fp ^ (std::uint64_t{1} << (rng() % f)); break;
          case 2: lane = 0; break;
          default: lane = rng() & mask;
        }
        w |= lane << (i * f);
      }
      const std::uint64_t r = carry_bits(w, fp, F);
      ASSERT_EQ(r & ~F.carry_mask(), 0u);
      const auto got = find_fingerprint(w, Fingerprint{fp}, F);
      ASSERT_EQ(got, naive_find({w, f, lanes}, Fingerprint{fp}));
      if (got) {
        for (unsigned i = 0; i < *got; ++i) {
          ASSERT_NE((w >> (i * f)) & mask, fp);
        }
      }
    }
  }
}

TEST(BlockLayout, GeometryUses63BitWords) {
  EXPECT_EQ(BlockLayout(8, 8).lanes_per_word(), 7u);
  EXPECT_EQ(BlockLayout(8, 8).words_per_block(), 2u);
  EXPECT_EQ(BlockLayout(12, 4).words_per_block(), 1u);
  EXPECT_EQ(BlockLayout(32, 4).words_per_block(), 4u);
  EXPECT_EQ(BlockLayout(2, 1).lanes_per_word(), 1u);
}

TEST(BlockLayout, FindExamples) {
  const BlockLayout layout(12, 4);
  std::vector<std::uint64_t> block(layout.words_per_block());
  const Fingerprint fp{0xABC};
  layout.set(block, 2, fp.value);
  EXPECT_EQ(layout.find(block, fp), 2u);
  layout.set(block, 3, fp.value);
  layout.set(block, 1, fp.value);
  EXPECT_EQ(layout.find(block, fp), 1u);
  EXPECT_TRUE(layout.remove(block, fp));
  EXPECT_EQ(layout.find(block, fp), 2u);
  EXPECT_EQ(layout.occupancy(block), 2u);
}

TEST(BlockLayout, FindEmptyIgnoresPaddingLanes) {
  // 7 lanes of 9 bits per word, 8 slots: word 1 uses one lane.
  const BlockLayout layout(9, 8);
  std::vector<std::uint64_t> block(layout.words_per_block());
  for (unsigned s = 0; s < 8; ++s) {
    EXPECT_EQ(layout.find_empty(block), s);
    layout.set(block, s, s + 1);
  }
  EXPECT_EQ(layout.find_empty(block), std::nullopt);
  layout.set(block, 5, 0);
  EXPECT_EQ(layout.find_empty(block), 5u);
}

TEST(BlockLayout, RandomBlocksAgreeWithSlotLoop) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 100000; ++iter) {
    const unsigned f = 2 + rng() % 31;
    const unsigned b = 1 + rng() % 12;
    const BlockLayout layout(f, b);
    const std::uint32_t max = static_cast<std::uint32_t>((std::uint64_t{1} << f) - 1);
    const std::uint32_t small = std::min<std::uint32_t>(max, 3);
    std::vector<std::uint64_t> block(layout.words_per_block());
    for (unsigned s = 0; s < b; ++s) {
      layout.set(block, s, static_cast<std::uint32_t>(rng() % (small + 1)));
    }
    const Fingerprint fp{static_cast<std::uint32_t>(1 + rng() % small)};
    std::optional<unsigned> expected;
    std::optional<unsigned> expected_empty;
    for (unsigned s = 0; s < b; ++s) {
      if (!expected && layout.get(block, s) == fp.value) expected = s;
      if (!expected_empty && layout.get(block, s) == 0) expected_empty = s;
    }
    ASSERT_EQ(layout.find(block, fp), expected);
    ASSERT_EQ(layout.find_empty(block), expected_empty);
  }
}

}  // namespace
}  // namespace sckf::bitmatch
