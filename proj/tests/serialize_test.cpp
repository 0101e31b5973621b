// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/serialize.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <random>

namespace sckf {
namespace {

FilterParams params(unsigned f, unsigned b, std::uint32_t subtables, std::uint32_t stash,
                    Variant v = Variant::Simplified) {
  FilterParams p;
  p.capacity_n = 1000;
  p.fingerprint_bits_f = f;
  p.block_size_b = b;
  p.num_subtables = subtables;
  p.stash_capacity = stash;
  p.variant = v;
  p.seed = 0xFEEDFACE;
  return p;
}

DecodeErrc decode_error(std::span<const std::byte> bytes) {
  try {
    deserialize(bytes);
  } catch (const DecodeError& e) {
    return e.code();
  }
  ADD_FAILURE() << "deserialize accepted bad input";
  return DecodeErrc::Malformed;
}

TEST(Serialize, HeaderLayout) {
  const Filter filter(params(9, 3, 2, 4));
  const auto bytes = serialize(filter);
  // 32-byte header, 1024 cells x 1 word (27 bits), 2 empty stash counts.
  ASSERT_EQ(bytes.size(), 32u + 1024u * 8u + 2u * 2u);
  EXPECT_EQ(std::memcmp(bytes.data(), "SCKF", 4), 0);
  EXPECT_EQ(std::to_integer<int>(bytes[4]), 1);  // version
  EXPECT_EQ(std::to_integer<int>(bytes[5]), 0);  // simplified
  EXPECT_EQ(std::to_integer<int>(bytes[6]), 9);
  EXPECT_EQ(std::to_integer<int>(bytes[7]), 3);
  EXPECT_EQ(std::to_integer<int>(bytes[8]), 2);  // num_subtables, little-endian
  EXPECT_EQ(std::to_integer<int>(bytes[12]), 4);  // stash capacity
  EXPECT_EQ(std::to_integer<int>(bytes[16]), 0xCE);  // seed low byte
}

TEST(Serialize, DensePackingSpansWords) {
  // b f = 5 * 20 = 100 bits -> 2 wire words per block; slot 3 straddles.
  Filter filter(params(20, 5, 1, 0));
  for (std::uint64_t k = 0; k < 20000; ++k) {
    filter.insert(k);
  }
  EXPECT_EQ(wire_words_per_block(5, 20), 2u);
  const auto bytes = serialize(filter);
  EXPECT_EQ(bytes.size(), 32u + (std::size_t{1} << 20) * 16u + 2u);
  const Filter back = deserialize(bytes);
  for (std::uint64_t cell = 0; cell < 4096; ++cell) {
    for (unsigned s = 0; s < 5; ++s) {
      ASSERT_EQ(back.slot(cell, s), filter.slot(cell, s));
    }
  }
}

TEST(Serialize, EmptyRoundTripIsByteIdentical) {
  for (Variant v : {Variant::Simplified, Variant::Original}) {
    const Filter filter(params(6, 4, 4, v == Variant::Simplified ? 3 : 0, v));
    const auto bytes = serialize(filter);
    EXPECT_EQ(serialize(deserialize(bytes)), bytes);
  }
}

TEST(Serialize, RoundTripAfterMutations) {
  Filter filter(params(8, 2, 4, 4));
  std::mt19937_64 rng(5);
  std::vector<std::uint64_t> live;
  for (int i = 0; i < 10000; ++i) {
    if (rng() % 3 != 0 || live.empty()) {
      const std::uint64_t k = rng() % 50000;
      if (filter.insert(k) != InsertOutcome::Failed) {
        live.push_back(k);
      }
    } else {
      const auto j = rng() % live.size();
      ASSERT_TRUE(filter.erase(live[j]));
      live[j] = live.back();
      live.pop_back();
    }
  }
  ASSERT_GT(filter.stash_count(), 0u) << "expected some stash use at this load";
  const auto bytes = serialize(filter);
  const Filter back = deserialize(bytes);
  EXPECT_EQ(back.stored_count(), filter.stored_count());
  EXPECT_EQ(back.stash_count(), filter.stash_count());
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const std::uint64_t probe = rng() % 100000;
    ASSERT_EQ(back.contains(probe), filter.contains(probe));
  }
  EXPECT_EQ(serialize(back), bytes);
}

TEST(Serialize, DistinctErrors) {
  Filter filter(params(4, 2, 1, 2));
  for (std::uint64_t k = 0; k < 20; ++k) {
    filter.insert(k);
  }
  const auto good = serialize(filter);

  auto truncated = good;
  truncated.pop_back();
  EXPECT_EQ(decode_error(truncated), DecodeErrc::Truncated);
  EXPECT_EQ(decode_error(std::span(good).first(10)), DecodeErrc::Truncated);
  EXPECT_EQ(decode_error(std::span(good).first(2)), DecodeErrc::Truncated);

  auto magic = good;
  magic[0] = std::byte{'X'};
  EXPECT_EQ(decode_error(magic), DecodeErrc::BadMagic);

  auto version = good;
  version[4] = std::byte{2};
  EXPECT_EQ(decode_error(version), DecodeErrc::UnsupportedVersion);

  auto bad_f = good;
  bad_f[6] = std::byte{40};
  EXPECT_EQ(decode_error(bad_f), DecodeErrc::Malformed);

  auto bad_count = good;
  bad_count[24] = std::byte{0x7F};
  EXPECT_EQ(decode_error(bad_count), DecodeErrc::Malformed);

  auto trailing = good;
  trailing.push_back(std::byte{0});
  EXPECT_EQ(decode_error(trailing), DecodeErrc::Malformed);
}

TEST(Serialize, RejectsNonCanonicalStashEntry) {
  FilterParams p = params(2, 1, 1, 1);
  Filter filter(p);
  auto bytes = serialize(filter);
  // Rewrite the stash section: one entry (local 3, fp 3) whose canonical
  // form would be local 0.
  bytes.resize(bytes.size() - 2);
  const std::uint8_t tail[] = {1, 0, 3, 0, 0, 0, 3, 0, 0, 0};
  for (auto v : tail) {
    bytes.push_back(std::byte{v});
  }
  bytes[24] = std::byte{1};  // stored_count
  EXPECT_EQ(decode_error(bytes), DecodeErrc::Malformed);
  bytes[bytes.size() - 8] = std::byte{0};
  EXPECT_NO_THROW(deserialize(bytes));
}

}  // namespace
}  // namespace sckf
