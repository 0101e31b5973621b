// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/serialize.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace sckf {
namespace {

constexpr std::array<char, 4> kMagic = {'S', 'C', 'K', 'F'};

class Writer {
 public:
  explicit Writer(std::size_t reserve) { out_.reserve(reserve); }

  template <class T>
  void put(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::byte>(static_cast<std::uint64_t>(value) >> (8 * i)));
    }
  }

  std::vector<std::byte> take() { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  template <class T>
  T get() {
    if (in_.size() - pos_ < sizeof(T)) {
      throw DecodeError(DecodeErrc::Truncated,
                        "truncated payload at offset " + std::to_string(pos_));
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= std::uint64_t(std::to_integer<unsigned>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

[[noreturn]] void malformed(const std::string& what) {
  throw DecodeError(DecodeErrc::Malformed, what);
}

}  // namespace

std::vector<std::byte> serialize(const Filter& filter) {
  const FilterParams& p = filter.params();
  const unsigned f = p.fingerprint_bits_f;
  const unsigned b = p.block_size_b;
  const std::size_t wire_words = wire_words_per_block(b, f);

  Writer w(32 + filter.total_cells() * wire_words * 8 + p.num_subtables * 2);
  for (char c : kMagic) {
    w.put(static_cast<std::uint8_t>(c));
  }
  w.put(kFormatVersion);
  w.put(static_cast<std::uint8_t>(p.variant));
  w.put(static_cast<std::uint8_t>(f));
  w.put(static_cast<std::uint8_t>(b));
  w.put(p.num_subtables);
  w.put(p.stash_capacity);
  w.put(p.seed);
  w.put(filter.stored_count());

  std::vector<std::uint64_t> packed(wire_words);
  for (std::uint64_t cell = 0; cell < filter.total_cells(); ++cell) {
    std::fill(packed.begin(), packed.end(), 0);
    for (unsigned s = 0; s < b; ++s) {
      const std::uint64_t v = filter.slot(cell, s);
      const std::size_t bit = std::size_t{s} * f;
      packed[bit / 64] |= v << (bit % 64);
      if (bit % 64 + f > 64) {
        packed[bit / 64 + 1] |= v >> (64 - bit % 64);
      }
    }
    for (std::uint64_t word : packed) {
      w.put(word);
    }
  }

  for (std::uint64_t t = 0; t < p.num_subtables; ++t) {
    const auto stash = filter.stash(t);
    w.put(static_cast<std::uint16_t>(stash.size()));
    for (const StashEntry& e : stash) {
      w.put(e.canonical_local);
      w.put(e.fingerprint.value);
    }
  }
  return w.take();
}

Filter deserialize(std::span<const std::byte> bytes) {
  Reader r(bytes);
  std::array<char, 4> magic{};
  if (bytes.size() < magic.size()) {
    throw DecodeError(DecodeErrc::Truncated, "truncated payload: no magic");
  }
  for (char& c : magic) {
    c = static_cast<char>(r.get<std::uint8_t>());
  }
  if (magic != kMagic) {
    throw DecodeError(DecodeErrc::BadMagic, "bad magic: not a filter image");
  }
  const auto version = r.get<std::uint8_t>();
  if (version != kFormatVersion) {
    throw DecodeError(DecodeErrc::UnsupportedVersion,
                      "unsupported format version " + std::to_string(version));
  }

  FilterParams p;
  const auto variant = r.get<std::uint8_t>();
  if (variant > 1) {
    malformed("unknown variant " + std::to_string(variant));
  }
  p.variant = static_cast<Variant>(variant);
  p.fingerprint_bits_f = r.get<std::uint8_t>();
  p.block_size_b = r.get<std::uint8_t>();
  p.num_subtables = r.get<std::uint32_t>();
  p.stash_capacity = r.get<std::uint32_t>();
  p.seed = r.get<std::uint64_t>();
  const auto stored_count = r.get<std::uint64_t>();
  p.capacity_n = std::max<std::uint64_t>(stored_count, 1);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    malformed(std::string("invalid header: ") + e.what());
  }

  const unsigned f = p.fingerprint_bits_f;
  const unsigned b = p.block_size_b;
  const std::size_t wire_words = wire_words_per_block(b, f);
  // Check the block section length before allocating the table.
  if (r.remaining() / 8 / wire_words < p.total_cells()) {
    throw DecodeError(DecodeErrc::Truncated, "truncated payload: block section");
  }

  Filter filter(p);
  const std::uint64_t lane_mask = (std::uint64_t{1} << f) - 1;
  std::vector<std::uint64_t> packed(wire_words);
  for (std::uint64_t cell = 0; cell < filter.total_cells(); ++cell) {
    for (auto& word : packed) {
      word = r.get<std::uint64_t>();
    }
    auto dest = filter.block_mut(cell);
    for (unsigned s = 0; s < b; ++s) {
      const std::size_t bit = std::size_t{s} * f;
      std::uint64_t v = packed[bit / 64] >> (bit % 64);
      if (bit % 64 + f > 64) {
        v |= packed[bit / 64 + 1] << (64 - bit % 64);
      }
      v &= lane_mask;
      if (v != 0) {
        filter.layout_.set(dest, s, static_cast<std::uint32_t>(v));
        ++filter.table_count_;
      }
    }
    const std::size_t used_bits = std::size_t{b} * f;
    if (used_bits % 64 != 0 && (packed.back() >> (used_bits % 64)) != 0) {
      malformed("nonzero padding bits in cell " + std::to_string(cell));
    }
  }

  for (std::uint64_t t = 0; t < p.num_subtables; ++t) {
    const auto count = r.get<std::uint16_t>();
    if (count > p.stash_capacity) {
      malformed("stash of subtable " + std::to_string(t) + " exceeds capacity");
    }
    for (std::uint16_t i = 0; i < count; ++i) {
      const auto local = r.get<std::uint32_t>();
      const Fingerprint fp{r.get<std::uint32_t>()};
      if (!fp.valid_for(f) || (f < 32 && local >= (std::uint32_t{1} << f)) ||
          canonical_local(local, fp) != local) {
        malformed("invalid stash entry in subtable " + std::to_string(t));
      }
      filter.stashes_[t].push_back({local, fp});
      ++filter.stash_count_;
    }
  }
  if (r.remaining() != 0) {
    malformed("trailing bytes after payload");
  }
  if (filter.stored_count() != stored_count) {
    malformed("stored_count does not match payload");
  }
  return filter;
}

}  // namespace sckf
