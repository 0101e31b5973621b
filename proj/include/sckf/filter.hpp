// Usable under the terms in the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "sckf/bitmatch.hpp"
#include "sckf/hashing.hpp"
#include "sckf/types.hpp"
#include "sckf/word_buffer.hpp"

namespace sckf {

/// Overflow record for the simplified variant. canonical_local is the smaller
/// of the two candidate local indices, so either candidate finds it.
struct StashEntry {
  std::uint32_t canonical_local = 0;
  Fingerprint fingerprint;

  friend constexpr bool operator==(StashEntry, StashEntry) = default;
};

constexpr std::uint32_t canonical_local(std::uint32_t local, Fingerprint fp) noexcept {
  const std::uint32_t other = local ^ fp.value;
  return other < local ? other : local;
}

/// The other cell that can hold fp. Computes h2 directly for the original
/// variant; Filter::alt_location uses a cached table instead.
CellIndex alt_location(CellIndex loc, Fingerprint fp, const FilterParams& params) noexcept;

class Filter;
Filter deserialize(std::span<const std::byte> bytes);

/// Cuckoo filter over N = num_subtables * 2^f cells of b fingerprints each.
///
/// Not internally synchronized. Const members may run concurrently with each
/// other; insert/erase need exclusive access. Instances may move between
/// threads.
class Filter {
 public:
  /// Throws std::invalid_argument if the parameters are inconsistent.
  explicit Filter(const FilterParams& params);

  /// Places fp(x) in one of x's two cells, relocating along the shortest
  /// chain found by breadth-first search. Falls back to the subtable stash.
  /// A Failed insert leaves the filter untouched.
  InsertOutcome insert(Bytes x);
  bool contains(Bytes x) const;
  /// Removes one matching copy: first cell, then second cell, then stash.
  /// Only erase elements that were inserted; erasing a non-member can drop a
  /// colliding member's fingerprint.
  bool erase(Bytes x);

  InsertOutcome insert(std::uint64_t key) { return insert(Bytes{encode_u64(key)}); }
  bool contains(std::uint64_t key) const { return contains(Bytes{encode_u64(key)}); }
  bool erase(std::uint64_t key) { return erase(Bytes{encode_u64(key)}); }

  HashedElement hash(Bytes x) const noexcept {
    return hash_element(x, seeds_, params_.fingerprint_bits_f, total_cells_);
  }
  CellIndex alt_location(CellIndex loc, Fingerprint fp) const noexcept {
    return CellIndex::from_global(alt_global(loc.global(params_.fingerprint_bits_f), fp),
                                  params_.fingerprint_bits_f);
  }

  const FilterParams& params() const noexcept { return params_; }
  const bitmatch::BlockLayout& layout() const noexcept { return layout_; }
  std::uint64_t total_cells() const noexcept { return total_cells_; }

  /// Table fingerprints plus stash entries.
  std::uint64_t stored_count() const noexcept { return table_count_ + stash_count_; }
  std::uint64_t table_count() const noexcept { return table_count_; }
  std::uint64_t stash_count() const noexcept { return stash_count_; }
  /// Table occupancy over N * b; stash entries are not counted.
  double load_factor() const noexcept {
    return static_cast<double>(table_count_) / static_cast<double>(params_.total_slots());
  }

  std::span<const std::uint64_t> block(std::uint64_t cell) const noexcept {
    return {table_.data() + cell * words_per_block_, words_per_block_};
  }
  std::uint32_t slot(std::uint64_t cell, unsigned index) const noexcept {
    return layout_.get(block(cell), index);
  }
  std::span<const StashEntry> stash(std::uint64_t subtable) const noexcept {
    if (stashes_.empty()) {
      return {};
    }
    return stashes_[subtable];
  }

 private:
  friend Filter deserialize(std::span<const std::byte> bytes);

  struct SearchNode {
    std::uint64_t cell;
    std::int64_t parent;  // index into search_, -1 for a root
    unsigned slot;        // slot in parent whose fingerprint moves here
  };

  std::span<std::uint64_t> block_mut(std::uint64_t cell) noexcept {
    return {table_.data() + cell * words_per_block_, words_per_block_};
  }
  std::uint64_t alt_global(std::uint64_t cell, Fingerprint fp) const noexcept;
  bool place(std::uint64_t c1, std::uint64_t c2, Fingerprint fp);
  void apply_path(std::size_t leaf, Fingerprint fp);

  FilterParams params_;
  HashSeeds seeds_;
  bitmatch::BlockLayout layout_;
  std::uint64_t total_cells_;
  std::size_t words_per_block_;
  WordBuffer table_;
  std::vector<std::vector<StashEntry>> stashes_;
  std::vector<std::uint64_t> h2_cache_;  // original variant, small f only
  std::uint64_t table_count_ = 0;
  std::uint64_t stash_count_ = 0;

  std::vector<SearchNode> search_;
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace sckf
