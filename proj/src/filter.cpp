// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/filter.hpp"

#include <algorithm>
#include <utility>

namespace sckf {
namespace {

constexpr unsigned kMaxCachedH2Bits = 16;

const FilterParams& validated(const FilterParams& p) {
  p.validate();
  return p;
}

}  // namespace

CellIndex alt_location(CellIndex loc, Fingerprint fp, const FilterParams& params) noexcept {
  const unsigned f = params.fingerprint_bits_f;
  if (params.variant == Variant::Simplified) {
    return {loc.subtable, loc.local ^ fp.value};
  }
  const std::uint64_t g =
      loc.global(f) ^ h2_of(fp, HashSeeds::derive(params.seed).h2, params.total_cells());
  return CellIndex::from_global(g, f);
}

Filter::Filter(const FilterParams& params)
    : params_(validated(params)),
      seeds_(HashSeeds::derive(params.seed)),
      layout_(params.fingerprint_bits_f, params.block_size_b),
      total_cells_(params.total_cells()),
      words_per_block_(layout_.words_per_block()),
      table_(total_cells_ * words_per_block_) {
  if (params_.stash_capacity > 0) {
    stashes_.resize(params_.num_subtables);
  }
  const unsigned f = params_.fingerprint_bits_f;
  if (params_.variant == Variant::Original && f <= kMaxCachedH2Bits) {
    h2_cache_.resize(std::size_t{1} << f, 0);
    for (std::uint32_t v = 1; v < (std::uint32_t{1} << f); ++v) {
      h2_cache_[v] = h2_of(Fingerprint{v}, seeds_.h2, total_cells_);
    }
  }
  seen_.reserve(2 * params_.max_evictions);
}

std::uint64_t Filter::alt_global(std::uint64_t cell, Fingerprint fp) const noexcept {
  if (params_.variant == Variant::Simplified) {
    return cell ^ fp.value;
  }
  const std::uint64_t h2 =
      h2_cache_.empty() ? h2_of(fp, seeds_.h2, total_cells_) : h2_cache_[fp.value];
  return cell ^ h2;
}

InsertOutcome Filter::insert(Bytes x) {
  const auto [h1, fp] = hash(x);
  const std::uint64_t c1 = h1.global(params_.fingerprint_bits_f);
  const std::uint64_t c2 = alt_global(c1, fp);
  if (place(c1, c2, fp)) {
    ++table_count_;
    return InsertOutcome::Stored;
  }
  if (!stashes_.empty()) {
    auto& stash = stashes_[h1.subtable];
    if (stash.size() < params_.stash_capacity) {
      stash.push_back({canonical_local(h1.local, fp), fp});
      ++stash_count_;
      return InsertOutcome::Stashed;
    }
  }
  return InsertOutcome::Failed;
}

// Breadth-first search over cells, level by level. Among non-full cells at the
// shallowest level the lowest global index wins. Nothing is written until a
// complete path exists.
bool Filter::place(std::uint64_t c1, std::uint64_t c2, Fingerprint fp) {
  const std::uint64_t lo = std::min(c1, c2);
  const std::uint64_t hi = std::max(c1, c2);
  if (auto s = layout_.find_empty(block(lo))) {
    layout_.set(block_mut(lo), *s, fp.value);
    return true;
  }
  if (auto s = layout_.find_empty(block(hi))) {
    layout_.set(block_mut(hi), *s, fp.value);
    return true;
  }

  search_.clear();
  seen_.clear();
  search_.push_back({lo, -1, 0});
  search_.push_back({hi, -1, 0});
  seen_.insert(lo);
  seen_.insert(hi);

  const unsigned b = params_.block_size_b;
  const std::size_t budget = params_.max_evictions;
  std::size_t level_begin = 0;
  // Roots are known full; expand before checking.
  while (true) {
    const std::size_t level_end = search_.size();
    for (std::size_t i = level_begin; i < level_end && seen_.size() < budget; ++i) {
      const std::uint64_t cell = search_[i].cell;
      for (unsigned s = 0; s < b && seen_.size() < budget; ++s) {
        const std::uint64_t next = alt_global(cell, Fingerprint{layout_.get(block(cell), s)});
        if (seen_.insert(next).second) {
          search_.push_back({next, static_cast<std::int64_t>(i), s});
        }
      }
    }
    if (search_.size() == level_end) {
      return false;
    }

    std::size_t best = search_.size();
    for (std::size_t i = level_end; i < search_.size(); ++i) {
      if (layout_.find_empty(block(search_[i].cell)) &&
          (best == search_.size() || search_[i].cell < search_[best].cell)) {
        best = i;
      }
    }
    if (best != search_.size()) {
      apply_path(best, fp);
      return true;
    }
    if (seen_.size() >= budget) {
      return false;
    }
    level_begin = level_end;
  }
}

void Filter::apply_path(std::size_t leaf, Fingerprint fp) {
  SearchNode node = search_[leaf];
  unsigned free_slot = *layout_.find_empty(block(node.cell));
  while (node.parent >= 0) {
    const SearchNode& parent = search_[static_cast<std::size_t>(node.parent)];
    layout_.set(block_mut(node.cell), free_slot, layout_.get(block(parent.cell), node.slot));
    free_slot = node.slot;
    node = parent;
  }
  layout_.set(block_mut(node.cell), free_slot, fp.value);
}

bool Filter::contains(Bytes x) const {
  const auto [h1, fp] = hash(x);
  const std::uint64_t c1 = h1.global(params_.fingerprint_bits_f);
  if (layout_.find(block(c1), fp) || layout_.find(block(alt_global(c1, fp)), fp)) {
    return true;
  }
  if (stash_count_ == 0) {
    return false;
  }
  const StashEntry key{canonical_local(h1.local, fp), fp};
  const auto& stash = stashes_[h1.subtable];
  return std::find(stash.begin(), stash.end(), key) != stash.end();
}

bool Filter::erase(Bytes x) {
  const auto [h1, fp] = hash(x);
  const std::uint64_t c1 = h1.global(params_.fingerprint_bits_f);
  if (layout_.remove(block_mut(c1), fp) || layout_.remove(block_mut(alt_global(c1, fp)), fp)) {
    --table_count_;
    return true;
  }
  if (stash_count_ == 0) {
    return false;
  }
  const StashEntry key{canonical_local(h1.local, fp), fp};
  auto& stash = stashes_[h1.subtable];
  auto it = std::find(stash.begin(), stash.end(), key);
  if (it == stash.end()) {
    return false;
  }
  stash.erase(it);
  --stash_count_;
  return true;
}

}  // namespace sckf
