// Usable under the terms in the Apache License, Version 2.0.
//
// Experiment drivers. Every experiment is a pure function of its parameters
// and seed. Members are the counters [0, n) encoded as 8-byte keys and
// non-members are [n, n + queries), so the two sets are disjoint by
// construction.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sckf/lab/trial_record.hpp"
#include "sckf/types.hpp"

namespace sckf::lab {

/// Subtables needed to hold n elements at the given load, rounded up (to a
/// power of two for the original variant).
std::uint32_t subtables_for(std::uint64_t n, double load, unsigned b, unsigned f,
                            Variant variant);

/// Inserts keys [0, n) into a fresh filter and returns how many went in before
/// the first Failed (n if none failed).
std::uint64_t fill_until_failure(const FilterParams& params, std::uint64_t n);

/// One record per seed: trials = non-member queries, successes = false
/// positives, measured = their ratio, predicted = 2n/(N(2^f - 1)). A seed whose
/// construction fails is reported with trials = 0.
std::vector<TrialRecord> run_fp_experiment(const FilterParams& params, std::uint64_t n,
                                           std::uint64_t queries,
                                           std::span<const std::uint64_t> seeds,
                                           bool timing = false);

struct LoadSweepConfig {
  unsigned b = 4;
  unsigned f = 12;
  std::uint64_t n = 100000;  // table sized to hold n at load 1
  std::vector<double> loads;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  Variant variant = Variant::Simplified;
  std::uint32_t stash_capacity = 0;
  bool timing = false;
};

/// For each target load, the fraction of trials in which every insert up to
/// that load succeeded. predicted = 1 - delta - delta^2 for this b.
std::vector<TrialRecord> run_load_sweep(const LoadSweepConfig& config);

struct FailureSweepConfig {
  std::uint64_t n = 100000;
  unsigned b = 4;
  double load = 0.9;
  std::vector<unsigned> f_grid;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  Variant variant = Variant::Simplified;
  std::uint32_t stash_capacity = 0;
  bool timing = false;
};

/// For each f, the fraction of trials in which inserting n elements hit a
/// Failed outcome. predicted = n^-(f b / log2 n - 1), capped at 1.
std::vector<TrialRecord> run_failure_sweep_f(const FailureSweepConfig& config);

struct CompareConfig {
  std::uint64_t n = 0;
  unsigned b = 4;
  unsigned f = 12;
  std::uint32_t num_subtables = 1;  // power of two
  std::uint64_t trials = 20;
  std::uint64_t seed = 0;
  bool timing = false;
};

/// Simplified vs original on identical (n, b, f, seed). Per variant: a
/// "compare_load" record (mean load reached before the first failure) and a
/// "compare_failure" record (fraction of trials failing before n).
std::vector<TrialRecord> run_variant_compare(const CompareConfig& config);

/// Bloom filter with k = round(bits ln 2 / n) unless given. measured is the
/// false-positive rate over `queries` non-members, predicted = 2^-k.
TrialRecord bloom_baseline_rate(std::uint64_t n, std::uint64_t bits, std::uint64_t queries,
                                std::uint64_t seed, std::optional<unsigned> k = std::nullopt,
                                bool timing = false);

struct SelftestReport {
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
};

/// Exhaustive bit-parallel vs per-lane comparison for (f=2, lanes<=3),
/// (f=3, lanes<=3) and (f=4, lanes<=2).
SelftestReport run_bitmatch_selftest();

}  // namespace sckf::lab
