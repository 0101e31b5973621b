// Usable under the terms in the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sckf::lab {

/// One row of experiment output. Every measurement travels with the bound it
/// is compared against.
struct TrialRecord {
  std::string experiment;
  std::string variant;
  std::uint64_t n = 0;
  unsigned b = 0;
  unsigned f = 0;
  std::uint64_t num_subtables = 0;
  std::uint32_t stash_capacity = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double measured = 0;
  double predicted_bound = 0;
  double wall_time_ms = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Orders by (experiment, parameters, seed) so output does not depend on the
/// order trials finished in.
void sort_records(std::vector<TrialRecord>& records);

std::string csv_header();
void write_csv(std::ostream& out, std::span<const TrialRecord> records);
void write_json(std::ostream& out, std::span<const TrialRecord> records);

/// Parses what write_csv produced. Throws std::runtime_error on bad input.
std::vector<TrialRecord> read_csv(std::istream& in);

}  // namespace sckf::lab
