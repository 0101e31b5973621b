// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/lab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "sckf/bitmatch.hpp"
#include "sckf/filter.hpp"
#include "sckf/lab/bloom.hpp"
#include "sckf/planner.hpp"

namespace sckf::lab {
namespace {

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(Clock::now()) {}
  double elapsed_ms() const {
    if (!enabled_) {
      return 0;
    }
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  bool enabled_;
  Clock::time_point start_;
};

double theoretical_load(unsigned b) {
  const double delta = planner::max_delta(b);
  return std::max(0.0, 1.0 - delta - delta * delta);
}

double predicted_failure(std::uint64_t n, unsigned b, unsigned f) {
  const double log_n = std::log2(static_cast<double>(std::max<std::uint64_t>(n, 2)));
  const double s = static_cast<double>(f) * b / log_n - 1.0;
  if (s <= 0) {
    return 1.0;
  }
  return std::min(1.0, std::pow(static_cast<double>(n), -s));
}

TrialRecord base_record(const char* experiment, const FilterParams& p, std::uint64_t n) {
  TrialRecord r;
  r.experiment = experiment;
  r.variant = std::string(to_string(p.variant));
  r.n = n;
  r.b = p.block_size_b;
  r.f = p.fingerprint_bits_f;
  r.num_subtables = p.num_subtables;
  r.stash_capacity = p.stash_capacity;
  r.seed = p.seed;
  return r;
}

}  // namespace

std::uint32_t subtables_for(std::uint64_t n, double load, unsigned b, unsigned f,
                            Variant variant) {
  const double cells = static_cast<double>(n) / (load * b);
  auto subtables = static_cast<std::uint32_t>(
      std::max(1.0, std::ceil(cells / std::ldexp(1.0, static_cast<int>(f)))));
  if (variant == Variant::Original) {
    subtables = std::bit_ceil(subtables);
  }
  return subtables;
}

std::uint64_t fill_until_failure(const FilterParams& params, std::uint64_t n) {
  Filter filter(params);
  for (std::uint64_t key = 0; key < n; ++key) {
    if (filter.insert(key) == InsertOutcome::Failed) {
      return key;
    }
  }
  return n;
}

std::vector<TrialRecord> run_fp_experiment(const FilterParams& params, std::uint64_t n,
                                           std::uint64_t queries,
                                           std::span<const std::uint64_t> seeds, bool timing) {
  std::vector<TrialRecord> out;
  for (std::uint64_t seed : seeds) {
    Stopwatch clock(timing);
    FilterParams p = params;
    p.seed = seed;
    TrialRecord r = base_record("fprate", p, n);
    Filter filter(p);
    bool built = true;
    for (std::uint64_t key = 0; key < n && built; ++key) {
      built = filter.insert(key) != InsertOutcome::Failed;
    }
    r.predicted_bound = planner::fp_bound(static_cast<double>(n),
                                          static_cast<double>(filter.total_cells()),
                                          p.block_size_b, p.fingerprint_bits_f);
    if (built) {
      std::uint64_t hits = 0;
      for (std::uint64_t key = n; key < n + queries; ++key) {
        hits += filter.contains(key);
      }
      r.trials = queries;
      r.successes = hits;
      r.measured = queries == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(queries);
    }
    r.wall_time_ms = clock.elapsed_ms();
    out.push_back(std::move(r));
  }
  sort_records(out);
  return out;
}

std::vector<TrialRecord> run_load_sweep(const LoadSweepConfig& config) {
  FilterParams p;
  p.block_size_b = config.b;
  p.fingerprint_bits_f = config.f;
  p.variant = config.variant;
  p.stash_capacity = config.stash_capacity;
  p.num_subtables = subtables_for(config.n, 1.0, config.b, config.f, config.variant);
  p.capacity_n = config.n;
  p.validate();

  const double slots = static_cast<double>(p.total_slots());
  std::vector<std::uint64_t> targets;
  for (double load : config.loads) {
    targets.push_back(static_cast<std::uint64_t>(std::floor(load * slots)));
  }
  const std::uint64_t most = targets.empty() ? 0 : *std::max_element(targets.begin(), targets.end());

  // One fill per trial serves every grid point: reaching k inserts is the
  // same event whichever target load asked for it.
  Stopwatch clock(config.timing);
  std::vector<std::uint64_t> reached(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    p.seed = config.seed + t;
    reached[t] = fill_until_failure(p, most);
  }
  const double elapsed = clock.elapsed_ms();

  std::vector<TrialRecord> out;
  p.seed = config.seed;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    TrialRecord r = base_record("loadsweep", p, targets[i]);
    r.trials = config.trials;
    r.successes = static_cast<std::uint64_t>(
        std::count_if(reached.begin(), reached.end(),
                      [&](std::uint64_t k) { return k >= targets[i]; }));
    r.measured = config.trials == 0 ? 0.0
                                    : static_cast<double>(r.successes) /
                                          static_cast<double>(config.trials);
    r.predicted_bound = theoretical_load(config.b);
    r.wall_time_ms = elapsed;
    out.push_back(std::move(r));
  }
  sort_records(out);
  return out;
}

std::vector<TrialRecord> run_failure_sweep_f(const FailureSweepConfig& config) {
  std::vector<TrialRecord> out;
  for (unsigned f : config.f_grid) {
    Stopwatch clock(config.timing);
    FilterParams p;
    p.block_size_b = config.b;
    p.fingerprint_bits_f = f;
    p.variant = config.variant;
    p.stash_capacity = config.stash_capacity;
    p.capacity_n = config.n;
    p.num_subtables = subtables_for(config.n, config.load, config.b, f, config.variant);
    p.seed = config.seed;
    p.validate();

    std::uint64_t ok = 0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      FilterParams trial = p;
      trial.seed = config.seed + t;
      ok += fill_until_failure(trial, config.n) == config.n;
    }
    TrialRecord r = base_record("failsweep", p, config.n);
    r.trials = config.trials;
    r.successes = ok;
    r.measured = config.trials == 0 ? 0.0
                                    : 1.0 - static_cast<double>(ok) /
                                                static_cast<double>(config.trials);
    r.predicted_bound = predicted_failure(config.n, config.b, f);
    r.wall_time_ms = clock.elapsed_ms();
    out.push_back(std::move(r));
  }
  sort_records(out);
  return out;
}

std::vector<TrialRecord> run_variant_compare(const CompareConfig& config) {
  std::vector<TrialRecord> out;
  for (Variant v : {Variant::Simplified, Variant::Original}) {
    Stopwatch clock(config.timing);
    FilterParams p;
    p.block_size_b = config.b;
    p.fingerprint_bits_f = config.f;
    p.num_subtables = config.num_subtables;
    p.variant = v;
    p.capacity_n = std::max<std::uint64_t>(config.n, 1);
    p.seed = config.seed;
    p.validate();

    const std::uint64_t slots = p.total_slots();
    double load_sum = 0;
    std::uint64_t survived = 0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      FilterParams trial = p;
      trial.seed = config.seed + t;
      const std::uint64_t reached = fill_until_failure(trial, slots);
      load_sum += static_cast<double>(reached) / static_cast<double>(slots);
      survived += reached >= config.n;
    }
    const double trials = static_cast<double>(std::max<std::uint64_t>(config.trials, 1));
    const double elapsed = clock.elapsed_ms();

    TrialRecord load = base_record("compare_load", p, config.n);
    load.trials = config.trials;
    load.successes = config.trials;
    load.measured = load_sum / trials;
    load.predicted_bound = theoretical_load(config.b);
    load.wall_time_ms = elapsed;
    out.push_back(std::move(load));

    TrialRecord fail = base_record("compare_failure", p, config.n);
    fail.trials = config.trials;
    fail.successes = survived;
    fail.measured = 1.0 - static_cast<double>(survived) / trials;
    fail.predicted_bound = predicted_failure(config.n, config.b, config.f);
    fail.wall_time_ms = elapsed;
    out.push_back(std::move(fail));
  }
  sort_records(out);
  return out;
}

TrialRecord bloom_baseline_rate(std::uint64_t n, std::uint64_t bits, std::uint64_t queries,
                                std::uint64_t seed, std::optional<unsigned> k, bool timing) {
  Stopwatch clock(timing);
  BloomFilter bloom(bits, k.value_or(BloomFilter::optimal_k(bits, n)), seed);
  for (std::uint64_t key = 0; key < n; ++key) {
    bloom.insert(key);
  }
  std::uint64_t hits = 0;
  for (std::uint64_t key = n; key < n + queries; ++key) {
    hits += bloom.contains(key);
  }
  TrialRecord r;
  r.experiment = "bloom";
  r.variant = "bloom";
  r.n = n;
  r.b = bloom.k();  // the b column carries k for this experiment
  r.num_subtables = bits;
  r.seed = seed;
  r.trials = queries;
  r.successes = hits;
  r.measured = queries == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(queries);
  r.predicted_bound = std::ldexp(1.0, -static_cast<int>(bloom.k()));
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

SelftestReport run_bitmatch_selftest() {
  struct Geometry {
    unsigned f;
    unsigned max_lanes;
  };
  SelftestReport report;
  for (Geometry g : {Geometry{2, 3}, Geometry{3, 3}, Geometry{4, 2}}) {
    for (unsigned lanes = 1; lanes <= g.max_lanes; ++lanes) {
      const auto F = bitmatch::make_lane_constant(g.f, lanes);
      const std::uint64_t words = std::uint64_t{1} << (g.f * lanes);
      for (std::uint64_t w = 0; w < words; ++w) {
        for (std::uint32_t v = 1; v < (1u << g.f); ++v) {
          const Fingerprint fp{v};
          ++report.cases;
          if (bitmatch::find_fingerprint(w, fp, F) !=
              bitmatch::naive_find({w, g.f, lanes}, fp)) {
            ++report.mismatches;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace sckf::lab
