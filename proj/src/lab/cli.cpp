// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/lab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "sckf/lab/experiments.hpp"
#include "sckf/planner.hpp"

namespace sckf::lab {
namespace {

struct Common {
  std::uint64_t n = 1000;
  unsigned b = 4;
  unsigned f = 12;
  std::optional<std::uint32_t> subtables;
  std::uint32_t stash = 0;
  std::string variant = "simplified";
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t queries = 1000000;
  double load = 0.95;
  std::string out_path;
  std::string format = "csv";
  bool timing = false;
};

const std::map<std::string, Variant> kVariants = {{"simplified", Variant::Simplified},
                                                   {"original", Variant::Original}};

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_path, "Write output to this file instead of stdout");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--timing", c.timing, "Record wall time (output is then not reproducible)");
}

void add_geometry(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "Number of member elements");
  cmd->add_option("--b", c.b, "Fingerprints per cell")->check(CLI::Range(1, 255));
  cmd->add_option("--f", c.f, "Bits per fingerprint")->check(CLI::Range(2, 32));
  cmd->add_option("--subtables", c.subtables, "Number of 2^f-cell subtables");
  cmd->add_option("--stash", c.stash, "Stash entries per subtable (simplified only)");
  cmd->add_option("--variant", c.variant, "simplified or original")
      ->check(CLI::IsMember({"simplified", "original"}));
  cmd->add_option("--trials", c.trials, "Number of seeded trials");
  cmd->add_option("--seed", c.seed, "First seed; trial t uses seed + t");
}

void emit(const Common& c, std::vector<TrialRecord> records, std::ostream& out) {
  sort_records(records);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out_path.empty()) {
    file.open(c.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw std::runtime_error("cannot open " + c.out_path);
    }
    sink = &file;
  }
  if (c.format == "json") {
    write_json(*sink, records);
  } else {
    write_csv(*sink, records);
  }
}

std::vector<std::uint64_t> seeds_of(const Common& c) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t t = 0; t < std::max<std::uint64_t>(c.trials, 1); ++t) {
    seeds.push_back(c.seed + t);
  }
  return seeds;
}

void print_plan(const planner::PlanRequest& req, const planner::PlanResult& r,
                const std::string& format, std::ostream& out) {
  nlohmann::ordered_json j;
  j["n"] = req.n;
  j["s"] = req.s;
  j["b"] = r.b;
  j["delta"] = r.delta;
  j["load_target"] = r.load;
  j["mu"] = r.mu;
  j["f_balance_exact"] = r.f_balance_exact;
  j["f_balance"] = r.f_balance;
  j["f_subtable_exact"] = r.f_subtable_exact;
  j["f_subtable"] = r.f_subtable;
  j["subtable_form"] = req.form == planner::SubtableForm::Theorem ? "theorem" : "lemma";
  if (r.f_fp) {
    j["target_fp_rate"] = *req.target_fp_rate;
    j["f_fp"] = *r.f_fp;
  }
  j["f"] = r.f;
  j["num_subtables"] = r.num_subtables;
  j["cells"] = r.cells;
  j["achieved_load"] = r.achieved_load;
  j["predicted_fp_bound"] = r.predicted_fp;
  j["note"] = "bounds are the explicit closed forms; the O(1) terms are not added";
  j["warnings"] = r.warnings;

  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  const bool csv = format == "csv";
  if (csv) {
    out << "field,value\n";
  }
  for (const auto& [key, value] : j.items()) {
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    out << key << (csv ? "," : " = ") << text << '\n';
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments with simplified cuckoo filters", "sckf-lab"};
  app.require_subcommand(1);

  // plan
  planner::PlanRequest plan_req;
  std::optional<unsigned> plan_b;
  std::optional<double> plan_delta;
  std::optional<double> plan_fp;
  bool plan_lemma = false;
  std::string plan_format = "text";
  std::string plan_out;
  auto* plan = app.add_subcommand("plan", "Choose b, f and table size for n elements");
  plan->add_option("--n", plan_req.n, "Target element count")->required();
  plan->add_option("--s", plan_req.s, "Failure exponent: target probability 1/n^s");
  plan->add_option("--b", plan_b, "Block size");
  plan->add_option("--delta", plan_delta, "Load slack delta");
  plan->add_option("--fp-rate", plan_fp, "Target false-positive rate");
  plan->add_flag("--lemma", plan_lemma, "Use f > s log n / b instead of (s+1) log n / b");
  plan->add_option("--format", plan_format)->check(CLI::IsMember({"text", "csv", "json"}));
  plan->add_option("--out", plan_out);

  Common fp_opts;
  auto* fprate = app.add_subcommand("fprate", "Measured false-positive rate vs bound");
  add_geometry(fprate, fp_opts);
  add_output(fprate, fp_opts);
  fprate->add_option("--queries", fp_opts.queries, "Non-member queries per seed");
  fprate->add_option("--load", fp_opts.load, "Target load when --subtables is absent")
      ->check(CLI::Range(0.0, 1.0));

  Common ls_opts;
  ls_opts.n = 100000;
  ls_opts.trials = 20;
  std::vector<double> loads = {0.1, 0.3, 0.5, 0.7, 0.8, 0.85, 0.9, 0.95, 0.97, 0.99};
  auto* loadsweep = app.add_subcommand("loadsweep", "Construction success vs target load");
  add_geometry(loadsweep, ls_opts);
  add_output(loadsweep, ls_opts);
  loadsweep->add_option("--loads", loads, "Target loads")->delimiter(',');

  Common fs_opts;
  fs_opts.n = 100000;
  fs_opts.trials = 100;
  fs_opts.load = 0.9;
  std::vector<unsigned> f_grid = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto* failsweep = app.add_subcommand("failsweep", "Construction failure vs fingerprint bits");
  add_geometry(failsweep, fs_opts);
  add_output(failsweep, fs_opts);
  failsweep->add_option("--load", fs_opts.load, "Target load")->check(CLI::Range(0.0, 1.0));
  failsweep->add_option("--f-grid", f_grid, "Fingerprint lengths to try")->delimiter(',');

  Common cmp_opts;
  cmp_opts.trials = 20;
  std::optional<std::uint64_t> cmp_n;
  auto* compare = app.add_subcommand("compare", "Simplified vs original variant");
  add_geometry(compare, cmp_opts);
  add_output(compare, cmp_opts);
  compare->remove_option(compare->get_option("--n"));
  compare->add_option("--n", cmp_n, "Elements for the failure record (default 0.9 N b)");

  Common bl_opts;
  bl_opts.n = 10000;
  std::optional<std::uint64_t> bloom_bits;
  std::optional<unsigned> bloom_k;
  auto* bloom = app.add_subcommand("bloom", "Bloom filter baseline");
  bloom->add_option("--n", bl_opts.n, "Number of member elements");
  bloom->add_option("--bits", bloom_bits, "Filter size in bits (default 10 n)");
  bloom->add_option("--k", bloom_k, "Probe count (default round(bits ln2 / n))");
  bloom->add_option("--queries", bl_opts.queries, "Non-member queries");
  bloom->add_option("--trials", bl_opts.trials, "Number of seeds");
  bloom->add_option("--seed", bl_opts.seed, "First seed");
  add_output(bloom, bl_opts);

  auto* selftest = app.add_subcommand("selftest", "Exhaustive bit-parallel matcher check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (plan->parsed()) {
      plan_req.b = plan_b;
      plan_req.delta = plan_delta;
      plan_req.target_fp_rate = plan_fp;
      plan_req.form = plan_lemma ? planner::SubtableForm::Lemma : planner::SubtableForm::Theorem;
      const auto result = planner::plan(plan_req);
      if (plan_out.empty()) {
        print_plan(plan_req, result, plan_format, out);
      } else {
        std::ofstream file(plan_out, std::ios::trunc);
        print_plan(plan_req, result, plan_format, file);
      }
      return kExitOk;
    }

    if (fprate->parsed()) {
      const Common& c = fp_opts;
      FilterParams p;
      p.capacity_n = std::max<std::uint64_t>(c.n, 1);
      p.block_size_b = c.b;
      p.fingerprint_bits_f = c.f;
      p.variant = kVariants.at(c.variant);
      p.stash_capacity = c.stash;
      p.num_subtables = c.subtables.value_or(subtables_for(c.n, c.load, c.b, c.f, p.variant));
      p.validate();
      const auto seeds = seeds_of(c);
      auto records = run_fp_experiment(p, c.n, c.queries, seeds, c.timing);
      emit(c, records, out);
      const bool any_failed = std::any_of(records.begin(), records.end(),
                                          [](const TrialRecord& r) { return r.trials == 0; });
      if (any_failed) {
        err << "warning: construction failed for some seeds (trials = 0 rows)\n";
        return kExitInfeasible;
      }
      return kExitOk;
    }

    if (loadsweep->parsed()) {
      const Common& c = ls_opts;
      LoadSweepConfig cfg;
      cfg.b = c.b;
      cfg.f = c.f;
      cfg.n = c.n;
      cfg.loads = loads;
      cfg.trials = c.trials;
      cfg.seed = c.seed;
      cfg.variant = kVariants.at(c.variant);
      cfg.stash_capacity = c.stash;
      cfg.timing = c.timing;
      emit(c, run_load_sweep(cfg), out);
      return kExitOk;
    }

    if (failsweep->parsed()) {
      const Common& c = fs_opts;
      FailureSweepConfig cfg;
      cfg.n = c.n;
      cfg.b = c.b;
      cfg.load = c.load;
      cfg.f_grid = f_grid;
      cfg.trials = c.trials;
      cfg.seed = c.seed;
      cfg.variant = kVariants.at(c.variant);
      cfg.stash_capacity = c.stash;
      cfg.timing = c.timing;
      emit(c, run_failure_sweep_f(cfg), out);
      return kExitOk;
    }

    if (compare->parsed()) {
      const Common& c = cmp_opts;
      CompareConfig cfg;
      cfg.b = c.b;
      cfg.f = c.f;
      cfg.num_subtables = c.subtables.value_or(1);
      cfg.trials = c.trials;
      cfg.seed = c.seed;
      cfg.timing = c.timing;
      const auto slots = (std::uint64_t{cfg.num_subtables} << cfg.f) * cfg.b;
      cfg.n = cmp_n.value_or(static_cast<std::uint64_t>(0.9 * static_cast<double>(slots)));
      emit(c, run_variant_compare(cfg), out);
      return kExitOk;
    }

    if (bloom->parsed()) {
      const Common& c = bl_opts;
      const std::uint64_t bits = bloom_bits.value_or(10 * c.n);
      if (bits <= c.n) {
        err << "error: --bits must exceed --n\n";
        return kExitUsage;
      }
      std::vector<TrialRecord> records;
      for (std::uint64_t seed : seeds_of(c)) {
        records.push_back(bloom_baseline_rate(c.n, bits, c.queries, seed, bloom_k, c.timing));
      }
      emit(c, records, out);
      return kExitOk;
    }

    if (selftest->parsed()) {
      const auto report = run_bitmatch_selftest();
      out << "bitmatch selftest: " << report.cases << " cases, " << report.mismatches
          << " mismatches\n";
      return report.mismatches == 0 ? kExitOk : kExitInfeasible;
    }
  } catch (const planner::PlanError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sckf::lab
