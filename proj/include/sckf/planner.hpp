// Usable under the terms in the Apache License, Version 2.0.
//
// Parameter selection for the simplified filter. All bounds are the explicit
// closed forms with no hidden constants; logs without a base are base 2.
//
//   block size vs slack:  b >= 1 + ln(1/delta) / (1 - ln 2)
//   subtable balance:     f >= log2(3 (s+1) ln n / (delta^4 b))
//   subtable failure:     f >  (s+1) log2(n) / b      (or s log2(n) / b)
//   false positives:      eps <= 2n / (N (2^f - 1))
//   achievable load:      1 - delta - delta^2

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sckf::planner {

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest integer b with b >= 1 + ln(1/delta)/(1 - ln 2). Throws
/// std::domain_error unless 0 < delta <= 1.
unsigned min_block_size(double delta);

/// Largest delta allowed by block size b: exp(-(b-1)(1 - ln 2)).
double max_delta(unsigned b);

/// Unrounded log2(3 (s+1) ln n / (delta^4 b)).
double f_balance_exact(double n, double s, double delta, double b);
/// Ceiling of f_balance_exact. May be <= 0 for tiny n.
int f_balance_bound(double n, double s, double delta, double b);

enum class SubtableForm {
  Theorem,  // f > (s+1) log2 n / b, includes the union bound over insertions
  Lemma,    // f > s log2 n / b
};

double f_subtable_exact(double n, double s, double b,
                        SubtableForm form = SubtableForm::Theorem);
/// Smallest integer strictly above f_subtable_exact.
int f_subtable_bound(double n, double s, double b,
                     SubtableForm form = SubtableForm::Theorem);

/// 2n / (N (2^f - 1)) for n <= N b. Holds with or without a stash; b does not
/// enter the bound.
double fp_bound(double n, double cells, double b, unsigned f);
/// Same bound written through the load: 2b(1 - delta) / (2^f - 1).
double fp_bound_from_load(double b, double delta, unsigned f);

/// Smallest f with 2b * load / (2^f - 1) <= target.
int f_for_fp_rate(double target, double b, double load);

struct PlanRequest {
  std::uint64_t n = 0;
  double s = 1.0;
  std::optional<double> delta;
  std::optional<unsigned> b;
  std::optional<double> target_fp_rate;
  SubtableForm form = SubtableForm::Theorem;
};

struct PlanResult {
  unsigned b = 0;
  double delta = 0;
  double load = 0;  // 1 - delta - delta^2
  double mu = 0;    // expected elements per subtable, 2^f b load
  double f_balance_exact = 0;
  int f_balance = 0;
  double f_subtable_exact = 0;
  int f_subtable = 0;
  std::optional<int> f_fp;
  unsigned f = 0;
  std::uint32_t num_subtables = 0;
  std::uint64_t cells = 0;
  double achieved_load = 0;  // n / (N b); at most `load`
  double predicted_fp = 0;
  std::vector<std::string> warnings;
};

/// Throws PlanError for inconsistent or infeasible requests.
PlanResult plan(const PlanRequest& req);

/// Re-checks every inequality plan() is built from. Returns the failures.
std::vector<std::string> audit(const PlanRequest& req, const PlanResult& result);

}  // namespace sckf::planner
