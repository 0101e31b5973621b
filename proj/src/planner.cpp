// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sckf::planner {
namespace {

constexpr double kOneMinusLn2 = 1.0 - std::numbers::ln2;
// Slack so that exact integers computed through exp/log round to themselves.
constexpr double kRoundingSlack = 1e-9;
constexpr double kDeltaWarn = 0.25;
constexpr unsigned kMaxF = 32;

int ceil_int(double x) { return static_cast<int>(std::ceil(x - kRoundingSlack)); }
int strictly_above(double x) { return static_cast<int>(std::floor(x + kRoundingSlack)) + 1; }

}  // namespace

unsigned min_block_size(double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::domain_error("delta must be in (0, 1]");
  }
  const double bound = 1.0 + std::log(1.0 / delta) / kOneMinusLn2;
  return static_cast<unsigned>(std::max(1, ceil_int(bound)));
}

double max_delta(unsigned b) {
  if (b < 1) {
    throw std::domain_error("block size must be at least 1");
  }
  return std::exp(-static_cast<double>(b - 1) * kOneMinusLn2);
}

double f_balance_exact(double n, double s, double delta, double b) {
  if (!(n > 1) || !(s > 0) || !(delta > 0 && delta < 1) || !(b > 0)) {
    throw std::domain_error("f_balance_bound: need n > 1, s > 0, 0 < delta < 1, b > 0");
  }
  return std::log2(3.0 * (s + 1.0) * std::log(n) / (std::pow(delta, 4) * b));
}

int f_balance_bound(double n, double s, double delta, double b) {
  return ceil_int(f_balance_exact(n, s, delta, b));
}

double f_subtable_exact(double n, double s, double b, SubtableForm form) {
  if (!(n > 0) || !(s > 0) || !(b > 0)) {
    throw std::domain_error("f_subtable_bound: arguments must be positive");
  }
  const double factor = form == SubtableForm::Theorem ? s + 1.0 : s;
  return factor * std::log2(n) / b;
}

int f_subtable_bound(double n, double s, double b, SubtableForm form) {
  return strictly_above(f_subtable_exact(n, s, b, form));
}

double fp_bound(double n, double cells, [[maybe_unused]] double b, unsigned f) {
  return 2.0 * n / (cells * (std::ldexp(1.0, static_cast<int>(f)) - 1.0));
}

double fp_bound_from_load(double b, double delta, unsigned f) {
  return 2.0 * b * (1.0 - delta) / (std::ldexp(1.0, static_cast<int>(f)) - 1.0);
}

int f_for_fp_rate(double target, double b, double load) {
  if (!(target > 0)) {
    throw std::domain_error("target false-positive rate must be positive");
  }
  return std::max(1, ceil_int(std::log2(2.0 * b * load / target + 1.0)));
}

PlanResult plan(const PlanRequest& req) {
  if (req.n < 2) {
    throw PlanError("n must be at least 2");
  }
  if (!(req.s >= 1.0)) {
    throw PlanError("s must be at least 1");
  }
  if (!req.b && !req.delta) {
    throw PlanError("give a block size b, a slack delta, or both");
  }

  PlanResult out;
  if (req.delta && !(*req.delta > 0.0 && *req.delta < 0.5)) {
    throw PlanError("delta must be in (0, 0.5)");
  }
  if (req.b) {
    if (*req.b < 1) {
      throw PlanError("b must be positive");
    }
    out.b = *req.b;
    out.delta = req.delta ? *req.delta : max_delta(out.b);
    if (req.delta && out.b < min_block_size(out.delta)) {
      throw PlanError("b = " + std::to_string(out.b) + " is too small for delta = " +
                      std::to_string(out.delta) + "; need b >= " +
                      std::to_string(min_block_size(out.delta)));
    }
  } else {
    out.delta = *req.delta;
    out.b = min_block_size(out.delta);
  }
  if (!(out.delta < 0.5)) {
    throw PlanError("block size " + std::to_string(out.b) + " implies delta = " +
                    std::to_string(out.delta) + " >= 0.5; use b >= 4");
  }
  if (out.delta > kDeltaWarn) {
    out.warnings.push_back("delta = " + std::to_string(out.delta) +
                           " > 0.25; the balance bound assumes small delta");
  }

  const double n = static_cast<double>(req.n);
  const double b = out.b;
  out.load = 1.0 - out.delta - out.delta * out.delta;

  out.f_balance_exact = f_balance_exact(n, req.s, out.delta, b);
  out.f_balance = ceil_int(out.f_balance_exact);
  out.f_subtable_exact = f_subtable_exact(n, req.s, b, req.form);
  out.f_subtable = strictly_above(out.f_subtable_exact);
  int f = std::max({out.f_balance, out.f_subtable, 2});
  if (req.target_fp_rate) {
    out.f_fp = f_for_fp_rate(*req.target_fp_rate, b, out.load);
    f = std::max(f, *out.f_fp);
  }
  if (f > static_cast<int>(kMaxF)) {
    throw PlanError("required fingerprint length " + std::to_string(f) + " exceeds 32 bits");
  }
  out.f = static_cast<unsigned>(f);

  const double cells_per_subtable = std::ldexp(1.0, f);
  const double subtables = std::ceil((n / b) / (out.load * cells_per_subtable));
  if (subtables > std::numeric_limits<std::uint32_t>::max()) {
    throw PlanError("too many subtables");
  }
  out.num_subtables = static_cast<std::uint32_t>(std::max(1.0, subtables));
  out.cells = std::uint64_t{out.num_subtables} << out.f;
  out.mu = cells_per_subtable * b * out.load;
  out.achieved_load = n / (static_cast<double>(out.cells) * b);
  out.predicted_fp = fp_bound(n, static_cast<double>(out.cells), b, out.f);
  if (out.f_fp) {
    out.warnings.push_back("fingerprint length set by the false-positive target");
  }

  if (auto failures = audit(req, out); !failures.empty()) {
    throw PlanError("plan violates its own bounds: " + failures.front());
  }
  return out;
}

std::vector<std::string> audit(const PlanRequest& req, const PlanResult& r) {
  std::vector<std::string> bad;
  const double n = static_cast<double>(req.n);
  if (r.b + kRoundingSlack < 1.0 + std::log(1.0 / r.delta) / kOneMinusLn2) {
    bad.push_back("b below 1 + ln(1/delta)/(1 - ln 2)");
  }
  if (r.f + kRoundingSlack < r.f_balance_exact) {
    bad.push_back("f below the balance bound");
  }
  if (!(r.f > r.f_subtable_exact)) {
    bad.push_back("f not above the subtable bound");
  }
  if (static_cast<double>(r.cells) * r.b * r.load < n) {
    bad.push_back("N b (1 - delta - delta^2) < n");
  }
  if (r.cells != (std::uint64_t{r.num_subtables} << r.f)) {
    bad.push_back("N != num_subtables * 2^f");
  }
  if (req.target_fp_rate && r.predicted_fp > *req.target_fp_rate) {
    bad.push_back("predicted false-positive bound above target");
  }
  return bad;
}

}  // namespace sckf::planner
