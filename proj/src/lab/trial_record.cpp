// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/lab/trial_record.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace sckf::lab {
namespace {

constexpr int kFieldCount = 13;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

auto sort_key(const TrialRecord& r) {
  return std::tie(r.experiment, r.variant, r.n, r.b, r.f, r.num_subtables, r.stash_capacity,
                  r.seed);
}

template <class T>
T parse_number(const std::string& field) {
  T value{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw std::runtime_error("bad numeric field '" + field + "'");
  }
  return value;
}

}  // namespace

void sort_records(std::vector<TrialRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const TrialRecord& a, const TrialRecord& b) {
                     return sort_key(a) < sort_key(b);
                   });
}

std::string csv_header() {
  return "experiment,variant,n,b,f,num_subtables,stash_capacity,seed,trials,successes,"
         "measured,predicted_bound,wall_time_ms";
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << csv_header() << '\n';
  for (const auto& r : records) {
    out << r.experiment << ',' << r.variant << ',' << r.n << ',' << r.b << ',' << r.f << ','
        << r.num_subtables << ',' << r.stash_capacity << ',' << r.seed << ',' << r.trials << ','
        << r.successes << ',' << format_double(r.measured) << ','
        << format_double(r.predicted_bound) << ',' << format_double(r.wall_time_ms) << '\n';
  }
}

void write_json(std::ostream& out, std::span<const TrialRecord> records) {
  auto rows = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({{"experiment", r.experiment},
                    {"variant", r.variant},
                    {"n", r.n},
                    {"b", r.b},
                    {"f", r.f},
                    {"num_subtables", r.num_subtables},
                    {"stash_capacity", r.stash_capacity},
                    {"seed", r.seed},
                    {"trials", r.trials},
                    {"successes", r.successes},
                    {"measured", r.measured},
                    {"predicted_bound", r.predicted_bound},
                    {"wall_time_ms", r.wall_time_ms}});
  }
  out << rows.dump(2) << '\n';
}

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    throw std::runtime_error("missing or unexpected CSV header");
  }
  std::vector<TrialRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) {
      fields.push_back(field);
    }
    if (fields.size() != kFieldCount) {
      throw std::runtime_error("expected 13 fields, got " + std::to_string(fields.size()));
    }
    TrialRecord r;
    r.experiment = fields[0];
    r.variant = fields[1];
    r.n = parse_number<std::uint64_t>(fields[2]);
    r.b = parse_number<unsigned>(fields[3]);
    r.f = parse_number<unsigned>(fields[4]);
    r.num_subtables = parse_number<std::uint64_t>(fields[5]);
    r.stash_capacity = parse_number<std::uint32_t>(fields[6]);
    r.seed = parse_number<std::uint64_t>(fields[7]);
    r.trials = parse_number<std::uint64_t>(fields[8]);
    r.successes = parse_number<std::uint64_t>(fields[9]);
    r.measured = parse_number<double>(fields[10]);
    r.predicted_bound = parse_number<double>(fields[11]);
    r.wall_time_ms = parse_number<double>(fields[12]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sckf::lab
