#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "occupancy/asymptotics.hpp"

namespace occupancy {

/// One row of machine-readable output: echoed parameters, the method
/// tag, the value with optional bounds, flattened validity ratios and,
/// where computed, the exact value as "p/q". Serialization is
/// deterministic for fixed inputs and seed, except for runtime_ms.
struct OutputRecord {
  std::string model;  // "subset" | "bins"
  std::optional<std::uint64_t> N, S, K;  // subset parameters
  std::optional<std::uint64_t> m, n;     // bins parameters
  std::optional<std::uint64_t> R;
  std::optional<double> a;               // perturbation offset
  std::string method;
  std::optional<double> value;
  std::optional<double> lower, upper;
  std::optional<std::string> exact;      // "p/q"
  std::optional<double> c;
  std::optional<double> target_prob;
  std::optional<std::uint64_t> trials, seed;

  std::optional<double> ratio_a, ratio_b, ratio_c1, ratio_c2, alpha;
  std::optional<std::string> class_a, class_b, class_c1, class_c2;
  std::optional<double> r_sqrt_ratio, m_n2_ratio, nr_m_ratio;
  std::optional<std::string> class_r_sqrt, class_m_n2, class_nr_m;

  std::int64_t runtime_ms = 0;

  void apply_validity(const ValidityReport& v);
};

/// Doubles render with 12 significant digits; non-finite values render
/// as the strings "inf"/"-inf"/"nan".
std::string format_double(double v);

/// One JSON object, fixed key order, absent fields omitted.
std::string to_json(const OutputRecord& r);

/// RFC 4180 CSV: fixed column set, empty cells for absent fields.
std::string csv_header();
std::string to_csv_row(const OutputRecord& r);

/// Human-readable alignment, not machine-parsed.
std::string to_table(const std::vector<OutputRecord>& records);

/// Inverse of to_json (used by the round-trip contract tests).
OutputRecord record_from_json(const std::string& line);

}  // namespace occupancy
