#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace occupancy {

/// Requested computation cannot be run under the configured cost budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the requested operation
/// (e.g. inverting G_j at a value off its decreasing branch).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Random K-subset of {1..N}; the universe splits into floor(N/S)
/// blocks of length S, each of which must receive at least R elements.
/// Elements of the leftover segment can be chosen but carry no
/// requirement.
struct SubsetModelParams {
  std::uint64_t universe = 1;   // N
  std::uint64_t block_len = 1;  // S
  std::uint64_t sample = 0;     // K
  std::uint64_t min_hits = 1;   // R

  std::uint64_t num_blocks() const { return universe / block_len; }
  std::uint64_t remainder() const { return universe - num_blocks() * block_len; }

  void validate() const {
    if (block_len < 1 || block_len > universe) {
      throw std::invalid_argument("subset model: need 1 <= S <= N");
    }
    if (sample > universe) throw std::invalid_argument("subset model: need K <= N");
    if (min_hits < 1) throw std::invalid_argument("subset model: need R >= 1");
  }
};

/// m balls thrown independently and uniformly into n bins; every bin
/// must end with at least R balls.
struct BinsModelParams {
  std::uint64_t balls = 0;     // m
  std::uint64_t bins = 1;      // n
  std::uint64_t min_load = 1;  // R

  void validate() const {
    if (bins < 1) throw std::invalid_argument("bins model: need n >= 1");
    if (min_load < 1) throw std::invalid_argument("bins model: need R >= 1");
  }
};

enum class Method { exact, bonferroni, asymptotic, monte_carlo };

const char* method_name(Method m);

/// A probability with optional rigorous bounds and provenance tag.
struct ProbEstimate {
  double value = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;
  Method method = Method::exact;
  /// Exact value as "p/q" when computed in rational arithmetic.
  std::optional<std::string> exact_rational;
  std::map<std::string, std::string> meta;
};

/// Alternating partial sums S_T of sum_i (-1)^{i+1} beta_i together with
/// the Bonferroni sandwich for the success probability: every even
/// prefix bounds the failure sum from below and every odd prefix from
/// above, so lower = 1 - min(odd S_T) and upper = 1 - max(even S_T),
/// clamped to [0,1]. When the terms are exhausted in exact arithmetic,
/// lower == upper == the exact probability.
struct BonferroniBounds {
  std::vector<double> partial_sums;
  double lower = 0.0;
  double upper = 1.0;
  std::uint64_t terms_used = 0;
  bool exact_arithmetic = false;
  bool exhausted = false;
  /// Exact probability as "p/q" when the full sum ran in rationals.
  std::optional<std::string> exact_rational;
};

}  // namespace occupancy
