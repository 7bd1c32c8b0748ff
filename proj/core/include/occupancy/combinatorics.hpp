#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "occupancy/bigint.hpp"
#include "occupancy/logreal.hpp"
#include "occupancy/poly.hpp"

namespace occupancy {

/// log C(a, b). Zero element when C(a,b) = 0. Uses a compensated sum of
/// logs for small min(b, a-b) and the lgamma triple otherwise; agrees
/// with binomial_exact to better than 1e-9 relative on the log wherever
/// the exact value has at most ~10^4 digits.
LogReal log_binomial(std::uint64_t a, std::int64_t b);

/// log n! via lgamma.
LogReal log_factorial(std::uint64_t n);

/// Initial segment of degree R-1 of (1+x)^S: coefficients C(S,0..R-1).
/// Requires S >= 1 and 1 <= R <= S+1.
TruncatedPoly<LogReal> truncated_binomial_poly(std::uint64_t S, std::uint64_t R);
TruncatedPoly<BigCount> truncated_binomial_poly_exact(std::uint64_t S, std::uint64_t R);

/// Coefficient of x^s in p^m.
LogReal poly_pow_coeff(const TruncatedPoly<LogReal>& p, std::uint64_t m, std::uint64_t s);

/// Sum over D(s) = { (i_1..i_m) : sum i_j = s, 0 <= i_j <= R-1 } of
/// prod_j C(S, i_j). Computed by an m-step row recurrence, deliberately a
/// different evaluation path than poly_pow_coeff's binary powering; the
/// two must agree.
LogReal restricted_composition_weight(std::uint64_t S, std::uint64_t R, std::uint64_t m,
                                      std::uint64_t s);
BigCount restricted_composition_weight_exact(std::uint64_t S, std::uint64_t R,
                                             std::uint64_t m, std::uint64_t s);

struct FallingFactorialApprox {
  LogReal approx;       // A^B * exp(-(B^2-B)/(2A))
  double error_bound;   // B^3 / A^2
};

/// Second-order approximation of A!/(A-B)!. Requires 0 <= B < A/2; the
/// relative error is bounded by B^3/A^2 on the supported range.
FallingFactorialApprox falling_factorial_approx(std::uint64_t a, std::uint64_t b);

struct UnimodalCheckResult {
  bool is_log_concave = true;
  std::optional<std::size_t> first_violation_index;
  /// max over interior s of a(s-1)a(s+1)/a(s)^2; +inf when a zero sits
  /// between two positive terms. <= 1 for a log-concave sequence.
  double max_violation_ratio = 0.0;
};

/// Checks a(s)^2 >= a(s-1) a(s+1) on the positive support, and that the
/// support is contiguous (no zero between two positive entries).
UnimodalCheckResult check_log_concave(const std::vector<LogReal>& seq);

}  // namespace occupancy
