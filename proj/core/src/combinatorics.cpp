#include "occupancy/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace occupancy {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double result() const { return sum + comp; }
};

}  // namespace

LogReal log_binomial(std::uint64_t a, std::int64_t b) {
  if (b < 0 || static_cast<std::uint64_t>(b) > a) return LogReal::zero();
  std::uint64_t k = static_cast<std::uint64_t>(b);
  if (k > a - k) k = a - k;
  if (k == 0) return LogReal::one();
  if (k <= 256) {
    // Direct sum avoids the catastrophic cancellation of the lgamma
    // triple when b << a.
    CompensatedSum s;
    for (std::uint64_t i = 0; i < k; ++i) {
      s.add(std::log(static_cast<double>(a - i) / static_cast<double>(i + 1)));
    }
    return LogReal::from_log(s.result());
  }
  const double l = std::lgamma(static_cast<double>(a) + 1.0) -
                   std::lgamma(static_cast<double>(k) + 1.0) -
                   std::lgamma(static_cast<double>(a - k) + 1.0);
  return LogReal::from_log(l);
}

LogReal log_factorial(std::uint64_t n) {
  return LogReal::from_log(std::lgamma(static_cast<double>(n) + 1.0));
}

TruncatedPoly<LogReal> truncated_binomial_poly(std::uint64_t S, std::uint64_t R) {
  if (S < 1 || R < 1 || R > S + 1) {
    throw std::invalid_argument("truncated_binomial_poly: need S >= 1 and 1 <= R <= S+1");
  }
  TruncatedPoly<LogReal> p;
  p.cap = static_cast<std::int64_t>(R) - 1;
  p.coeffs.reserve(R);
  for (std::uint64_t t = 0; t < R; ++t) {
    p.coeffs.push_back(log_binomial(S, static_cast<std::int64_t>(t)));
  }
  return p;
}

TruncatedPoly<BigCount> truncated_binomial_poly_exact(std::uint64_t S, std::uint64_t R) {
  if (S < 1 || R < 1 || R > S + 1) {
    throw std::invalid_argument("truncated_binomial_poly_exact: need S >= 1 and 1 <= R <= S+1");
  }
  TruncatedPoly<BigCount> p;
  p.cap = static_cast<std::int64_t>(R) - 1;
  p.coeffs.reserve(R);
  for (std::uint64_t t = 0; t < R; ++t) {
    p.coeffs.push_back(binomial_exact(S, static_cast<std::int64_t>(t)));
  }
  return p;
}

LogReal poly_pow_coeff(const TruncatedPoly<LogReal>& p, std::uint64_t m, std::uint64_t s) {
  const std::int64_t cap = static_cast<std::int64_t>(s);
  return pow_truncated(p, m, cap).coeff(cap);
}

namespace {

template <class Coeff>
Coeff composition_weight_impl(const TruncatedPoly<Coeff>& row, std::uint64_t m,
                              std::uint64_t s) {
  // Row recurrence W_k = W_{k-1} * row, truncated at s.
  const std::int64_t cap = static_cast<std::int64_t>(s);
  TruncatedPoly<Coeff> acc = TruncatedPoly<Coeff>::one(cap);
  for (std::uint64_t k = 0; k < m; ++k) acc = mul_truncated(acc, row, cap);
  return acc.coeff(cap);
}

}  // namespace

LogReal restricted_composition_weight(std::uint64_t S, std::uint64_t R, std::uint64_t m,
                                      std::uint64_t s) {
  if (m == 0) return s == 0 ? LogReal::one() : LogReal::zero();
  if (s > m * (R - 1)) return LogReal::zero();
  return composition_weight_impl(truncated_binomial_poly(S, R), m, s);
}

BigCount restricted_composition_weight_exact(std::uint64_t S, std::uint64_t R,
                                             std::uint64_t m, std::uint64_t s) {
  if (m == 0) return BigCount(s == 0 ? 1 : 0);
  if (s > m * (R - 1)) return BigCount(0);
  return composition_weight_impl(truncated_binomial_poly_exact(S, R), m, s);
}

FallingFactorialApprox falling_factorial_approx(std::uint64_t a, std::uint64_t b) {
  if (2 * b >= a) {
    throw std::domain_error("falling_factorial_approx: requires B < A/2");
  }
  const double A = static_cast<double>(a);
  const double B = static_cast<double>(b);
  const double log_approx = B * std::log(A) - (B * B - B) / (2.0 * A);
  return {LogReal::from_log(log_approx), B * B * B / (A * A)};
}

UnimodalCheckResult check_log_concave(const std::vector<LogReal>& seq) {
  UnimodalCheckResult res;
  const std::size_t n = seq.size();

  std::size_t first = n, last = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seq[i].is_zero()) {
      if (first == n) first = i;
      last = i;
    }
  }
  if (first == n) return res;  // all zero

  // A zero strictly inside the support breaks unimodality.
  for (std::size_t i = first; i <= last; ++i) {
    if (seq[i].is_zero()) {
      res.is_log_concave = false;
      res.first_violation_index = i;
      res.max_violation_ratio = std::numeric_limits<double>::infinity();
      return res;
    }
  }

  // a(s)^2 >= a(s-1) a(s+1), compared in log space with 1e-9 slack so
  // geometric (equality) sequences are not tripped by rounding.
  constexpr double kSlack = 1e-9;
  for (std::size_t s = first + 1; s + 1 <= last; ++s) {
    const double excess = seq[s - 1].log() + seq[s + 1].log() - 2.0 * seq[s].log();
    const double ratio = std::exp(excess);
    res.max_violation_ratio = std::max(res.max_violation_ratio, ratio);
    if (excess > kSlack && !res.first_violation_index) {
      res.is_log_concave = false;
      res.first_violation_index = s;
    }
  }
  return res;
}

}  // namespace occupancy
