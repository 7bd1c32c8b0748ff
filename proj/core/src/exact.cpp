#include "occupancy/exact.hpp"

#include <algorithm>
#include <cmath>

#include "occupancy/combinatorics.hpp"
#include "occupancy/logreal.hpp"
#include "occupancy/poly.hpp"

namespace occupancy {

const char* method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::bonferroni: return "bonferroni";
    case Method::asymptotic: return "asymptotic";
    case Method::monte_carlo: return "mc";
  }
  return "unknown";
}

double subset_exact_cost(const SubsetModelParams& p) {
  return static_cast<double>(p.num_blocks()) * static_cast<double>(p.sample) *
         static_cast<double>(std::min(p.block_len, p.sample));
}

double bins_exact_cost(const BinsModelParams& p) {
  const double cap = static_cast<double>(std::min(p.balls, p.bins * p.min_load));
  return static_cast<double>(p.bins) * static_cast<double>(p.balls) * cap;
}

namespace {

// Block polynomial sum_{j=R}^{S} C(S,j) x^j truncated at cap.
TruncatedPoly<BigCount> block_poly_exact(std::uint64_t S, std::uint64_t R, std::int64_t cap) {
  TruncatedPoly<BigCount> p;
  p.cap = cap;
  const std::int64_t deg = std::min<std::int64_t>(cap, static_cast<std::int64_t>(S));
  p.coeffs.assign(static_cast<std::size_t>(std::max<std::int64_t>(deg + 1, 0)), BigCount(0));
  for (std::int64_t j = static_cast<std::int64_t>(R); j <= deg; ++j) {
    p.coeffs[static_cast<std::size_t>(j)] = binomial_exact(S, j);
  }
  return p;
}

TruncatedPoly<LogReal> block_poly_log(std::uint64_t S, std::uint64_t R, std::int64_t cap) {
  TruncatedPoly<LogReal> p;
  p.cap = cap;
  const std::int64_t deg = std::min<std::int64_t>(cap, static_cast<std::int64_t>(S));
  p.coeffs.assign(static_cast<std::size_t>(std::max<std::int64_t>(deg + 1, 0)), LogReal::zero());
  for (std::int64_t j = static_cast<std::int64_t>(R); j <= deg; ++j) {
    p.coeffs[static_cast<std::size_t>(j)] = log_binomial(S, j);
  }
  return p;
}

// (1+x)^rem truncated at cap.
TruncatedPoly<BigCount> remainder_poly_exact(std::uint64_t rem, std::int64_t cap) {
  TruncatedPoly<BigCount> p;
  p.cap = cap;
  const std::int64_t deg = std::min<std::int64_t>(cap, static_cast<std::int64_t>(rem));
  p.coeffs.reserve(static_cast<std::size_t>(deg) + 1);
  for (std::int64_t i = 0; i <= deg; ++i) p.coeffs.push_back(binomial_exact(rem, i));
  return p;
}

TruncatedPoly<LogReal> remainder_poly_log(std::uint64_t rem, std::int64_t cap) {
  TruncatedPoly<LogReal> p;
  p.cap = cap;
  const std::int64_t deg = std::min<std::int64_t>(cap, static_cast<std::int64_t>(rem));
  p.coeffs.reserve(static_cast<std::size_t>(deg) + 1);
  for (std::int64_t i = 0; i <= deg; ++i) p.coeffs.push_back(log_binomial(rem, i));
  return p;
}

LogReal subset_success_log(const SubsetModelParams& p) {
  const std::int64_t cap = static_cast<std::int64_t>(p.sample);
  TruncatedPoly<LogReal> gf = pow_truncated(block_poly_log(p.block_len, p.min_hits, cap),
                                            p.num_blocks(), cap);
  if (p.remainder() > 0) {
    gf = mul_truncated(gf, remainder_poly_log(p.remainder(), cap), cap);
  }
  const LogReal num = gf.coeff(cap);
  if (num.is_zero()) return LogReal::zero();
  return num / log_binomial(p.universe, static_cast<std::int64_t>(p.sample));
}

// Truncated exponential series sum_{j=R}^{cap} x^j/j!.
TruncatedPoly<BigRat> etrunc_poly_exact(std::uint64_t R, std::int64_t cap) {
  TruncatedPoly<BigRat> p;
  p.cap = cap;
  p.coeffs.assign(static_cast<std::size_t>(cap) + 1, BigRat(0));
  for (std::int64_t j = static_cast<std::int64_t>(R); j <= cap; ++j) {
    p.coeffs[static_cast<std::size_t>(j)] =
        BigRat(BigCount(1), factorial_exact(static_cast<std::uint64_t>(j)));
  }
  return p;
}

TruncatedPoly<LogReal> etrunc_poly_log(std::uint64_t R, std::int64_t cap) {
  TruncatedPoly<LogReal> p;
  p.cap = cap;
  p.coeffs.assign(static_cast<std::size_t>(cap) + 1, LogReal::zero());
  for (std::int64_t j = static_cast<std::int64_t>(R); j <= cap; ++j) {
    p.coeffs[static_cast<std::size_t>(j)] =
        LogReal::from_log(-std::lgamma(static_cast<double>(j) + 1.0));
  }
  return p;
}

LogReal bins_success_log(const BinsModelParams& p) {
  const std::int64_t cap = static_cast<std::int64_t>(p.balls);
  if (p.balls < p.bins * p.min_load) return LogReal::zero();
  const TruncatedPoly<LogReal> gf = pow_truncated(etrunc_poly_log(p.min_load, cap), p.bins, cap);
  const LogReal coeff = gf.coeff(cap);
  if (coeff.is_zero()) return LogReal::zero();
  LogReal r = coeff * log_factorial(p.balls);
  r /= LogReal::from_log(static_cast<double>(p.balls) * std::log(static_cast<double>(p.bins)));
  return r;
}

}  // namespace

BigRat subset_prob_exact_rational(const SubsetModelParams& p) {
  p.validate();
  const std::int64_t cap = static_cast<std::int64_t>(p.sample);
  TruncatedPoly<BigCount> gf = pow_truncated(block_poly_exact(p.block_len, p.min_hits, cap),
                                             p.num_blocks(), cap);
  if (p.remainder() > 0) {
    gf = mul_truncated(gf, remainder_poly_exact(p.remainder(), cap), cap);
  }
  BigRat r(gf.coeff(cap), binomial_exact(p.universe, static_cast<std::int64_t>(p.sample)));
  r.canonicalize();
  return r;
}

BigRat bins_prob_exact_rational(const BinsModelParams& p) {
  p.validate();
  if (p.balls < p.bins * p.min_load) return BigRat(0);
  const std::int64_t cap = static_cast<std::int64_t>(p.balls);
  const TruncatedPoly<BigRat> gf = pow_truncated(etrunc_poly_exact(p.min_load, cap), p.bins, cap);
  BigCount denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), p.bins, p.balls);
  BigRat r = gf.coeff(cap) * BigRat(factorial_exact(p.balls), denom);
  r.canonicalize();
  return r;
}

ProbEstimate subset_prob_exact(const SubsetModelParams& p, const CostBudget& budget) {
  p.validate();
  const double cost = subset_exact_cost(p);
  if (cost > budget.max_ops) {
    throw BudgetExceeded("subset exact solver over budget (cost " + std::to_string(cost) +
                         "); use bonferroni, asymptotic or mc");
  }
  ProbEstimate est;
  est.method = Method::exact;
  if (cost <= budget.max_exact_rational_ops) {
    const BigRat q = subset_prob_exact_rational(p);
    est.value = q.get_d();
    est.exact_rational = rational_string(q);
    est.meta["arithmetic"] = "rational";
  } else {
    est.value = std::min(1.0, subset_success_log(p).value());
    est.meta["arithmetic"] = "log_double";
    est.meta["relative_error"] = "~1e-12 (nonnegative-coefficient convolution)";
  }
  est.lower = est.upper = est.value;
  return est;
}

ProbEstimate bins_prob_exact(const BinsModelParams& p, const CostBudget& budget) {
  p.validate();
  const double cost = bins_exact_cost(p);
  if (cost > budget.max_ops) {
    throw BudgetExceeded("bins exact solver over budget (cost " + std::to_string(cost) +
                         "); use bonferroni, asymptotic or mc");
  }
  ProbEstimate est;
  est.method = Method::exact;
  if (cost <= budget.max_exact_rational_ops) {
    const BigRat q = bins_prob_exact_rational(p);
    est.value = q.get_d();
    est.exact_rational = rational_string(q);
    est.meta["arithmetic"] = "rational";
  } else {
    est.value = std::min(1.0, bins_success_log(p).value());
    est.meta["arithmetic"] = "log_double";
    est.meta["relative_error"] = "~1e-12 (nonnegative-coefficient convolution)";
  }
  est.lower = est.upper = est.value;
  return est;
}

}  // namespace occupancy
