#include "occupancy/inclusion_exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "occupancy/combinatorics.hpp"
#include "occupancy/poly.hpp"

namespace occupancy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

BigRat clamp01(const BigRat& x) {
  if (x < 0) return BigRat(0);
  if (x > 1) return BigRat(1);
  return x;
}

// Deficient-block weights W(S,R,m,s) for all s at once: the coefficient
// row of (sum_{t<R} C(S,t) x^t)^m.
std::vector<LogReal> weight_row_log(std::uint64_t S, std::uint64_t R, std::uint64_t m) {
  const std::uint64_t top = m * (R - 1);
  const auto pw = pow_truncated(truncated_binomial_poly(S, std::min(R, S + 1)), m,
                                static_cast<std::int64_t>(top));
  std::vector<LogReal> row(top + 1, LogReal::zero());
  for (std::uint64_t s = 0; s <= top; ++s) {
    row[s] = pw.coeff(static_cast<std::int64_t>(s));
  }
  return row;
}

std::vector<BigCount> weight_row_exact(std::uint64_t S, std::uint64_t R, std::uint64_t m) {
  const std::uint64_t top = m * (R - 1);
  const auto pw = pow_truncated(truncated_binomial_poly_exact(S, std::min(R, S + 1)), m,
                                static_cast<std::int64_t>(top));
  std::vector<BigCount> row(top + 1, BigCount(0));
  for (std::uint64_t s = 0; s <= top; ++s) {
    row[s] = pw.coeff(static_cast<std::int64_t>(s));
  }
  return row;
}

void check_subset_term_index(const SubsetModelParams& p, std::uint64_t m) {
  p.validate();
  if (m < 1 || m > p.num_blocks()) {
    throw std::invalid_argument("inclusion/exclusion term index must be in [1, n_blocks]");
  }
}

void check_bins_term_index(const BinsModelParams& p, std::uint64_t l) {
  p.validate();
  if (l < 1 || l > p.bins) {
    throw std::invalid_argument("inclusion/exclusion term index must be in [1, n]");
  }
}

}  // namespace

std::vector<LogReal> g_sequence(const SubsetModelParams& p, std::uint64_t m) {
  check_subset_term_index(p, m);
  const std::uint64_t rest = p.universe - m * p.block_len;
  std::vector<LogReal> g = weight_row_log(p.block_len, p.min_hits, m);
  for (std::uint64_t s = 0; s < g.size(); ++s) {
    const std::int64_t want = static_cast<std::int64_t>(p.sample) - static_cast<std::int64_t>(s);
    g[s] *= log_binomial(rest, want);
  }
  return g;
}

double beta_m_subset(const SubsetModelParams& p, std::uint64_t m) {
  std::vector<LogReal> g = g_sequence(p, m);
  LogReal b = LogReal::sum(g);
  b *= log_binomial(p.num_blocks(), static_cast<std::int64_t>(m));
  b /= log_binomial(p.universe, static_cast<std::int64_t>(p.sample));
  return b.value();
}

BigRat beta_m_subset_exact(const SubsetModelParams& p, std::uint64_t m) {
  check_subset_term_index(p, m);
  const std::uint64_t rest = p.universe - m * p.block_len;
  const std::vector<BigCount> w = weight_row_exact(p.block_len, p.min_hits, m);
  BigCount num(0);
  for (std::uint64_t s = 0; s < w.size(); ++s) {
    const std::int64_t want = static_cast<std::int64_t>(p.sample) - static_cast<std::int64_t>(s);
    num += w[s] * binomial_exact(rest, want);
  }
  num *= binomial_exact(p.num_blocks(), static_cast<std::int64_t>(m));
  BigRat r(num, binomial_exact(p.universe, static_cast<std::int64_t>(p.sample)));
  r.canonicalize();
  return r;
}

std::vector<LogReal> q_sequence_bins(const BinsModelParams& p, std::uint64_t l) {
  check_bins_term_index(p, l);
  const std::uint64_t m = p.balls;
  const std::uint64_t n = p.bins;
  const std::uint64_t R = p.min_load;
  const std::uint64_t top = (R - 1) * l;

  // E(s) = [x^s] (sum_{t<R} x^t/t!)^l
  TruncatedPoly<LogReal> unit;
  unit.cap = static_cast<std::int64_t>(R) - 1;
  for (std::uint64_t t = 0; t < R; ++t) {
    unit.coeffs.push_back(LogReal::from_log(-std::lgamma(static_cast<double>(t) + 1.0)));
  }
  const auto epow = pow_truncated(unit, l, static_cast<std::int64_t>(top));

  const double log_m_fact = std::lgamma(static_cast<double>(m) + 1.0);
  const double log_n = std::log(static_cast<double>(n));
  std::vector<LogReal> q(top + 1, LogReal::zero());
  for (std::uint64_t s = 0; s <= std::min<std::uint64_t>(top, m); ++s) {
    const LogReal es = epow.coeff(static_cast<std::int64_t>(s));
    if (es.is_zero()) continue;
    if (l == n) {
      // (n-l)^(m-s) survives only as 0^0 = 1.
      if (s != m) continue;
      q[s] = es * LogReal::from_log(log_m_fact - static_cast<double>(m) * log_n);
    } else {
      const double lg = log_m_fact +
                        static_cast<double>(m - s) * std::log(static_cast<double>(n - l)) -
                        std::lgamma(static_cast<double>(m - s) + 1.0) -
                        static_cast<double>(m) * log_n;
      q[s] = es * LogReal::from_log(lg);
    }
  }
  return q;
}

double beta_l_bins(const BinsModelParams& p, std::uint64_t l) {
  std::vector<LogReal> q = q_sequence_bins(p, l);
  LogReal b = LogReal::sum(q);
  b *= log_binomial(p.bins, static_cast<std::int64_t>(l));
  return b.value();
}

BigRat beta_l_bins_exact(const BinsModelParams& p, std::uint64_t l) {
  check_bins_term_index(p, l);
  const std::uint64_t m = p.balls;
  const std::uint64_t n = p.bins;
  const std::uint64_t R = p.min_load;
  const std::uint64_t top = (R - 1) * l;

  TruncatedPoly<BigRat> unit;
  unit.cap = static_cast<std::int64_t>(R) - 1;
  for (std::uint64_t t = 0; t < R; ++t) {
    unit.coeffs.push_back(BigRat(BigCount(1), factorial_exact(t)));
  }
  const auto epow = pow_truncated(unit, l, static_cast<std::int64_t>(top));

  BigCount n_pow_m;
  mpz_ui_pow_ui(n_pow_m.get_mpz_t(), n, m);
  BigRat sum(0);
  for (std::uint64_t s = 0; s <= std::min<std::uint64_t>(top, m); ++s) {
    const BigRat es = epow.coeff(static_cast<std::int64_t>(s));
    if (es == 0) continue;
    if (l == n) {
      if (s != m) continue;
      sum += es * BigRat(factorial_exact(m), n_pow_m);
    } else {
      BigCount rest_pow;
      mpz_ui_pow_ui(rest_pow.get_mpz_t(), n - l, m - s);
      // m!/(m-s)! * (n-l)^(m-s) / n^m
      BigRat factor(falling_factorial_exact(m, s), n_pow_m);
      sum += es * factor * BigRat(rest_pow);
    }
  }
  BigRat r = sum * BigRat(binomial_exact(n, static_cast<std::int64_t>(l)));
  r.canonicalize();
  return r;
}

namespace {

// Neumaier-compensated alternating accumulation of the float path.
struct AlternatingSum {
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

template <class BetaFn>
BonferroniBounds ie_float(std::uint64_t count_limit, const IeOptions& opts, BetaFn beta) {
  BonferroniBounds out;
  const std::uint64_t limit =
      opts.max_terms ? std::min(*opts.max_terms, count_limit) : count_limit;

  AlternatingSum acc;
  double min_odd = kInf;
  double max_even = 0.0;  // S_0 = 0
  for (std::uint64_t i = 1; i <= limit; ++i) {
    const double b = beta(i);
    // An overflowed term would poison the compensated sum with NaN;
    // every already-computed prefix still gives valid Bonferroni bounds.
    if (!std::isfinite(b)) break;
    acc.add(i % 2 == 1 ? b : -b);
    const double s = acc.result();
    out.partial_sums.push_back(s);
    out.terms_used = i;
    if (i % 2 == 1) {
      min_odd = std::min(min_odd, s);
    } else {
      max_even = std::max(max_even, s);
    }
    if (i == count_limit) out.exhausted = true;
    if (b < opts.term_epsilon) break;
  }
  out.lower = clamp01(min_odd == kInf ? 0.0 : 1.0 - min_odd);
  out.upper = clamp01(1.0 - max_even);
  return out;
}

template <class BetaFn>
ExactIeResult ie_exact(std::uint64_t count_limit, std::optional<std::uint64_t> max_terms,
                       BetaFn beta) {
  ExactIeResult out;
  const std::uint64_t limit = max_terms ? std::min(*max_terms, count_limit) : count_limit;

  BigRat sum(0);
  std::optional<BigRat> min_odd;
  BigRat max_even(0);  // S_0 = 0
  for (std::uint64_t i = 1; i <= limit; ++i) {
    BigRat b = beta(i);
    if (i % 2 == 1) {
      sum += b;
      if (!min_odd || sum < *min_odd) min_odd = sum;
    } else {
      sum -= b;
      if (sum > max_even) max_even = sum;
    }
    out.betas.push_back(std::move(b));
    out.partial_sums.push_back(sum);
  }
  out.exhausted = (limit == count_limit);
  out.lower = clamp01(min_odd ? BigRat(1 - *min_odd) : BigRat(0));
  out.upper = clamp01(BigRat(1 - max_even));
  if (out.exhausted) {
    BigRat prob = clamp01(BigRat(1 - sum));
    out.lower = prob;
    out.upper = prob;
    out.probability = std::move(prob);
  }
  return out;
}

BonferroniBounds from_exact(const ExactIeResult& e) {
  BonferroniBounds out;
  out.partial_sums.reserve(e.partial_sums.size());
  for (const BigRat& s : e.partial_sums) out.partial_sums.push_back(s.get_d());
  out.terms_used = e.partial_sums.size();
  out.exact_arithmetic = true;
  out.exhausted = e.exhausted;
  out.lower = e.lower.get_d();
  out.upper = e.upper.get_d();
  if (e.probability) out.exact_rational = rational_string(*e.probability);
  return out;
}

bool subset_exact_feasible(const SubsetModelParams& p) {
  return p.num_blocks() <= 64 && p.universe <= 4096 && p.sample <= 512 && p.min_hits <= 8;
}

bool bins_exact_feasible(const BinsModelParams& p) {
  return p.bins <= 64 && p.balls <= 256 && p.min_load <= 8;
}

}  // namespace

ExactIeResult ie_subset_exact(const SubsetModelParams& p,
                              std::optional<std::uint64_t> max_terms) {
  p.validate();
  return ie_exact(p.num_blocks(), max_terms,
                  [&](std::uint64_t i) { return beta_m_subset_exact(p, i); });
}

ExactIeResult ie_bins_exact(const BinsModelParams& p, std::optional<std::uint64_t> max_terms) {
  p.validate();
  return ie_exact(p.bins, max_terms,
                  [&](std::uint64_t i) { return beta_l_bins_exact(p, i); });
}

BonferroniBounds inclusion_exclusion_prob(const SubsetModelParams& p, IeOptions opts) {
  p.validate();
  const bool exact = opts.mode == IeOptions::Mode::force_exact ||
                     (opts.mode == IeOptions::Mode::automatic && subset_exact_feasible(p));
  if (exact) return from_exact(ie_subset_exact(p, opts.max_terms));
  return ie_float(p.num_blocks(), opts,
                  [&](std::uint64_t i) { return beta_m_subset(p, i); });
}

BonferroniBounds inclusion_exclusion_prob(const BinsModelParams& p, IeOptions opts) {
  p.validate();
  const bool exact = opts.mode == IeOptions::Mode::force_exact ||
                     (opts.mode == IeOptions::Mode::automatic && bins_exact_feasible(p));
  if (exact) return from_exact(ie_bins_exact(p, opts.max_terms));
  return ie_float(p.bins, opts, [&](std::uint64_t i) { return beta_l_bins(p, i); });
}

}  // namespace occupancy
