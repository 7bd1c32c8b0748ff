#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "occupancy/logreal.hpp"

namespace occupancy {

template <class Coeff>
struct CoeffTraits {
  static Coeff one() { return Coeff(1); }
};

template <>
struct CoeffTraits<LogReal> {
  static LogReal one() { return LogReal::one(); }
};

/// Polynomial truncated above a maximum retained degree. coeffs[s] is the
/// coefficient of x^s; coeffs.size() <= cap + 1 (trailing zeros may be
/// dropped). Coeff is any commutative semiring type: LogReal for
/// production scale, BigCount/BigRat for exact mode.
template <class Coeff>
struct TruncatedPoly {
  std::vector<Coeff> coeffs;
  std::int64_t cap = 0;

  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }

  Coeff coeff(std::int64_t s) const {
    if (s < 0 || s > degree()) return Coeff{};
    return coeffs[static_cast<std::size_t>(s)];
  }

  static TruncatedPoly one(std::int64_t cap_) {
    TruncatedPoly p;
    p.cap = cap_;
    p.coeffs.assign(1, CoeffTraits<Coeff>::one());
    return p;
  }
};

template <class Coeff>
TruncatedPoly<Coeff> mul_truncated(const TruncatedPoly<Coeff>& a,
                                   const TruncatedPoly<Coeff>& b,
                                   std::int64_t cap) {
  TruncatedPoly<Coeff> c;
  c.cap = cap;
  const std::int64_t deg = std::min(cap, a.degree() + b.degree());
  if (a.coeffs.empty() || b.coeffs.empty() || deg < 0) return c;
  c.coeffs.assign(static_cast<std::size_t>(deg) + 1, Coeff{});
  for (std::int64_t i = 0; i <= a.degree(); ++i) {
    const std::int64_t jmax = std::min<std::int64_t>(b.degree(), deg - i);
    for (std::int64_t j = 0; j <= jmax; ++j) {
      c.coeffs[static_cast<std::size_t>(i + j)] +=
          a.coeffs[static_cast<std::size_t>(i)] * b.coeffs[static_cast<std::size_t>(j)];
    }
  }
  return c;
}

/// LogReal overload: per-cell max shift with one exp per term. All terms
/// are nonnegative, so the accumulated relative error is O(n*eps).
inline TruncatedPoly<LogReal> mul_truncated(const TruncatedPoly<LogReal>& a,
                                            const TruncatedPoly<LogReal>& b,
                                            std::int64_t cap) {
  TruncatedPoly<LogReal> c;
  c.cap = cap;
  const std::int64_t deg = std::min(cap, a.degree() + b.degree());
  if (a.coeffs.empty() || b.coeffs.empty() || deg < 0) return c;
  const std::int64_t da = a.degree();
  const std::int64_t db = b.degree();
  c.coeffs.assign(static_cast<std::size_t>(deg) + 1, LogReal::zero());
  for (std::int64_t s = 0; s <= deg; ++s) {
    const std::int64_t lo = std::max<std::int64_t>(0, s - db);
    const std::int64_t hi = std::min(da, s);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = lo; i <= hi; ++i) {
      const double l = a.coeffs[static_cast<std::size_t>(i)].log() +
                       b.coeffs[static_cast<std::size_t>(s - i)].log();
      if (l > mx) mx = l;
    }
    if (mx == -std::numeric_limits<double>::infinity()) continue;
    double acc = 0.0;
    for (std::int64_t i = lo; i <= hi; ++i) {
      const double l = a.coeffs[static_cast<std::size_t>(i)].log() +
                       b.coeffs[static_cast<std::size_t>(s - i)].log();
      if (l != -std::numeric_limits<double>::infinity()) acc += std::exp(l - mx);
    }
    c.coeffs[static_cast<std::size_t>(s)] = LogReal::from_log(mx + std::log(acc));
  }
  return c;
}

/// p^m truncated at cap, by binary powering of truncated products.
template <class Coeff>
TruncatedPoly<Coeff> pow_truncated(const TruncatedPoly<Coeff>& p, std::uint64_t m,
                                   std::int64_t cap) {
  TruncatedPoly<Coeff> result = TruncatedPoly<Coeff>::one(cap);
  TruncatedPoly<Coeff> base = p;
  base.cap = cap;
  if (base.degree() > cap) base.coeffs.resize(static_cast<std::size_t>(cap) + 1);
  while (m > 0) {
    if (m & 1) result = mul_truncated(result, base, cap);
    m >>= 1;
    if (m > 0) base = mul_truncated(base, base, cap);
  }
  return result;
}

}  // namespace occupancy
