#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace occupancy {

/// Arbitrary-precision nonnegative integer; carries every exact count
/// (binomials, falling factorials, generating-function coefficients).
using BigCount = mpz_class;

/// Arbitrary-precision rational, always kept canonical.
using BigRat = mpq_class;

/// C(a, b). Returns 0 when b < 0 or b > a.
BigCount binomial_exact(std::uint64_t a, std::int64_t b);

BigCount factorial_exact(std::uint64_t n);

/// a! / (a-b)! = a (a-1) ... (a-b+1); requires b <= a.
BigCount falling_factorial_exact(std::uint64_t a, std::uint64_t b);

/// Natural log of a positive BigCount, accurate to a few ulp of the result.
double log_of(const BigCount& v);

std::size_t decimal_digits(const BigCount& v);

/// "p/q" (or "p" when q == 1), canonical form.
std::string rational_string(const BigRat& q);

}  // namespace occupancy
