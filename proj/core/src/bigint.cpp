#include "occupancy/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace occupancy {

BigCount binomial_exact(std::uint64_t a, std::int64_t b) {
  if (b < 0 || static_cast<std::uint64_t>(b) > a) return BigCount(0);
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), a, static_cast<std::uint64_t>(b));
  return r;
}

BigCount factorial_exact(std::uint64_t n) {
  BigCount r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigCount falling_factorial_exact(std::uint64_t a, std::uint64_t b) {
  if (b > a) throw std::invalid_argument("falling_factorial_exact: b > a");
  BigCount r(1);
  for (std::uint64_t i = 0; i < b; ++i) r *= BigCount(a - i);
  return r;
}

double log_of(const BigCount& v) {
  if (v <= 0) throw std::invalid_argument("log_of: nonpositive argument");
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

std::size_t decimal_digits(const BigCount& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 10);
}

std::string rational_string(const BigRat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace occupancy
