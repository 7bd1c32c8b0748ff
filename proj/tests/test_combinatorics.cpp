#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "occupancy/bigint.hpp"
#include "occupancy/combinatorics.hpp"
#include "occupancy/logreal.hpp"
#include "occupancy/poly.hpp"
#include "oracles.hpp"

using namespace occupancy;

namespace {

double rel_log_diff(const LogReal& approx, const BigCount& exact) {
  const double le = log_of(exact);
  if (le == 0.0) return std::abs(approx.log());
  return std::abs(approx.log() - le) / std::abs(le);
}

}  // namespace

TEST_CASE("LogReal arithmetic") {
  CHECK(LogReal::zero().is_zero());
  CHECK(LogReal::from_value(0.0).is_zero());
  CHECK(LogReal::one().value() == doctest::Approx(1.0));

  const LogReal a = LogReal::from_value(3.0);
  const LogReal b = LogReal::from_value(4.0);
  CHECK((a * b).value() == doctest::Approx(12.0));
  CHECK((a + b).value() == doctest::Approx(7.0));
  CHECK((a / b).value() == doctest::Approx(0.75));

  // adding zero is exact
  const LogReal z = LogReal::zero();
  CHECK((a + z).log() == a.log());
  CHECK((z + a).log() == a.log());
  CHECK((a * z).is_zero());

  // widely spread batch sum keeps relative accuracy
  std::vector<LogReal> terms;
  for (int e = -300; e <= 300; e += 60) terms.push_back(LogReal::from_log(e * M_LN10));
  const LogReal s = LogReal::sum(terms);
  CHECK(s.log() == doctest::Approx(300 * M_LN10).epsilon(1e-12));
}

TEST_CASE("binomial_exact basics") {
  CHECK(binomial_exact(6, 3) == 20);
  CHECK(binomial_exact(5, 7) == 0);
  CHECK(binomial_exact(5, -1) == 0);
  CHECK(binomial_exact(100, 5) == BigCount("75287520"));
  CHECK(binomial_exact(0, 0) == 1);
  // Pascal recurrence spot check on a random-ish band
  for (std::uint64_t n = 1; n <= 40; ++n) {
    for (std::uint64_t k = 1; k <= n; ++k) {
      CHECK(binomial_exact(n, static_cast<std::int64_t>(k)) ==
            binomial_exact(n - 1, static_cast<std::int64_t>(k - 1)) +
                binomial_exact(n - 1, static_cast<std::int64_t>(k)));
    }
  }
}

TEST_CASE("log_binomial agrees with the exact oracle") {
  CHECK(log_binomial(6, 3).log() == doctest::Approx(std::log(20.0)).epsilon(1e-12));
  CHECK(log_binomial(4, 5).is_zero());
  CHECK(log_binomial(4, -2).is_zero());
  CHECK(log_binomial(10, 0).log() == 0.0);

  CHECK(rel_log_diff(log_binomial(1000000, 1000), binomial_exact(1000000, 1000)) < 1e-9);

  // both code paths (direct sum and lgamma triple), values up to ~10^4 digits
  for (const auto& [a, b] : std::vector<std::pair<std::uint64_t, std::int64_t>>{
           {50, 25}, {123, 61}, {1000, 3}, {1000, 500}, {30000, 15000},
           {30000, 123}, {500000, 250}, {1000000000, 40}}) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(rel_log_diff(log_binomial(a, b), binomial_exact(a, b)) < 1e-9);
  }
}

TEST_CASE("truncated_binomial_poly") {
  const auto p1 = truncated_binomial_poly(2, 1);
  REQUIRE(p1.coeffs.size() == 1);
  CHECK(p1.coeffs[0].value() == doctest::Approx(1.0));
  CHECK(p1.cap == 0);

  const auto p2 = truncated_binomial_poly(2, 2);
  REQUIRE(p2.coeffs.size() == 2);
  CHECK(p2.coeffs[0].value() == doctest::Approx(1.0));
  CHECK(p2.coeffs[1].value() == doctest::Approx(2.0));

  const auto p3 = truncated_binomial_poly(5, 3);
  REQUIRE(p3.coeffs.size() == 3);
  CHECK(p3.coeffs[0].value() == doctest::Approx(1.0));
  CHECK(p3.coeffs[1].value() == doctest::Approx(5.0));
  CHECK(p3.coeffs[2].value() == doctest::Approx(10.0));

  const auto e3 = truncated_binomial_poly_exact(5, 3);
  CHECK(e3.coeffs[2] == 10);

  CHECK_THROWS_AS(truncated_binomial_poly(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(truncated_binomial_poly(3, 0), std::invalid_argument);
}

TEST_CASE("poly_pow_coeff examples") {
  TruncatedPoly<LogReal> p;
  p.cap = 1;
  p.coeffs = {LogReal::from_value(1), LogReal::from_value(2)};
  CHECK(poly_pow_coeff(p, 3, 3).value() == doctest::Approx(8.0));
  CHECK(poly_pow_coeff(p, 3, 2).value() == doctest::Approx(12.0));
  CHECK(poly_pow_coeff(p, 3, 4).is_zero());

  TruncatedPoly<LogReal> one_poly;
  one_poly.cap = 0;
  one_poly.coeffs = {LogReal::from_value(1)};
  CHECK(poly_pow_coeff(one_poly, 5, 0).value() == doctest::Approx(1.0));

  CHECK(poly_pow_coeff(truncated_binomial_poly(5, 3), 2, 4).value() ==
        doctest::Approx(100.0));
}

TEST_CASE("restricted_composition_weight examples and cross-checks") {
  CHECK(restricted_composition_weight(2, 1, 3, 0).value() == doctest::Approx(1.0));
  CHECK(restricted_composition_weight(2, 2, 1, 1).value() == doctest::Approx(2.0));
  CHECK(restricted_composition_weight(5, 3, 2, 4).value() == doctest::Approx(100.0));
  CHECK(restricted_composition_weight(5, 3, 2, 5).is_zero());

  CHECK(restricted_composition_weight_exact(5, 3, 2, 4) == 100);
  CHECK(oracles::composition_weight_enumeration(5, 3, 2, 4) == 100);

  // Three independent routes agree on the full grid: tuple enumeration,
  // the row recurrence, and binary powering of the truncated polynomial.
  for (std::uint64_t S = 1; S <= 8; ++S) {
    for (std::uint64_t R = 1; R <= std::min<std::uint64_t>(4, S + 1); ++R) {
      const auto p = truncated_binomial_poly(S, R);
      for (std::uint64_t m = 1; m <= 4; ++m) {
        for (std::uint64_t s = 0; s <= m * (R - 1); ++s) {
          const BigCount expected = oracles::composition_weight_enumeration(S, R, m, s);
          CHECK(restricted_composition_weight_exact(S, R, m, s) == expected);
          const LogReal lw = restricted_composition_weight(S, R, m, s);
          const LogReal lp = poly_pow_coeff(p, m, s);
          if (expected == 0) {
            CHECK(lw.is_zero());
            CHECK(lp.is_zero());
          } else {
            CHECK(std::abs(lw.log() - log_of(expected)) < 1e-9);
            CHECK(std::abs(lp.log() - lw.log()) < 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("coefficient rows of truncated binomial powers are log-concave") {
  for (std::uint64_t S = 2; S <= 9; S += 3) {
    for (std::uint64_t R = 1; R <= std::min<std::uint64_t>(5, S + 1); ++R) {
      const auto p = truncated_binomial_poly(S, R);
      for (std::uint64_t m = 1; m <= 5; ++m) {
        std::vector<LogReal> row;
        for (std::uint64_t s = 0; s <= m * (R - 1); ++s) row.push_back(poly_pow_coeff(p, m, s));
        CAPTURE(S);
        CAPTURE(R);
        CAPTURE(m);
        CHECK(check_log_concave(row).is_log_concave);
      }
    }
  }
}

TEST_CASE("Hadamard products of log-concave sequences stay log-concave") {
  const auto binomial_row = [](std::uint64_t n) {
    std::vector<LogReal> row;
    for (std::uint64_t k = 0; k <= n; ++k) {
      row.push_back(log_binomial(n, static_cast<std::int64_t>(k)));
    }
    return row;
  };
  const std::vector<LogReal> a = binomial_row(12);
  std::vector<LogReal> b;
  for (std::uint64_t s = 0; s <= 12; ++s) {
    b.push_back(LogReal::from_log(-0.3 * static_cast<double>(s * s)));  // Gaussian-ish
  }
  std::vector<LogReal> had;
  for (std::size_t i = 0; i < a.size(); ++i) had.push_back(a[i] * b[i]);
  CHECK(check_log_concave(a).is_log_concave);
  CHECK(check_log_concave(b).is_log_concave);
  CHECK(check_log_concave(had).is_log_concave);
}

TEST_CASE("check_log_concave") {
  const auto seq = [](std::initializer_list<double> vals) {
    std::vector<LogReal> s;
    for (double v : vals) s.push_back(LogReal::from_value(v));
    return s;
  };

  CHECK(check_log_concave(seq({1, 2, 1})).is_log_concave);

  const auto bad = check_log_concave(seq({1, 1, 4}));
  CHECK_FALSE(bad.is_log_concave);
  REQUIRE(bad.first_violation_index.has_value());
  CHECK(*bad.first_violation_index == 1);
  CHECK(bad.max_violation_ratio == doctest::Approx(4.0));

  std::vector<LogReal> row;
  for (int k = 0; k <= 10; ++k) row.push_back(log_binomial(10, k));
  CHECK(check_log_concave(row).is_log_concave);

  // zero between positives breaks unimodality
  const auto gap = check_log_concave(seq({1, 0, 1}));
  CHECK_FALSE(gap.is_log_concave);
  CHECK(std::isinf(gap.max_violation_ratio));

  // leading/trailing zeros are fine; so are empty and constant sequences
  CHECK(check_log_concave(seq({0, 0, 1, 2, 1, 0})).is_log_concave);
  CHECK(check_log_concave({}).is_log_concave);
  CHECK(check_log_concave(seq({5})).is_log_concave);
  CHECK(check_log_concave(seq({1, 2, 4, 8})).is_log_concave);  // geometric: equality holds
}

TEST_CASE("falling_factorial_approx") {
  SUBCASE("hand-checked point A=100 B=5") {
    const auto [approx, bound] = falling_factorial_approx(100, 5);
    CHECK(approx.value() == doctest::Approx(9.048374e9).epsilon(1e-6));
    const BigCount exact = falling_factorial_exact(100, 5);
    CHECK(exact == BigCount("9034502400"));
    const double rel = std::abs(std::exp(approx.log() - log_of(exact)) - 1.0);
    CHECK(rel == doctest::Approx(0.0015355).epsilon(1e-3));
    CHECK(bound == doctest::Approx(0.0125));
    CHECK(rel <= bound);
  }

  SUBCASE("B=1 and B=0 are exact") {
    CHECK(falling_factorial_approx(10, 1).approx.value() == doctest::Approx(10.0));
    CHECK(falling_factorial_approx(10, 0).approx.value() == doctest::Approx(1.0));
  }

  SUBCASE("large A stays within the envelope") {
    const auto [approx, bound] = falling_factorial_approx(1000000, 1000);
    const double rel =
        std::abs(std::exp(approx.log() - log_of(falling_factorial_exact(1000000, 1000))) - 1.0);
    CHECK(rel <= bound);
    CHECK(rel < 2e-4);
  }

  SUBCASE("error envelope on the grid") {
    for (std::uint64_t a : {std::uint64_t{50}, std::uint64_t{100}, std::uint64_t{1000},
                            std::uint64_t{10000}}) {
      const std::uint64_t bmax = std::min<std::uint64_t>(a / 4, 100);
      for (std::uint64_t b = 2; b <= bmax; ++b) {
        const auto [approx, bound] = falling_factorial_approx(a, b);
        const double rel =
            std::abs(std::exp(approx.log() - log_of(falling_factorial_exact(a, b))) - 1.0);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(rel <= bound);
      }
    }
  }

  SUBCASE("precondition") {
    CHECK_THROWS_AS(falling_factorial_approx(10, 5), std::domain_error);
    CHECK_THROWS_AS(falling_factorial_approx(10, 7), std::domain_error);
  }
}
