#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "occupancy/asymptotics.hpp"

using namespace occupancy;

namespace {

// Plain bisection on t e^{-t} = s over (1, 50); independent of the
// library's Newton path.
double bisect_T1(double s) {
  double lo = 1.0, hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(-mid) > s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("G examples") {
  CHECK(G(0, 0) == doctest::Approx(1.0));
  CHECK(G(2, 0) == 0.0);
  CHECK(G(2, 2) == doctest::Approx(4.0 * std::exp(-2.0)));
  CHECK(G(2, 2) == doctest::Approx(0.541341).epsilon(1e-5));
  CHECK(G(1, 3.5772) == doctest::Approx(0.1).epsilon(1e-4));
  CHECK(G(0, 700.0) == doctest::Approx(std::exp(-700.0)));
  CHECK_THROWS_AS(G(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(G(1, -1), std::invalid_argument);
}

TEST_CASE("G is strictly decreasing right of its mode") {
  for (std::uint32_t j = 0; j <= 8; ++j) {
    double prev = G(j, static_cast<double>(j));
    for (int step = 1; step <= 100; ++step) {
      const double t = static_cast<double>(j) + 0.5 * step;
      const double cur = G(j, t);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("T_inverse") {
  SUBCASE("closed form for j = 0") {
    CHECK(T_inverse(0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(T_inverse(0, 1e-9) == doctest::Approx(-std::log(1e-9)).epsilon(1e-12));
  }

  SUBCASE("matches a bisection oracle for j = 1") {
    CHECK(T_inverse(1, 0.1) == doctest::Approx(bisect_T1(0.1)).epsilon(1e-10));
    CHECK(T_inverse(1, 0.1) == doctest::Approx(3.5772).epsilon(1e-4));
    CHECK(T_inverse(1, 0.25) == doctest::Approx(bisect_T1(0.25)).epsilon(1e-10));
    CHECK(T_inverse(1, 1e-6) == doctest::Approx(bisect_T1(1e-6)).epsilon(1e-10));
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(T_inverse(1, 0.5), DomainError);   // (1/e)^1 < 0.5
    CHECK_THROWS_AS(T_inverse(0, 1.0), DomainError);
    CHECK_THROWS_AS(T_inverse(0, 1.5), DomainError);
    CHECK_THROWS_AS(T_inverse(3, 0.0), DomainError);
    CHECK_THROWS_AS(T_inverse(2, G(2, 2.0) + 1e-9), DomainError);  // value at the mode
  }

  SUBCASE("round trip across j and the branch") {
    double worst = 0.0;
    for (std::uint32_t j = 0; j <= 20; ++j) {
      for (int i = 1; i <= 200; ++i) {
        const double t = static_cast<double>(j) + 0.25 * i;
        const double back = T_inverse_from_log(j, log_G(j, t));
        worst = std::max(worst, std::abs(back - t));
      }
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("T_inverse_asymptotic") {
  CHECK(T_inverse_asymptotic(0, 1e-6) == doctest::Approx(13.8155).epsilon(1e-4));
  CHECK(T_inverse_asymptotic(2, 1e-6) == doctest::Approx(19.067).epsilon(1e-3));
  // leading-order expansion: ratio to the true inverse tends to 1
  for (std::uint32_t j = 0; j <= 5; ++j) {
    double prev_gap = 1e9;
    for (double s : {1e-6, 1e-12, 1e-24}) {
      const double gap = std::abs(T_inverse_asymptotic(j, s) / T_inverse(j, s) - 1.0);
      CHECK(gap < prev_gap + 1e-15);
      prev_gap = gap;
    }
    CHECK(prev_gap < 0.03);  // at s = 1e-24
  }
}

TEST_CASE("c_subset examples") {
  SUBCASE("coupon-collector scale") {
    const CParameter c = c_subset({1000000, 1000, 6908, 1});
    CHECK(c.c == doctest::Approx(0.9998).epsilon(2e-4));
    CHECK(c.prob == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
    CHECK_FALSE(c.left_of_mode);
  }
  SUBCASE("K = 0, R = 1") {
    const CParameter c = c_subset({1000, 10, 0, 1});
    CHECK(c.c == doctest::Approx(100.0));
    CHECK(c.prob == doctest::Approx(std::exp(-100.0)));
  }
  SUBCASE("left of the mode is flagged") {
    const CParameter c = c_subset({1000, 10, 5, 3});  // SK/N = 0.05 < R-1 = 2
    CHECK(c.left_of_mode);
    CHECK(std::isfinite(c.c));
  }
  SUBCASE("huge c underflows prob to exactly 0") {
    // c <= N/S always (G_r(t)/r! <= 1), so finite parameters never
    // overflow c itself; e^{-c} underflows long before that.
    const CParameter c = c_subset({1000000000, 1, 0, 1});
    CHECK_FALSE(c.is_infinite);
    CHECK(c.c == doctest::Approx(1e9));
    CHECK(c.prob == 0.0);
  }
}

TEST_CASE("c_bins examples") {
  CHECK(c_bins({6908, 1000, 1}).c == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(c_bins({6908, 1000, 1}).prob == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
  CHECK(c_bins({0, 50, 1}).c == doctest::Approx(50.0));
  // n=100, m=10^4, R=3: c = 100 * (100^2 e^{-100}) / 2
  const CParameter c = c_bins({10000, 100, 3});
  const double expected_log = std::log(100.0) + 2.0 * std::log(100.0) - 100.0 - std::log(2.0);
  CHECK(c.log_c == doctest::Approx(expected_log).epsilon(1e-12));
  CHECK(c.c == doctest::Approx(5e5 * std::exp(-100.0)));
}

TEST_CASE("subset and matched bins c parameters coincide") {
  for (std::uint64_t S : {std::uint64_t{10}, std::uint64_t{250}, std::uint64_t{1000}}) {
    for (std::uint64_t R = 1; R <= 4; ++R) {
      const std::uint64_t N = S * 1000;
      const std::uint64_t K = 3 * S;
      const CParameter cs = c_subset({N, S, K, R});
      const CParameter cb = c_bins({K, N / S, R});
      CHECK(cs.log_c == cb.log_c);
      CHECK(cs.c == cb.c);
      CHECK(cs.prob == cb.prob);
    }
  }
}

TEST_CASE("validity reports") {
  SUBCASE("well-conditioned example") {
    const ValidityReport v = validity(SubsetModelParams{1000000, 1000, 6908, 1});
    CHECK(v.has_subset);
    CHECK(v.ratio_a == doctest::Approx(0.001));
    CHECK(v.ratio_b == doctest::Approx(0.1448).epsilon(1e-3));
    CHECK(v.ratio_c1 == doctest::Approx(0.001));
    CHECK(v.ratio_c2 == doctest::Approx(0.006908));
    CHECK(v.alpha == doctest::Approx(1.0 / v.ratio_b));
    CHECK(v.class_a == ConditionStatus::ok);
    CHECK(v.class_b == ConditionStatus::marginal);  // 0.1448 >= 0.1
    CHECK(v.class_c1 == ConditionStatus::ok);
    CHECK(v.class_c2 == ConditionStatus::ok);
  }
  SUBCASE("R=1 gives ratio_a = 1/S") {
    CHECK(validity(SubsetModelParams{100, 20, 10, 1}).ratio_a == doctest::Approx(0.05));
  }
  SUBCASE("overloaded requirement is violated") {
    const ValidityReport v = validity(SubsetModelParams{10000, 10, 20, 5});
    CHECK(v.ratio_b == doctest::Approx(250.0));
    CHECK(v.class_b == ConditionStatus::violated);
  }
  SUBCASE("single block is degenerate") {
    const ValidityReport v = validity(SubsetModelParams{100, 100, 10, 1});
    CHECK(v.ratio_c1 == doctest::Approx(1.0));
    CHECK(v.class_c1 == ConditionStatus::violated);
  }
  SUBCASE("bins hypotheses use r = R-1") {
    const ValidityReport v = validity(BinsModelParams{6908, 1000, 3});
    CHECK(v.has_bins);
    CHECK(v.r_sqrt_ratio == doctest::Approx(2.0 / std::sqrt(6908.0)));
    CHECK(v.m_n2_ratio == doctest::Approx(6908.0 / 1e6));
    CHECK(v.nr_m_ratio == doctest::Approx(2000.0 / 6908.0));
    CHECK(v.class_nr_m == ConditionStatus::marginal);
    const ValidityReport v1 = validity(BinsModelParams{100, 10, 1});
    CHECK(v1.r_sqrt_ratio == 0.0);
    CHECK(v1.nr_m_ratio == 0.0);
  }
}

TEST_CASE("threshold_K") {
  SUBCASE("R = 1 inversions") {
    CHECK(threshold_K(1000000, 1000, 1, 1.0) == 6908);
    CHECK(threshold_K(10000, 100, 1, 1.0) == 461);
  }

  SUBCASE("definition check: c(K*) <= target < c(K*-1)") {
    for (const auto& [N, S, R, target] :
         std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, double>>{
             {1000000, 1000, 1, 1.0}, {1000000, 1000, 2, 1.0}, {1000000, 1000, 3, 0.5},
             {100000, 250, 2, 2.0}, {50000, 50, 4, 1.0}}) {
      const std::uint64_t k = threshold_K(N, S, R, target);
      const double c_at = c_subset({N, S, k, R}).c;
      const double c_prev = c_subset({N, S, k - 1, R}).c;
      CAPTURE(N);
      CAPTURE(R);
      CHECK(c_at <= target);
      CHECK(c_prev > target);
    }
  }

  SUBCASE("R = 2 exceeds R = 1 by about (N/S) ln ln (N/S)") {
    const std::uint64_t k1 = threshold_K(1000000, 1000, 1, 1.0);
    const std::uint64_t k2 = threshold_K(1000000, 1000, 2, 1.0);
    CHECK(k2 > k1);
    const double groups = 1000.0;
    const double predicted = groups * std::log(std::log(groups));
    const double delta = static_cast<double>(k2 - k1);
    CHECK(delta >= 0.9 * predicted);
    CHECK(delta <= 1.5 * predicted);
  }

  SUBCASE("domain errors") {
    // target_c >= N/S is unreachable for R = 1
    CHECK_THROWS_AS(threshold_K(100, 100, 1, 2.0), DomainError);
    CHECK_THROWS_AS(threshold_K(1000, 500, 3, 1.0), DomainError);
    CHECK_THROWS_AS(threshold_K(100, 2, 1, 1e-30), DomainError);  // needs K > N
    CHECK_THROWS_AS(threshold_K(100, 10, 1, -1.0), std::invalid_argument);
  }
}

TEST_CASE("perturbation_c") {
  SUBCASE("a = 0 is the unperturbed solution") {
    CHECK(perturbation_c(1e6, 1000, 2, 0.0) == 1.0);
  }

  SUBCASE("closed form at R = 2") {
    // c1 = (1 + a/t0) e^{-a} with t0 = T_1(S/N * 1!)
    const double t0 = T_inverse(1, 1000.0 / 1e6);
    for (double a : {-2.0, -1.0, 1.0, 2.0}) {
      CHECK(perturbation_c(1e6, 1000, 2, a) ==
            doctest::Approx((1.0 + a / t0) * std::exp(-a)).epsilon(1e-10));
    }
  }

  SUBCASE("convergence to e^{-a} along growing N") {
    for (double a : {-2.0, -1.0, 1.0, 2.0}) {
      double prev = 1e9;
      for (double N : {1e4, 1e6, 1e8}) {
        const double gap = std::abs(perturbation_c(N, 1000.0, 2, a) - std::exp(-a));
        CHECK(gap < prev);
        prev = gap;
      }
    }
  }

  SUBCASE("ultra-exponential decay for negative a") {
    // prob = e^{-c1} with c1 -> e^{|a|}: tiny already at finite N
    const double c1 = perturbation_c(1e12, 1000.0, 2, -3.0);
    CHECK(c1 > 10.0);
    CHECK(std::exp(-c1) < 1e-6);
    // and the trend toward e^{-e^3} ~ 1.9e-9 is monotone in N
    const double c1_bigger = perturbation_c(1e16, 1000.0, 2, -3.0);
    CHECK(c1_bigger > c1);
    CHECK(std::abs(c1_bigger - std::exp(3.0)) < std::abs(c1 - std::exp(3.0)));
  }

  SUBCASE("asymmetry envelopes at a = +-5") {
    const double N = 1e8, S = 1000.0;
    const double cpos = perturbation_c(N, S, 2, 5.0);
    const double convergence_to_one = 1.0 - std::exp(-cpos);
    CHECK(convergence_to_one >= 0.99 * std::exp(-5.0));
    CHECK(convergence_to_one <= 2.0 * std::exp(-5.0));

    const double cneg = perturbation_c(N, S, 2, -5.0);
    const double log_prob = -cneg;  // ln of the success probability
    CHECK(log_prob <= -0.5 * std::exp(5.0));
    CHECK(log_prob >= -2.0 * std::exp(5.0));
  }

  SUBCASE("perturbing K below zero kills the probability") {
    CHECK(std::isinf(perturbation_c(1e4, 1000.0, 2, -20.0)));
  }

  SUBCASE("domain error when c = 1 is unsolvable") {
    CHECK_THROWS_AS(perturbation_c(100.0, 100.0, 1, 1.0), DomainError);
  }
}

TEST_CASE("sqrtN_regime classification") {
  const double N = std::exp(20.0);
  const double r = 4.0;

  const RegimeReport zero = sqrtN_regime(r, 0.4 * 20.0 / r, N);
  CHECK(zero.classification == RegimeClass::prob_zero);
  CHECK(zero.rg_over_log_n == doctest::Approx(0.4));

  const RegimeReport pos = sqrtN_regime(r, 0.7 * 20.0 / r, N);
  CHECK(pos.classification == RegimeClass::prob_positive);

  const RegimeReport border = sqrtN_regime(r, 0.5 * 20.0 / r, N);
  CHECK(border.classification == RegimeClass::indeterminate);

  // ln f agrees with the closed form and diverges with the right sign:
  // +inf on the prob_zero side, -inf on the prob_positive side.
  const double g = 0.4 * 20.0 / r;
  const double expect =
      0.5 * 20.0 + r * (std::log(g) - g) + r - 0.5 * std::log(2.0 * M_PI * r);
  CHECK(zero.ln_f == doctest::Approx(expect).epsilon(1e-12));
  // r = (ln N)^{1/4} keeps r(ln g + 1) = o(ln N), so the divergence of
  // ln f is visible already on a modest grid.
  double prev_zero = -1e300, prev_pos = 1e300;
  for (double ln_n : {100.0, 300.0, 600.0}) {
    const double nn = std::exp(ln_n);
    const double rr = std::pow(ln_n, 0.25);
    const RegimeReport z = sqrtN_regime(rr, 0.4 * ln_n / rr, nn);
    const RegimeReport p = sqrtN_regime(rr, 0.7 * ln_n / rr, nn);
    CHECK(z.ln_f > prev_zero);
    CHECK(p.ln_f < prev_pos);
    prev_zero = z.ln_f;
    prev_pos = p.ln_f;
  }
  CHECK(prev_zero > 0.0);
  CHECK(prev_pos < 0.0);

  CHECK_THROWS_AS(sqrtN_regime(0.0, 1.0, 100.0), std::invalid_argument);
}
