#include "occupancy/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace occupancy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ConditionStatus classify(double ratio) {
  if (ratio < 0.1) return ConditionStatus::ok;
  if (ratio < 0.5) return ConditionStatus::marginal;
  return ConditionStatus::violated;
}

}  // namespace

const char* condition_status_name(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::ok: return "ok";
    case ConditionStatus::marginal: return "marginal";
    case ConditionStatus::violated: return "violated";
  }
  return "?";
}

const char* regime_class_name(RegimeClass c) {
  switch (c) {
    case RegimeClass::prob_zero: return "prob_zero";
    case RegimeClass::prob_positive: return "prob_positive";
    case RegimeClass::indeterminate: return "indeterminate";
  }
  return "?";
}

double log_G(double j, double t) {
  if (j < 0.0 || t < 0.0) throw std::invalid_argument("log_G: need j >= 0 and t >= 0");
  if (t == 0.0) return j == 0.0 ? 0.0 : -kInf;
  return j * std::log(t) - t;
}

double G(double j, double t) { return std::exp(log_G(j, t)); }

double T_inverse_from_log(std::uint32_t j, double log_s) {
  if (!(log_s > -kInf)) throw DomainError("T_inverse: s must be positive");
  if (j == 0) {
    if (log_s >= 0.0) throw DomainError("T_inverse: need s < 1 for j = 0");
    return -log_s;
  }
  const double dj = static_cast<double>(j);
  const double log_peak = dj * (std::log(dj) - 1.0);  // log (j/e)^j
  if (log_s >= log_peak) {
    throw DomainError("T_inverse: s >= (j/e)^j is off the decreasing branch");
  }

  const auto h = [&](double t) { return dj * std::log(t) - t - log_s; };

  // h is strictly decreasing on (j, inf) with h(j) > 0; expand the right
  // end until it turns negative.
  double lo = dj;
  double hi = dj + std::max(50.0, 4.0 * std::abs(log_s));
  while (h(hi) > 0.0) hi = dj + 2.0 * (hi - dj);

  // Seed with the asymptotic expansion when it lands in the bracket.
  double t = -log_s + dj * std::log(std::max(std::abs(log_s), 2.0));
  if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double ht = h(t);
    if (ht > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double dh = dj / t - 1.0;  // < 0 for t > j
    double next = t - ht / dh;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-14 * t + 1e-14) return next;
    t = next;
  }
  return t;
}

double T_inverse(std::uint32_t j, double s) {
  if (!(s > 0.0)) throw DomainError("T_inverse: s must be positive");
  return T_inverse_from_log(j, std::log(s));
}

double T_inverse_asymptotic(std::uint32_t j, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("T_inverse_asymptotic: s must be positive");
  const double ls = std::log(s);
  return -ls + static_cast<double>(j) * std::log(std::abs(ls));
}

namespace {

// Shared finite-N c evaluation: c = groups * G_{R-1}(t) / (R-1)!
CParameter c_from_rate(double groups, double t, std::uint64_t min_hits) {
  const double r = static_cast<double>(min_hits - 1);
  CParameter out;
  out.left_of_mode = t < r;
  if (t == 0.0 && r > 0.0) {
    out.c = 0.0;
    out.log_c = -kInf;
    out.prob = 1.0;
    return out;
  }
  out.log_c = std::log(groups) + log_G(r, t) - std::lgamma(static_cast<double>(min_hits));
  out.c = std::exp(out.log_c);
  out.is_infinite = std::isinf(out.c);
  out.prob = out.is_infinite ? 0.0 : std::exp(-out.c);
  return out;
}

}  // namespace

CParameter c_subset(const SubsetModelParams& p) {
  p.validate();
  const double groups = static_cast<double>(p.universe) / static_cast<double>(p.block_len);
  const double t = static_cast<double>(p.sample) / groups;  // = SK/N
  return c_from_rate(groups, t, p.min_hits);
}

CParameter c_bins(const BinsModelParams& p) {
  p.validate();
  const double groups = static_cast<double>(p.bins);
  const double t = static_cast<double>(p.balls) / groups;
  return c_from_rate(groups, t, p.min_load);
}

ValidityReport validity(const SubsetModelParams& p) {
  p.validate();
  ValidityReport v;
  v.has_subset = true;
  const double N = static_cast<double>(p.universe);
  const double S = static_cast<double>(p.block_len);
  const double K = static_cast<double>(p.sample);
  const double R = static_cast<double>(p.min_hits);
  v.ratio_a = R * R / S;
  v.ratio_b = K > 0.0 ? N * R / (S * K) : kInf;
  v.ratio_c1 = R * S / N;
  v.ratio_c2 = R * K / N;
  v.alpha = S * K / (R * N);
  v.class_a = classify(v.ratio_a);
  v.class_b = classify(v.ratio_b);
  v.class_c1 = classify(v.ratio_c1);
  v.class_c2 = classify(v.ratio_c2);
  return v;
}

ValidityReport validity(const BinsModelParams& p) {
  p.validate();
  ValidityReport v;
  v.has_bins = true;
  const double m = static_cast<double>(p.balls);
  const double n = static_cast<double>(p.bins);
  const double r = static_cast<double>(p.min_load - 1);
  v.r_sqrt_ratio = r / std::sqrt(std::max(n, m > 0.0 ? m : 1.0));
  v.m_n2_ratio = m / (n * n);
  v.nr_m_ratio = r == 0.0 ? 0.0 : (m > 0.0 ? n * r / m : kInf);
  v.class_r_sqrt = classify(v.r_sqrt_ratio);
  v.class_m_n2 = classify(v.m_n2_ratio);
  v.class_nr_m = classify(v.nr_m_ratio);
  return v;
}

namespace {

// log c as a function of K, on the formula (no parameter validation).
double log_c_of_K(double groups, std::uint64_t min_hits, double K) {
  const double r = static_cast<double>(min_hits - 1);
  if (K <= 0.0) return r == 0.0 ? std::log(groups) : -kInf;
  const double t = K / groups;
  return std::log(groups) + log_G(r, t) - std::lgamma(static_cast<double>(min_hits));
}

}  // namespace

std::uint64_t threshold_K(std::uint64_t N, std::uint64_t S, std::uint64_t R, double target_c) {
  if (S < 1 || S > N || R < 1) throw std::invalid_argument("threshold_K: need 1 <= S <= N, R >= 1");
  if (!(target_c > 0.0) || !std::isfinite(target_c)) {
    throw std::invalid_argument("threshold_K: target_c must be positive and finite");
  }
  const double groups = static_cast<double>(N) / static_cast<double>(S);
  const std::uint64_t r = R - 1;
  const double log_target = std::log(target_c);

  // T argument: target_c (R-1)! S / N.
  const double log_arg = log_target + std::lgamma(static_cast<double>(R)) - std::log(groups);
  const double t0 = T_inverse_from_log(static_cast<std::uint32_t>(r), log_arg);

  const auto reaches = [&](std::uint64_t K) {
    return log_c_of_K(groups, R, static_cast<double>(K)) <= log_target;
  };

  // Smallest K on the decreasing branch (t >= R-1).
  std::uint64_t lo = static_cast<std::uint64_t>(std::ceil(static_cast<double>(r) * groups));
  if (reaches(lo)) {
    if (lo > N) throw DomainError("threshold_K: no feasible K <= N reaches the target");
    return lo;
  }

  std::uint64_t hi = std::max<std::uint64_t>(
      lo + 1, static_cast<std::uint64_t>(std::ceil(groups * t0)));
  while (!reaches(hi)) hi = lo + 2 * (hi - lo);

  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (reaches(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (hi > N) throw DomainError("threshold_K: no feasible K <= N reaches the target");
  return hi;
}

double perturbation_c(double N, double S, std::uint64_t R, double a) {
  if (!(N > 0.0) || !(S > 0.0) || S > N || R < 1) {
    throw std::invalid_argument("perturbation_c: need 0 < S <= N and R >= 1");
  }
  if (a == 0.0) return 1.0;  // unperturbed solution of c = 1 by definition
  const double groups = N / S;
  const std::uint64_t r = R - 1;
  // K0 solves c = 1: G_r(S K0 / N) = (R-1)! S / N.
  const double log_arg = std::lgamma(static_cast<double>(R)) - std::log(groups);
  const double t0 = T_inverse_from_log(static_cast<std::uint32_t>(r), log_arg);
  const double t1 = t0 + a;
  if (t1 <= 0.0) return kInf;  // K pushed below zero: success impossible
  const double log_c1 = std::log(groups) + log_G(static_cast<double>(r), t1) -
                        std::lgamma(static_cast<double>(R));
  return std::exp(log_c1);
}

RegimeReport sqrtN_regime(double r, double g, double N) {
  if (!(r > 0.0) || !(g > 0.0) || !(N > 1.0)) {
    throw std::invalid_argument("sqrtN_regime: need r > 0, g > 0, N > 1");
  }
  RegimeReport rep;
  const double log_n = std::log(N);
  rep.ln_f = 0.5 * log_n + r * (std::log(g) - g) + r - 0.5 * std::log(2.0 * M_PI * r);
  rep.rg_over_log_n = r * g / log_n;
  // The boundary r g = (ln N)/2 is excluded by both branches.
  if (std::abs(rep.rg_over_log_n - 0.5) <= 1e-9) {
    rep.classification = RegimeClass::indeterminate;
  } else if (rep.rg_over_log_n < 0.5) {
    rep.classification = RegimeClass::prob_zero;
  } else {
    rep.classification = RegimeClass::prob_positive;
  }
  return rep;
}

}  // namespace occupancy
