#pragma once

#include <cstdint>

#include "occupancy/models.hpp"

namespace occupancy {

/// G_j(t) = t^j e^{-t}, evaluated in log space for large t. Defined for
/// t >= 0 and real j >= 0; G_0(0) = 1 and G_j(0) = 0 for j > 0.
double G(double j, double t);

/// log G_j(t); -inf when G_j(t) = 0.
double log_G(double j, double t);

/// T_j: the inverse of G_j restricted to its decreasing branch t >= j,
/// mapping (0, (j/e)^j) -> (j, inf) (domain (0,1) for j = 0, where
/// T_0(s) = -ln s in closed form). Bracketed Newton/bisection hybrid,
/// converged to ~1e-13 relative. Throws DomainError outside the branch
/// image.
double T_inverse(std::uint32_t j, double s);

/// Same inversion with the argument given as log s, so callers can stay
/// in log space when s itself would under/overflow.
double T_inverse_from_log(std::uint32_t j, double log_s);

/// Leading-order expansion -ln s + j ln|ln s|, valid as s -> 0+.
double T_inverse_asymptotic(std::uint32_t j, double s);

/// Finite-N evaluation of the limiting parameter c together with the
/// implied probability e^{-c}. The artifact never takes limits: callers
/// probe parameter sequences and watch the value settle.
struct CParameter {
  double c = 0.0;
  double log_c = 0.0;        // -inf when c == 0
  double prob = 1.0;         // e^{-c}; 0 when c overflows
  bool is_infinite = false;  // c overflowed the double range
  /// G_{R-1} was evaluated left of its mode t = R-1, off the decreasing
  /// branch the inversion theory lives on.
  bool left_of_mode = false;
};

/// c = (N/S) G_{R-1}(SK/N) / (R-1)!
CParameter c_subset(const SubsetModelParams& p);

/// c = n G_{R-1}(m/n) / (R-1)!
CParameter c_bins(const BinsModelParams& p);

enum class ConditionStatus { ok, marginal, violated };

const char* condition_status_name(ConditionStatus s);

/// Finite-N diagnostics for the asymptotic hypotheses. The limit
/// statements are little-o conditions with no finite-N cutoff, so these
/// are advisory ratios with heuristic labels (ok < 0.1 <= marginal
/// < 0.5 <= violated), never a hard failure.
struct ValidityReport {
  bool has_subset = false;
  double ratio_a = 0.0;   // R^2 / S
  double ratio_b = 0.0;   // N R / (S K)
  double ratio_c1 = 0.0;  // R S / N
  double ratio_c2 = 0.0;  // R K / N
  double alpha = 0.0;     // S K / (R N) = 1/ratio_b
  ConditionStatus class_a = ConditionStatus::ok;
  ConditionStatus class_b = ConditionStatus::ok;
  ConditionStatus class_c1 = ConditionStatus::ok;
  ConditionStatus class_c2 = ConditionStatus::ok;

  bool has_bins = false;  // min-load hypotheses, r = R-1
  double r_sqrt_ratio = 0.0;  // r / sqrt(max(n, m))
  double m_n2_ratio = 0.0;    // m / n^2
  double nr_m_ratio = 0.0;    // n r / m
  ConditionStatus class_r_sqrt = ConditionStatus::ok;
  ConditionStatus class_m_n2 = ConditionStatus::ok;
  ConditionStatus class_nr_m = ConditionStatus::ok;
};

ValidityReport validity(const SubsetModelParams& p);
ValidityReport validity(const BinsModelParams& p);

/// Smallest K whose finite-N c_subset is <= target_c, searched on the
/// decreasing branch (SK/N >= R-1) and seeded by (N/S) T_{R-1}(target_c
/// (R-1)! S/N). Throws DomainError when the T argument is outside the
/// branch image or no K <= N reaches the target.
std::uint64_t threshold_K(std::uint64_t N, std::uint64_t S, std::uint64_t R, double target_c);

/// Perturbed c: with K0 the real solution of c = 1 and K = K0 + aN/S,
/// returns c1 = (N/S) (SK0/N + a)^{R-1} e^{-SK0/N - a} / (R-1)!, which
/// tends to e^{-a} as N grows. Returns +inf when the perturbation pushes
/// the argument of G below zero. Throws DomainError when c = 1 is not
/// solvable.
double perturbation_c(double N, double S, std::uint64_t R, double a);

enum class RegimeClass { prob_zero, prob_positive, indeterminate };

const char* regime_class_name(RegimeClass c);

/// Classification of the S = sqrt(N), K = g r sqrt(N) regime by the sign
/// of the divergence of ln f(N) = (ln N)/2 + r(ln g - g) + r
/// - ln(2 pi r)/2: r g below (ln N)/2 sends c to infinity (probability
/// 0); above it, c -> 0 (probability 1). The boundary r g = (ln N)/2 is
/// indeterminate.
struct RegimeReport {
  RegimeClass classification = RegimeClass::indeterminate;
  double ln_f = 0.0;
  double rg_over_log_n = 0.0;
};

RegimeReport sqrtN_regime(double r, double g, double N);

}  // namespace occupancy
