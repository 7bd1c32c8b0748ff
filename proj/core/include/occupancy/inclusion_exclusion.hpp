#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "occupancy/bigint.hpp"
#include "occupancy/logreal.hpp"
#include "occupancy/models.hpp"

namespace occupancy {

/// m-th inclusion/exclusion term of the subset model:
///   C(n_blocks, m) * sum_{s=0}^{m(R-1)} C(N-mS, K-s) * W(S,R,m,s) / C(N,K)
/// where W is the restricted-composition weight. May exceed 1; may
/// overflow to +inf for extreme parameters.
double beta_m_subset(const SubsetModelParams& p, std::uint64_t m);
BigRat beta_m_subset_exact(const SubsetModelParams& p, std::uint64_t m);

/// l-th inclusion/exclusion term of the bins model:
///   C(n, l) * sum_{s=0}^{(R-1)l} q(s),
///   q(s) = m! (n-l)^{m-s} / ((m-s)! n^m) * sum_{a in D(s)} 1/prod a(j)!.
/// For l = n only s = m contributes (0^0 = 1 convention).
double beta_l_bins(const BinsModelParams& p, std::uint64_t l);
BigRat beta_l_bins_exact(const BinsModelParams& p, std::uint64_t l);

/// The sequence g(s) = C(N-mS, K-s) * W(S,R,m,s) for s = 0..m(R-1):
/// the unnormalized summand of beta_m, exposed for log-concavity and
/// mass-concentration checks.
std::vector<LogReal> g_sequence(const SubsetModelParams& p, std::uint64_t m);

/// The sequence q(s) for s = 0..(R-1)l (zero beyond s = m).
std::vector<LogReal> q_sequence_bins(const BinsModelParams& p, std::uint64_t l);

struct IeOptions {
  std::optional<std::uint64_t> max_terms;
  enum class Mode { automatic, force_exact, force_float } mode = Mode::automatic;
  /// Float mode stops once a term drops below this; Bonferroni bounds
  /// from any prefix remain valid.
  double term_epsilon = 1e-15;
};

/// Alternating inclusion/exclusion sum with Bonferroni sandwich bounds.
/// Exact rational arithmetic when the parameters are small enough (or
/// forced), compensated floating summation otherwise.
BonferroniBounds inclusion_exclusion_prob(const SubsetModelParams& p, IeOptions opts = {});
BonferroniBounds inclusion_exclusion_prob(const BinsModelParams& p, IeOptions opts = {});

/// Fully rational inclusion/exclusion, for rigorous sandwich checks.
struct ExactIeResult {
  std::vector<BigRat> betas;
  std::vector<BigRat> partial_sums;
  BigRat lower;  // on the success probability, clamped to [0,1]
  BigRat upper;
  bool exhausted = false;
  std::optional<BigRat> probability;  // set when exhausted
};

ExactIeResult ie_subset_exact(const SubsetModelParams& p,
                              std::optional<std::uint64_t> max_terms = {});
ExactIeResult ie_bins_exact(const BinsModelParams& p,
                            std::optional<std::uint64_t> max_terms = {});

}  // namespace occupancy
