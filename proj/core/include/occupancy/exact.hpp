#pragma once

#include "occupancy/bigint.hpp"
#include "occupancy/models.hpp"

namespace occupancy {

/// Cost guard for the exact solvers. The unit is the convolution cell
/// count of the generating-function evaluation: n_blocks*K*min(S,K) for
/// the subset model, n*m*min(m, n*R) for the bins model. Above
/// max_exact_rational_ops the solver switches from rational to log-space
/// arithmetic; above max_ops it refuses (BudgetExceeded).
struct CostBudget {
  double max_ops = 2.5e8;
  double max_exact_rational_ops = 2e6;
};

double subset_exact_cost(const SubsetModelParams& p);
double bins_exact_cost(const BinsModelParams& p);

/// Exact success probability of the subset model:
///   [x^K] ( (sum_{j=R}^{S} C(S,j) x^j)^{n_blocks} * (1+x)^{remainder} ) / C(N,K).
/// Rational arithmetic when affordable, otherwise log-space (the
/// coefficients are all nonnegative, so the relative error stays ~1e-12;
/// diagnostics land in meta). Throws BudgetExceeded above budget.max_ops.
ProbEstimate subset_prob_exact(const SubsetModelParams& p, const CostBudget& budget = {});

/// Exact success probability of the bins model:
///   m! [x^m] ( (sum_{j=R}^{m} x^j/j!)^n ) / n^m.
ProbEstimate bins_prob_exact(const BinsModelParams& p, const CostBudget& budget = {});

/// Unconditional rational evaluations (no budget guard); intended for
/// oracle-scale inputs.
BigRat subset_prob_exact_rational(const SubsetModelParams& p);
BigRat bins_prob_exact_rational(const BinsModelParams& p);

}  // namespace occupancy
