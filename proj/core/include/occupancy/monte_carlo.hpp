#pragma once

#include <cstdint>

#include "occupancy/models.hpp"

namespace occupancy {

/// Documented fixed default; omitted seeds never fall back to entropy.
inline constexpr std::uint64_t kDefaultMasterSeed = 1729;

struct TrialConfig {
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = kDefaultMasterSeed;
  double confidence = 0.95;
  /// Execution detail only: the result is identical for any worker
  /// count, because trial i's stream depends only on (master_seed, i).
  unsigned workers = 1;

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(confidence > 0.0 && confidence < 1.0)) {
      throw std::invalid_argument("confidence must be in (0,1)");
    }
  }
};

struct McResult {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 1.0;
};

struct WilsonInterval {
  double lower = 0.0;
  double upper = 1.0;
};

/// Wilson score interval; well-behaved at estimates near 0 and 1.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double confidence);

/// Inverse standard normal CDF (Acklam's rational approximation,
/// |relative error| < 1.2e-9).
double normal_quantile(double p);

/// Counter-based per-trial random stream: splitmix64 seeded from
/// (master_seed, trial_index), so any execution order or partition of
/// the trial range reproduces the same result.
class TrialRng {
 public:
  TrialRng(std::uint64_t master_seed, std::uint64_t trial_index);

  std::uint64_t next();

  /// Unbiased uniform draw from {0, ..., bound-1} (Lemire rejection).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Draws a uniform K-subset per trial (Floyd's algorithm, O(K) memory)
/// and counts hits per full block; success means every block reached
/// min_hits. Remainder elements may be drawn but count for no block.
McResult simulate_subset(const SubsetModelParams& p, const TrialConfig& cfg);

/// Throws m uniform balls per trial; success means min load >= R.
McResult simulate_bins(const BinsModelParams& p, const TrialConfig& cfg);

}  // namespace occupancy
