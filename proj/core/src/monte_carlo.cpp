#include "occupancy/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace occupancy {

namespace {

std::uint64_t splitmix_step(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t trial_index) {
  const std::uint64_t stream = 0x9E3779B97F4A7C15ULL * (trial_index + 1);
  state_ = mix(mix(master_seed + 0x632BE59BD9B4E019ULL) ^ stream);
}

std::uint64_t TrialRng::next() { return splitmix_step(state_); }

std::uint64_t TrialRng::next_below(std::uint64_t bound) {
  // Lemire's multiply-and-reject method.
  std::uint64_t x = next();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p in (0,1)");
  // Acklam's two-region rational approximation with central region.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double confidence) {
  if (trials == 0) return {0.0, 1.0};
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (phat + 0.5 * z2n) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + 0.25 * z2n / n) / denom;
  WilsonInterval w;
  w.lower = std::max(0.0, std::min(center - half, phat));
  w.upper = std::min(1.0, std::max(center + half, phat));
  return w;
}

namespace {

// Open-addressing membership set over {0..N-1} with O(1) epoch reset.
class ScratchSet {
 public:
  void reset_capacity(std::uint64_t max_entries) {
    std::uint64_t cap = 16;
    while (cap < 2 * (max_entries + 1)) cap <<= 1;
    if (cap != slots_.size()) {
      slots_.assign(cap, 0);
      stamps_.assign(cap, 0);
      epoch_ = 0;
    }
    mask_ = cap - 1;
  }

  void new_trial() {
    if (++epoch_ == 0) {  // epoch wrapped: clear stamps once
      std::fill(stamps_.begin(), stamps_.end(), 0);
      epoch_ = 1;
    }
  }

  /// Returns true if the value was inserted (i.e. was absent).
  bool insert(std::uint64_t value) {
    std::size_t i = static_cast<std::size_t>(mix(value + 0x9E3779B97F4A7C15ULL)) & mask_;
    for (;;) {
      if (stamps_[i] != epoch_) {
        stamps_[i] = epoch_;
        slots_[i] = value;
        return true;
      }
      if (slots_[i] == value) return false;
      i = (i + 1) & mask_;
    }
  }

 private:
  std::vector<std::uint64_t> slots_;
  std::vector<std::uint32_t> stamps_;
  std::uint64_t mask_ = 0;
  std::uint32_t epoch_ = 0;
};

template <class TrialFn>
std::uint64_t run_trials(std::uint64_t trials, unsigned workers, TrialFn trial) {
  unsigned w = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  w = static_cast<unsigned>(std::min<std::uint64_t>(w, trials));
  if (w <= 1) {
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i) successes += trial(i);
    return successes;
  }
  std::vector<std::uint64_t> partial(w, 0);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    const std::uint64_t lo = trials * t / w;
    const std::uint64_t hi = trials * (t + 1) / w;
    pool.emplace_back([&, lo, hi, t] {
      std::uint64_t s = 0;
      for (std::uint64_t i = lo; i < hi; ++i) s += trial(i);
      partial[t] = s;
    });
  }
  for (std::thread& th : pool) th.join();
  std::uint64_t successes = 0;
  for (std::uint64_t s : partial) successes += s;
  return successes;
}

McResult finish(std::uint64_t successes, const TrialConfig& cfg) {
  McResult r;
  r.successes = successes;
  r.trials = cfg.trials;
  r.estimate = static_cast<double>(successes) / static_cast<double>(cfg.trials);
  const WilsonInterval w = wilson_interval(successes, cfg.trials, cfg.confidence);
  r.ci_lower = w.lower;
  r.ci_upper = w.upper;
  return r;
}

}  // namespace

McResult simulate_subset(const SubsetModelParams& p, const TrialConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.num_blocks() > 0xFFFFFFFFull) {
    throw std::invalid_argument("simulate_subset: more than 2^32 blocks is unsupported");
  }
  const std::uint64_t n_blocks = p.num_blocks();
  const std::uint64_t N = p.universe;
  const std::uint64_t K = p.sample;
  const std::uint64_t S = p.block_len;
  const std::uint64_t R = p.min_hits;

  struct Scratch {
    ScratchSet set;
    std::vector<std::uint32_t> counts;
    std::vector<std::uint32_t> touched;
    bool ready = false;
  };
  thread_local Scratch scratch;

  const auto trial = [&](std::uint64_t index) -> std::uint64_t {
    Scratch& sc = scratch;
    if (!sc.ready || sc.counts.size() != n_blocks) {
      sc.counts.assign(n_blocks, 0);
      sc.ready = true;
    }
    sc.set.reset_capacity(K);
    sc.set.new_trial();
    sc.touched.clear();

    TrialRng rng(cfg.master_seed, index);
    std::uint64_t satisfied = 0;
    const auto place = [&](std::uint64_t elem) {
      const std::uint64_t blk = elem / S;
      if (blk < n_blocks) {
        if (++sc.counts[blk] == R) ++satisfied;
        sc.touched.push_back(static_cast<std::uint32_t>(blk));
      }
    };
    // Floyd's sampling of a K-subset of {0..N-1}.
    for (std::uint64_t j = N - K; j < N; ++j) {
      const std::uint64_t t = rng.next_below(j + 1);
      if (sc.set.insert(t)) {
        place(t);
      } else {
        sc.set.insert(j);
        place(j);
      }
    }
    const bool ok = satisfied == n_blocks;
    for (std::uint32_t blk : sc.touched) sc.counts[blk] = 0;
    return ok ? 1 : 0;
  };

  return finish(run_trials(cfg.trials, cfg.workers, trial), cfg);
}

McResult simulate_bins(const BinsModelParams& p, const TrialConfig& cfg) {
  p.validate();
  cfg.validate();
  if (p.bins > 0xFFFFFFFFull) {
    throw std::invalid_argument("simulate_bins: more than 2^32 bins is unsupported");
  }
  const std::uint64_t m = p.balls;
  const std::uint64_t n = p.bins;
  const std::uint64_t R = p.min_load;

  struct Scratch {
    std::vector<std::uint32_t> counts;
    std::vector<std::uint32_t> touched;
  };
  thread_local Scratch scratch;

  const auto trial = [&](std::uint64_t index) -> std::uint64_t {
    Scratch& sc = scratch;
    if (sc.counts.size() != n) sc.counts.assign(n, 0);
    sc.touched.clear();

    TrialRng rng(cfg.master_seed, index);
    std::uint64_t satisfied = 0;
    for (std::uint64_t b = 0; b < m; ++b) {
      const std::uint64_t bin = rng.next_below(n);
      if (++sc.counts[bin] == R) ++satisfied;
      sc.touched.push_back(static_cast<std::uint32_t>(bin));
    }
    const bool ok = satisfied == n;
    for (std::uint32_t bin : sc.touched) sc.counts[bin] = 0;
    return ok ? 1 : 0;
  };

  return finish(run_trials(cfg.trials, cfg.workers, trial), cfg);
}

}  // namespace occupancy
