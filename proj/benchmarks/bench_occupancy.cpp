#include <benchmark/benchmark.h>

#include "occupancy/asymptotics.hpp"
#include "occupancy/exact.hpp"
#include "occupancy/inclusion_exclusion.hpp"
#include "occupancy/monte_carlo.hpp"

using namespace occupancy;

namespace {

void BM_SubsetExactRational(benchmark::State& state) {
  const SubsetModelParams p{static_cast<std::uint64_t>(state.range(0)),
                            static_cast<std::uint64_t>(state.range(0)) / 10,
                            static_cast<std::uint64_t>(state.range(0)) / 2, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(subset_prob_exact_rational(p));
  }
}
BENCHMARK(BM_SubsetExactRational)->Arg(60)->Arg(120)->Arg(240)->Unit(benchmark::kMicrosecond);

void BM_SubsetExactLogspace(benchmark::State& state) {
  // coupon-collector scale: 100 blocks, K near the 1/e threshold
  const std::uint64_t N = static_cast<std::uint64_t>(state.range(0));
  const SubsetModelParams p{N, N / 100, 461, 1};
  CostBudget b;
  b.max_exact_rational_ops = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(subset_prob_exact(p, b));
  }
}
BENCHMARK(BM_SubsetExactLogspace)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_BinsExactRational(benchmark::State& state) {
  const BinsModelParams p{static_cast<std::uint64_t>(state.range(0)),
                          static_cast<std::uint64_t>(state.range(0)) / 5, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bins_prob_exact_rational(p));
  }
}
BENCHMARK(BM_BinsExactRational)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_InclusionExclusionFloat(benchmark::State& state) {
  const SubsetModelParams p{1000000, 1000, 6908, static_cast<std::uint64_t>(state.range(0))};
  IeOptions opts;
  opts.mode = IeOptions::Mode::force_float;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inclusion_exclusion_prob(p, opts));
  }
}
BENCHMARK(BM_InclusionExclusionFloat)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_TInverse(benchmark::State& state) {
  const std::uint32_t j = static_cast<std::uint32_t>(state.range(0));
  const double s = G(j, j + 25.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(T_inverse(j, s));
  }
}
BENCHMARK(BM_TInverse)->Arg(0)->Arg(5)->Arg(20);

void BM_ThresholdK(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold_K(1000000, 1000, 3, 1.0));
  }
}
BENCHMARK(BM_ThresholdK);

void BM_SimulateSubset(benchmark::State& state) {
  const SubsetModelParams p{1000000, 1000, 6908, 1};
  const TrialConfig cfg{static_cast<std::uint64_t>(state.range(0)), 1729, 0.95, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_subset(p, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSubset)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SimulateBins(benchmark::State& state) {
  const BinsModelParams p{6908, 1000, 1};
  const TrialConfig cfg{static_cast<std::uint64_t>(state.range(0)), 1729, 0.95, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_bins(p, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBins)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
