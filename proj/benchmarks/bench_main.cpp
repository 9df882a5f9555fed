// Copyright 2026 The dcone Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "dcone/analysis.hpp"
#include "dcone/analytic_solutions.hpp"
#include "dcone/classifier.hpp"
#include "dcone/fd_solver.hpp"

namespace {

using namespace dcone;

void BM_Classify(benchmark::State& state) {
  const ObstaclePair pair{-1.2, 0.3, -0.8, 1.5, -0.4, 0.9};
  for (auto _ : state) {
    const Normalization norm = normalize(pair);
    benchmark::DoNotOptimize(classify(norm.pair));
  }
}
BENCHMARK(BM_Classify);

void BM_EnumerateCase2(benchmark::State& state) {
  const NormalizedPair pair{-1, -1, 2, 0};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_double_cones(pair));
}
BENCHMARK(BM_EnumerateCase2);

// Fixed iteration count, so the time is per-sweep cost times range(1).
void BM_PsorSweeps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BlowupSolution mu = build_mu(1.0, 2.0);
  SolveConfig cfg;
  cfg.omega = optimal_omega(n);
  cfg.order = SweepOrder::RedBlack;
  cfg.max_iterations = 100;
  cfg.tolerance = 1e-300;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(
        kCanonicalPair.as_pair(), GridSpec{1.0, n}, [&](Vec2 x) { return mu.value(x); }, cfg));
  }
  state.SetItemsProcessed(state.iterations() * 100 * static_cast<std::int64_t>(n) * n);
}
BENCHMARK(BM_PsorSweeps)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_WeissEnergy(benchmark::State& state) {
  const ScalarField f =
      sample_field(kCanonicalPair.as_pair(), GridSpec{1.0, 257}, build_mu(1.0, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(weiss_energy(f, 0.5));
}
BENCHMARK(BM_WeissEnergy)->Unit(benchmark::kMillisecond);

void BM_FitMinimalDoubleCone(benchmark::State& state) {
  const DiskSamples s = sample_disk(build_mu(kPi / 3, kPi / 2));
  for (auto _ : state) benchmark::DoNotOptimize(fit_minimal_double_cone(s, kCanonicalPair));
}
BENCHMARK(BM_FitMinimalDoubleCone)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
