#include <benchmark/benchmark.h>

#include "slproj/slproj.hpp"

namespace {

using namespace slproj;

Spectrum spectrum_for(int n, std::uint64_t seed, bool det_below_one) {
  testgen::SplitMix64 rng(seed);
  MatrixN a = testgen::gen_matrix(n, 100.0, rng);
  while ((det(a) < 1.0) == !det_below_one) a = testgen::gen_matrix(n, 100.0, rng);
  return Spectrum(svd(a).sigma, false);
}

void BM_svd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  testgen::SplitMix64 rng(1);
  const MatrixN a = testgen::gen_matrix(n, 100.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(svd(a));
}
BENCHMARK(BM_svd)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_bisection(benchmark::State& state) {
  const Spectrum a = spectrum_for(static_cast<int>(state.range(0)), 2, true);
  for (auto _ : state) benchmark::DoNotOptimize(bisection::solve(a));
}
BENCHMARK(BM_bisection)->Arg(4)->Arg(16)->Arg(64);

void BM_composite(benchmark::State& state) {
  const Spectrum a = spectrum_for(static_cast<int>(state.range(0)), 3, false);
  const std::vector<double> p0 = initial_iterate(a);
  for (auto _ : state) benchmark::DoNotOptimize(composite::solve(a, p0));
}
BENCHMARK(BM_composite)->Arg(4)->Arg(16)->Arg(64);

void BM_newton_log(benchmark::State& state) {
  const Spectrum a = spectrum_for(static_cast<int>(state.range(0)), 4, true);
  for (auto _ : state) benchmark::DoNotOptimize(project_spectrum(a, Algorithm::newton_log));
}
BENCHMARK(BM_newton_log)->Arg(4)->Arg(16)->Arg(64);

void BM_newton_hyp(benchmark::State& state) {
  const Spectrum a = spectrum_for(static_cast<int>(state.range(0)), 5, true);
  for (auto _ : state) benchmark::DoNotOptimize(project_spectrum(a, Algorithm::newton_hyp));
}
BENCHMARK(BM_newton_hyp)->Arg(4)->Arg(16)->Arg(64);

void BM_project_full(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  testgen::SplitMix64 rng(6);
  const MatrixN a = testgen::gen_matrix(n, 100.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(project(a));
}
BENCHMARK(BM_project_full)->Arg(4)->Arg(16)->Arg(64);

void BM_sensitivity_block(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  testgen::SplitMix64 rng(7);
  std::vector<double> sigma(static_cast<std::size_t>(n));
  for (double& s : sigma) s = rng.next_uniform(0.5, 2.0);
  MatrixN r(n);
  for (double& v : r.data()) v = rng.next_uniform(-1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_sensitivity(sigma, -0.3, r, SensitivityMode::block));
}
BENCHMARK(BM_sensitivity_block)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
