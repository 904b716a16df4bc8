#include <benchmark/benchmark.h>

#include <vector>

#include "sfide/analysis.hpp"
#include "sfide/harness.hpp"
#include "sfide/kernels.hpp"
#include "sfide/noise.hpp"
#include "sfide/problems.hpp"
#include "sfide/solver.hpp"
#include "sfide/specfun.hpp"

namespace {

using namespace sfide;

void BM_BuildQuadrature(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_quadrature(0.8, 0.25, n));
}
BENCHMARK(BM_BuildQuadrature)->Arg(4)->Arg(8)->Arg(16);

void BM_MemoryDiffusionKernel(benchmark::State& state) {
  KernelContext ctx(make_problem(BuiltinProblem::Example52));
  const auto g = ctx.factors(0.01);
  const std::vector<double> y{0.3, -0.2};
  std::vector<double> out(4), scratch(4);
  for (auto _ : state) {
    ctx.memory_diffusion(g, 0.5, y, out, scratch);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_MemoryDiffusionKernel);

void BM_Generate(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  std::uint64_t path = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate(1, path++, N, 2, 1.0 / N));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * N));
}
BENCHMARK(BM_Generate)->Arg(256)->Arg(4096);

// Cost grows as N^2: every step revisits the whole history.
void BM_SolveExample51(benchmark::State& state) {
  KernelContext ctx(make_problem(BuiltinProblem::Example51));
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto paths = generate(7, 0, N, 1, 1.0 / N);
  for (auto _ : state) benchmark::DoNotOptimize(solve(ctx, paths));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveExample51)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_SolveExample52(benchmark::State& state) {
  KernelContext ctx(make_problem(BuiltinProblem::Example52));
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto paths = generate(7, 0, N, 2, 1.0 / N);
  for (auto _ : state) benchmark::DoNotOptimize(solve(ctx, paths));
}
BENCHMARK(BM_SolveExample52)->Arg(64)->Arg(256);

void BM_KernelIncrementL2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernel_increment_l2(-0.25, 1024, 1023, kWorstCaseTheta));
}
BENCHMARK(BM_KernelIncrementL2);

void BM_MsErrorEstimate(benchmark::State& state) {
  KernelContext ctx(make_problem(BuiltinProblem::Example51));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_ms_error(ctx, 32, 50, 42, 1));
}
BENCHMARK(BM_MsErrorEstimate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
