#include <benchmark/benchmark.h>

#include "desolve/chebyshev.hpp"
#include "desolve/csvm.hpp"
#include "desolve/kernel.hpp"
#include "desolve/lssvm.hpp"
#include "desolve/problems.hpp"
#include "desolve/tfc.hpp"

namespace {

using desolve::ProblemId;
using desolve::get_problem;

void BM_ChebyshevBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto grid = desolve::make_collocation_grid(n, 0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(desolve::chebyshev_basis(grid.x_points, 30, 2));
  }
}
BENCHMARK(BM_ChebyshevBasis)->Arg(16)->Arg(100);

void BM_RbfKernelBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = desolve::make_collocation_grid(n, 0.0, 1.0).t_points;
  for (auto _ : state) {
    benchmark::DoNotOptimize(desolve::rbf_kernel_block(t, t, 0.3));
  }
}
BENCHMARK(BM_RbfKernelBlock)->Arg(16)->Arg(100);

void BM_TfcP1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(desolve::solve_linear_ode_tfc(get_problem(ProblemId::P1), n, 26, 2));
  }
}
BENCHMARK(BM_TfcP1)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TfcP2(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(desolve::solve_nonlinear_ode_tfc(get_problem(ProblemId::P2), 32, 32, {}, 2));
  }
}
BENCHMARK(BM_TfcP2)->Unit(benchmark::kMillisecond);

void BM_TfcP4(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(desolve::solve_linear_pde_tfc(get_problem(ProblemId::P4), 100, 15, 4));
  }
}
BENCHMARK(BM_TfcP4)->Unit(benchmark::kMillisecond);

void BM_LssvmP1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        desolve::solve_linear_ode_lssvm(get_problem(ProblemId::P1), n, {0.3162, 2.154e13}, 2));
  }
}
BENCHMARK(BM_LssvmP1)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_LssvmP2(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        desolve::solve_nonlinear_ode_lssvm(get_problem(ProblemId::P2), 100, {0.4853, 1e10}, {}, 2));
  }
}
BENCHMARK(BM_LssvmP2)->Unit(benchmark::kMillisecond);

void BM_CsvmP1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        desolve::solve_linear_ode_csvm(get_problem(ProblemId::P1), n, {0.1468, 3.594e15}, 2));
  }
}
BENCHMARK(BM_CsvmP1)->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CsvmP4(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(desolve::solve_pde_csvm(get_problem(ProblemId::P4), 100, {0.8891, 1e14}, 4));
  }
}
BENCHMARK(BM_CsvmP4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
