#include <benchmark/benchmark.h>

#include <random>

#include "stfem/linalg.hpp"
#include "stfem/methods.hpp"
#include "stfem/temporal.hpp"

using namespace stfem;

namespace {

ProblemData bench_data() {
  ProblemData d;
  d.f = [](double x, double t) { return std::sin(3 * x + t); };
  d.u0 = [](double x) { return x * (1 - x); };
  d.du0 = [](double x) { return 1 - 2 * x; };
  d.v0 = [](double x) { return x * (1 - x); };
  return d;
}

// Block-banded matrix shaped like a slab system: (q+1) x (q+1) blocks on a tridiagonal pattern.
DenseMatrix banded(std::size_t blocks, std::size_t b) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t n = blocks * b;
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i / b > 0 ? (i / b - 1) * b : 0); j < std::min(n, (i / b + 2) * b); ++j) a(i, j) = u(rng);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 4.0 * b;
  return a;
}

void BM_LuFactorBanded(benchmark::State& state) {
  const auto a = banded(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(lu_factor(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LuFactorBanded)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_GaussRadau(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gauss_radau_left(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussRadau)->DenseRange(1, 12, 3);

void BM_Solve(benchmark::State& state) {
  const auto scheme = kAllSchemes[state.range(0)];
  MethodSpec spec;
  spec.scheme = scheme;
  spec.q = min_time_degree(scheme) + 1;
  spec.p = 2;
  spec.cfl_override = true;
  const auto space = build_space(0, 1, 64, 2);
  const auto mesh = TimeMesh::uniform(1.0, 32);
  const auto data = bench_data();
  for (auto _ : state) benchmark::DoNotOptimize(solve(spec, space, mesh, data));
  state.SetLabel(std::string(scheme_name(scheme)));
}
BENCHMARK(BM_Solve)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
