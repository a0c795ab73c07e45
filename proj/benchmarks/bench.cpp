#include <benchmark/benchmark.h>

#include <random>

#include "hydrocert/flows.hpp"
#include "hydrocert/sos.hpp"

using namespace hydrocert;

namespace {

linalg::SymMat random_sym(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  linalg::SymMat a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.at(i, j) = u(rng);
  return a;
}

void BM_JacobiEigen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  linalg::SymMat a = random_sym(n, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(linalg::eigen_sym(a));
}
BENCHMARK(BM_JacobiEigen)->Arg(6)->Arg(12)->Arg(24);

void BM_StabilityFeasibility(benchmark::State& state) {
  certify::FlowProblem f = flows::rotating_couette(
      {0.0, 3.141592653589793}, static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(certify::check_stability(f));
}
BENCHMARK(BM_StabilityFeasibility)->Arg(100)->Arg(10000);

void BM_GainMinimization(benchmark::State& state) {
  certify::FlowProblem f =
      flows::rotating_couette({0.0, 3.141592653589793},
                              static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(certify::minimize_gains(f));
}
BENCHMARK(BM_GainMinimization)->Arg(100)->Arg(400);

void BM_SosCompile(benchmark::State& state) {
  certify::FlowProblem f = flows::poiseuille_like(3.141592653589793, 0.5);
  polymatrix::SymPolyMatrix m = certify::build_stability_matrix(f);
  sos::SemialgebraicBox box = f.box();
  const int deg = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sos::compile(m, box, deg));
}
BENCHMARK(BM_SosCompile)->Arg(2)->Arg(3);

void BM_SosSolve(benchmark::State& state) {
  certify::FlowProblem f = flows::poiseuille_like(3.141592653589793, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(certify::check_stability(f));
}
BENCHMARK(BM_SosSolve);

void BM_CriticalReynolds(benchmark::State& state) {
  certify::FlowFamily family = [](double re) {
    return flows::rotating_couette({0.5, 3.141592653589793}, re);
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(certify::critical_reynolds(family, 0.05, 100.0));
}
BENCHMARK(BM_CriticalReynolds);

}  // namespace

BENCHMARK_MAIN();
