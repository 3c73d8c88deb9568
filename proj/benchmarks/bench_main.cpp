#include <benchmark/benchmark.h>

#include "extremal/finite/graph.hpp"
#include "extremal/finite/lasserre.hpp"
#include "extremal/finite/theta.hpp"
#include "extremal/orthopoly/gegenbauer.hpp"
#include "extremal/orthopoly/three_point.hpp"
#include "extremal/sphere/bounds.hpp"
#include "extremal/sphere/certify.hpp"

using namespace extremal;

static void BM_GegenbauerValues(benchmark::State& state) {
  const int kmax = static_cast<int>(state.range(0));
  double t = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(orthopoly::gegenbauer_values(8, kmax, t));
  }
}
BENCHMARK(BM_GegenbauerValues)->Arg(10)->Arg(40);

static void BM_GegenbauerExact(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(orthopoly::gegenbauer_family(24, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GegenbauerExact)->Arg(10)->Arg(20);

static void BM_SMatrix(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(orthopoly::s_matrix(4, 2, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SMatrix)->Arg(6)->Arg(10);

static void BM_KissingLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphere::kissing_lp(n, 10, 200));
  }
}
BENCHMARK(BM_KissingLp)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_CertifyKissingLp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphere::certify_kissing_lp(8, 6));
  }
}
BENCHMARK(BM_CertifyKissingLp)->Unit(benchmark::kMillisecond);

static void BM_ThetaPrime(benchmark::State& state) {
  const auto g = finite::random_graph(static_cast<int>(state.range(0)), 0.3, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(finite::theta_finite(g, finite::ThetaVariant::Prime));
  }
}
BENCHMARK(BM_ThetaPrime)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_LasserreStepTwo(benchmark::State& state) {
  const auto g = finite::cycle_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(finite::lasserre_solve(g, 2));
  }
}
BENCHMARK(BM_LasserreStepTwo)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
