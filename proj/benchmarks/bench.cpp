// Microbenchmarks for the hot evaluation paths: Christoffel assembly,
// curvature contraction, and a single connection-form sample.

#include <benchmark/benchmark.h>

#include "llcartan/ambient.hpp"
#include "llcartan/scenarios.hpp"

using namespace llcartan;

static void BM_Christoffels(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto amb = ambient::build_ambient_c(ambient::cone_family(m), 1.0);
  const auto chart = amb.chart();
  Rng rng(7);
  const VectorXd x = chart.domain.sample(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(lorentz::christoffels(chart, x));
}
BENCHMARK(BM_Christoffels)->Arg(2)->Arg(3)->Arg(4);

static void BM_Ricci(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto fg = ambient::fg_cone_metric(m);
  const auto chart = fg.ambient.chart();
  Rng rng(7);
  const VectorXd x = chart.domain.sample(rng);
  VectorXd e0 = VectorXd::Zero(chart.dim);
  e0[0] = 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(lorentz::ricci(chart, x, e0, e0));
}
BENCHMARK(BM_Ricci)->Arg(2)->Arg(3);

static void BM_OmegaEval(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto imm = scenarios::model_cone(m);
  Rng rng(7);
  const VectorXd y = imm.chart.domain.sample(rng);
  const auto b = cartan::standard_frame(imm.chart, y);
  const VectorXd v = rng.gaussian_vec(m + 1);
  const lie::Algebra vert(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(cartan::omega_eval(imm, b, v, vert));
}
BENCHMARK(BM_OmegaEval)->Arg(2)->Arg(3);

static void BM_RankTest(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto imm = scenarios::model_cone(m);
  Rng rng(7);
  const VectorXd y = imm.chart.domain.sample(rng);
  const auto b = cartan::standard_frame(imm.chart, y);
  for (auto _ : state)
    benchmark::DoNotOptimize(cartan::cartan_rank_test(imm, b));
}
BENCHMARK(BM_RankTest)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
