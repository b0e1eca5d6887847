#include <benchmark/benchmark.h>

#include "gammalim/exact_rational.hpp"
#include "gammalim/kernel.hpp"
#include "gammalim/limits.hpp"
#include "gammalim/poles.hpp"

using namespace gammalim;

static void BM_Gamma(benchmark::State& state) {
  const long bits = state.range(0);
  const kernel::EvalPoint x(ExtReal(ExactRational(-7, 3), bits));
  for (auto _ : state) benchmark::DoNotOptimize(kernel::gamma(x, bits));
}
BENCHMARK(BM_Gamma)->Arg(128)->Arg(256)->Arg(1024);

static void BM_Polygamma(benchmark::State& state) {
  const unsigned order = static_cast<unsigned>(state.range(0));
  const kernel::EvalPoint x(ExtReal(ExactRational(7, 3), 256));
  for (auto _ : state) benchmark::DoNotOptimize(kernel::polygamma(order, x, 256));
}
BENCHMARK(BM_Polygamma)->Arg(0)->Arg(4)->Arg(32);

static void BM_GammaDerivative(benchmark::State& state) {
  const kernel::EvalPoint x(ExtReal(ExactRational(5, 2), 256));
  for (auto _ : state) benchmark::DoNotOptimize(kernel::gamma_derivative(static_cast<unsigned>(state.range(0)), x, 256));
}
BENCHMARK(BM_GammaDerivative)->Arg(1)->Arg(6);

// The memo is keyed by (m, precision); vary the precision to measure construction.
static void BM_FnJetCold(benchmark::State& state) {
  long bits = 256;
  for (auto _ : state) benchmark::DoNotOptimize(poles::fn_jet(3, static_cast<std::size_t>(state.range(0)), ++bits));
}
BENCHMARK(BM_FnJetCold)->Arg(16)->Arg(64)->Iterations(20);

static void BM_EvalNearPole(benchmark::State& state) {
  const ExtReal z(ExactRational(-193, 64), 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poles::eval_near_pole({poles::FunctionKind::GammaDerivative, 3}, z, 256));
  }
}
BENCHMARK(BM_EvalNearPole);

static void BM_NumericLimit(benchmark::State& state) {
  const limits::RatioLimitSpec spec{limits::Family::GammaDerivative, 4, 3, static_cast<long>(state.range(0)), 3};
  for (auto _ : state) benchmark::DoNotOptimize(limits::numeric_ratio_limit(spec, {}, 256));
}
BENCHMARK(BM_NumericLimit)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
