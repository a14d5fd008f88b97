#include <benchmark/benchmark.h>

#include <cmath>

#include "sinai/environment.hpp"
#include "sinai/fluctuations.hpp"
#include "sinai/mittag_leffler.hpp"
#include "sinai/quenched.hpp"
#include "sinai/rwre.hpp"
#include "sinai/stable.hpp"
#include "sinai/xi.hpp"

using namespace sinai;

static void BM_StableDraw(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 100.0;
  const StableLaw law = alpha == 2.0 ? StableLaw::gaussian() : StableLaw::make(alpha, 0.45);
  RandomStream r(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_stable(law, r));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StableDraw)->Arg(200)->Arg(150)->Arg(70);

static void BM_MittagLeffler(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mlf(1.5, x));
}
BENCHMARK(BM_MittagLeffler)->Arg(-30)->Arg(-3)->Arg(3)->Arg(300);

static void BM_Rho1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rho1(1.5));
}
BENCHMARK(BM_Rho1)->Unit(benchmark::kMicrosecond);

static void BM_RwreSteps(benchmark::State& state) {
  const Environment env = build_environment(StepModel::log_odds(std::sqrt(2.0)), 1 << 16, 3);
  RandomStream r(2);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rwre_trajectory(env, n, r));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RwreSteps)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_XiSample(benchmark::State& state) {
  XiOptions opt;
  opt.steps_per_unit = static_cast<std::size_t>(state.range(0));
  RandomStream r(3);
  const StableLaw law = StableLaw::one_sided(1.5, Spectral::NoNegativeJumps);
  opt.backward = XiBackward::ScaleFunction;
  for (auto _ : state) benchmark::DoNotOptimize(sample_xi_detailed(law, r, opt).xi);
}
BENCHMARK(BM_XiSample)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

static void BM_RangeDecay(benchmark::State& state) {
  RandomStream r(4);
  RangeDecayOptions opt;
  opt.workers = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_range_decay(StepModel::gaussian(), 8.0, {128, 256, 512}, 2000, r, opt));
}
BENCHMARK(BM_RangeDecay)->Unit(benchmark::kMillisecond);

static void BM_QuenchedHit(benchmark::State& state) {
  const Environment env = build_environment(StepModel::gaussian(), 1 << 14, 5);
  RandomStream r(5);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(quenched_hitting_time(env, 256.0, 0.5, r).log_sigma);
    } catch (const TruncatedI2&) {
    }
  }
}
BENCHMARK(BM_QuenchedHit)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
