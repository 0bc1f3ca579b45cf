#include <benchmark/benchmark.h>

#include "omlat/example5.hpp"
#include "omlat/integrator.hpp"
#include "omlat/kl.hpp"
#include "omlat/noise.hpp"
#include "omlat/om_action.hpp"
#include "omlat/smallball.hpp"

using namespace omlat;

static void BM_Integrate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LatticeConfig cfg = example5_config(n);
  const NoisePath w = sample_noise(1, 600, cfg.dim(), cfg.T / 600);
  const LatticeState u0 = example5_initial_state(n);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(u0, w, cfg));
  state.SetItemsProcessed(state.iterations() * 600 * cfg.dim());
}
BENCHMARK(BM_Integrate)->Arg(5)->Arg(30)->Arg(120);

static void BM_SampleNoise(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_noise(7, 600, 61, 0.05));
}
BENCHMARK(BM_SampleNoise);

static void BM_ActionAndGradient(benchmark::State& state) {
  const LatticeConfig cfg = example5_config(30);
  const Path p = integrate_deterministic(example5_initial_state(30), cfg, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(om_action(p, cfg));
    benchmark::DoNotOptimize(om_gradient(p, cfg));
  }
}
BENCHMARK(BM_ActionAndGradient)->Arg(600)->Arg(1200);

static void BM_KLSpectrum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kl_spectrum(0.4, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_KLSpectrum)->Arg(50)->Arg(500);

static void BM_SmallBall(benchmark::State& state) {
  SmallBallOptions o;
  o.eps = {0.5, 0.3};
  o.samples = 10000;
  o.estimator = SmallBallEstimator::Conditional;
  for (auto _ : state) benchmark::DoNotOptimize(smallball_mc(o));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(o.samples));
}
BENCHMARK(BM_SmallBall)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
