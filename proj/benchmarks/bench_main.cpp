#include <benchmark/benchmark.h>

#include "isoppp/analytic.hpp"
#include "isoppp/mcsim.hpp"
#include "isoppp/outage.hpp"

using namespace isoppp;

static void BM_DrivingA4(benchmark::State& state) {
  const ShapeFunction s = finite_network_shape(500, 800);
  const double y0 = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interference_driving_a4(s, y0, 5000.0).value);
}
BENCHMARK(BM_DrivingA4)->Arg(0)->Arg(400)->Arg(1200);

static void BM_DrivingA2(benchmark::State& state) {
  const ShapeFunction s = scattered_shape(100);
  const double y0 = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interference_driving_a2(s, y0, 50.0).value);
}
BENCHMARK(BM_DrivingA2)->Arg(0)->Arg(50)->Arg(1000);

static void BM_OutageSweep(benchmark::State& state) {
  const ShapeFunction s = finite_network_shape(500, 800);
  const ChannelModel ch{4.0, 1.0, FadingLaw::rayleigh()};
  LinkConfig link;
  link.beta = 0.5;
  for (auto _ : state) {
    double acc = 0;
    for (double y0 = 0; y0 <= 1500; y0 += 10) {
      link.y0_norm = y0;
      acc += outage_exact(s, ch, link);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_OutageSweep)->Unit(benchmark::kMillisecond);

static void BM_SamplerBuild(benchmark::State& state) {
  const ShapeFunction s = carrier_sense_shape(1e-5, 4);
  for (auto _ : state) {
    PointProcessSampler sampler(s, 1e-3, 1000.0);
    benchmark::DoNotOptimize(sampler.expected_count());
  }
}
BENCHMARK(BM_SamplerBuild)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  const ShapeFunction s = scattered_shape(100);
  const ChannelModel ch{4.0, 1.0, FadingLaw::rayleigh()};
  LinkConfig link;
  link.y0_norm = 50;
  SimConfig cfg;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(s, ch, link, {}, cfg).mean.value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
