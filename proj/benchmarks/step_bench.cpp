#include <benchmark/benchmark.h>

#include "amoeba/amoeba.hpp"

namespace {

void BM_Advance(benchmark::State& state, amoeba::VariantConfig cfg) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const amoeba::TspInstance inst = amoeba::generate_map(n, 1);
  const amoeba::ParamSet params = amoeba::default_params(inst);
  amoeba::Stepper stepper(inst, params, cfg);
  amoeba::Rng rng(7);
  auto s = amoeba::AmoebaState::initial(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stepper.advance(s, rng).l_off);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

void BM_IlluminationArgument(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const amoeba::TspInstance inst = amoeba::generate_map(n, 1);
  const amoeba::ParamSet params = amoeba::default_params(inst);
  amoeba::Matrix x(n, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(amoeba::illumination_argument(x, params, inst, {}));
  }
}

void BM_Trial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const amoeba::TspInstance inst = amoeba::generate_map(n, 3);
  const amoeba::ParamSet params = amoeba::default_params(inst);
  const auto cfg = amoeba::preset("improved");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(amoeba::run_trial(inst, params, cfg, ++seed, 500).iterations);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Advance, original, amoeba::preset("original"))->Arg(10)->Arg(20)->Arg(50)->Arg(100);
BENCHMARK_CAPTURE(BM_Advance, improved, amoeba::preset("improved"))->Arg(10)->Arg(20)->Arg(50)->Arg(100);
BENCHMARK(BM_IlluminationArgument)->Arg(20)->Arg(100);
BENCHMARK(BM_Trial)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
