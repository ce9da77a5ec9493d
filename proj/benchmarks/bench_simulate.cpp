#include <benchmark/benchmark.h>

#include <span>
#include <string>

#include "springleg/calibration.hpp"
#include "springleg/config.hpp"
#include "springleg/cyclic.hpp"
#include "springleg/explore.hpp"
#include "springleg/io.hpp"

namespace {

using namespace springleg;

const std::string kConfigs = SPRINGLEG_CONFIG_DIR;

// Leg-range-bound lossless chain that never reaches solid length.
Configuration long_chain(std::size_t squats, std::size_t samples) {
  Configuration c;
  c.body = {10.0, 10.0};
  c.leg = {0.20, 0.30, 0.0003};
  c.spring = {1000.0, 0.12, 0.0};
  c.initial_spring_position = 0.08;
  c.max_iterations = squats;
  c.sample_count = samples;
  return c;
}

void BM_SimulateChain(benchmark::State& state) {
  const auto c = long_chain(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateChain)->Args({100, 1000})->Args({10000, 100})->Args({10000, 1000})->Unit(benchmark::kMillisecond);

void BM_SquatStep(benchmark::State& state) {
  auto c = parse_config(kConfigs + "/four_squat_accumulation.cfg");
  c.sample_count = static_cast<std::size_t>(state.range(0));
  const auto st = initial_state(c);
  for (auto _ : state) benchmark::DoNotOptimize(squat_step(st, c));
}
BENCHMARK(BM_SquatStep)->Arg(2)->Arg(1000);

void BM_Sweep(benchmark::State& state) {
  const auto base = parse_config(kConfigs + "/four_squat_accumulation.cfg");
  std::vector<double> caps, etas, ks;
  for (int i = 0; i < 10; ++i) {
    caps.push_back(400.0 + 40.0 * i);
    etas.push_back(0.7 + 0.03 * i);
    ks.push_back(6000.0 + 500.0 * i);
  }
  const ParameterGrid grid{{{"force_cap_n", caps}, {"efficiency", etas}, {"spring_stiffness_n_per_m", ks}}};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(base, grid, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FitPrototype(benchmark::State& state) {
  const auto truth = parse_config(kConfigs + "/prototype_experiment.cfg");
  const auto sim = simulate(truth);
  const auto cycles = read_measured_cycles_text(trajectory_csv(sim), summary_csv(sim));
  for (auto _ : state) benchmark::DoNotOptimize(fit_model(cycles, truth));
}
BENCHMARK(BM_FitPrototype)->Unit(benchmark::kMillisecond);

void BM_TrajectoryCsv(benchmark::State& state) {
  const auto sim = simulate(parse_config(kConfigs + "/four_squat_accumulation.cfg"));
  for (auto _ : state) benchmark::DoNotOptimize(trajectory_csv(sim));
}
BENCHMARK(BM_TrajectoryCsv)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
