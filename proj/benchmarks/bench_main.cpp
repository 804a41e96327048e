#include <benchmark/benchmark.h>

#include <vector>

#include "sphlrd/contrast.hpp"
#include "sphlrd/periodogram.hpp"
#include "sphlrd/rng.hpp"
#include "sphlrd/scenario.hpp"
#include "sphlrd/simulator.hpp"

using namespace sphlrd;

namespace {

std::vector<double> noise(int T) {
  auto rng = make_stream(1, {0});
  std::normal_distribution<double> z;
  std::vector<double> x(static_cast<std::size_t>(T));
  for (auto& v : x) v = z(rng);
  return x;
}

void BM_fdft_fast(benchmark::State& state) {
  const auto x = noise(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fdft_series(x, DftMethod::fast));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_fdft_fast)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity();

void BM_fdft_direct(benchmark::State& state) {
  const auto x = noise(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fdft_series(x, DftMethod::direct));
}
BENCHMARK(BM_fdft_direct)->RangeMultiplier(4)->Range(64, 4096);

void BM_simulate_scale(benchmark::State& state) {
  const auto sc = resolve_scenario("sphar1_compact");
  const int T = static_cast<int>(state.range(0));
  auto rng = make_stream(sc.seed, {0});
  for (auto _ : state) benchmark::DoNotOptimize(simulate_scale(sc.model, 1, T, 2 * 4096, 4096, rng));
}
BENCHMARK(BM_simulate_scale)->RangeMultiplier(4)->Range(64, 1 << 14);

void BM_contrast_select(benchmark::State& state) {
  const auto sc = resolve_scenario("sphar1_compact");
  const int T = static_cast<int>(state.range(0));
  const auto p = periodogram_scale(fdft(simulate_sample(sc.sim_config(T, 0))));
  const ContrastEngine engine(sc.model, sc.contrast_config(), p.scales(), T);
  for (auto _ : state) benchmark::DoNotOptimize(engine.select(p));
}
BENCHMARK(BM_contrast_select)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
