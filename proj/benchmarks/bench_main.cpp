#include <benchmark/benchmark.h>

#include "minred/generators.hpp"
#include "minred/invariants.hpp"
#include "minred/io.hpp"
#include "minred/minimise.hpp"
#include "minred/reduction.hpp"
#include "minred/singular.hpp"
#include "minred/weights.hpp"

using namespace minred;

namespace {

Model5 fixture(const char* name) { return read_model_file(std::string(MINRED_FIXTURE_DIR) + "/" + name).model; }

void BM_Pfaffians(benchmark::State& state) {
  const Model5 m = random_integral_model(1, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffians(m));
}
BENCHMARK(BM_Pfaffians);

// Argument: scramble bound (coefficient size of the input).
void BM_Invariants(benchmark::State& state) {
  const Model5 m = scramble(make_model(WeierstrassCoefficients{1, 1, 1, -3146, 39049}), 3, state.range(0)).model;
  for (auto _ : state) benchmark::DoNotOptimize(invariants(m));
}
BENCHMARK(BM_Invariants)->Arg(0)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SingularSpan(benchmark::State& state) {
  const Model5 m = make_saturated(fixture("wuthrich.g1"), Int(2)).model;
  for (auto _ : state) benchmark::DoNotOptimize(singular_span(m, 2));
}
BENCHMARK(BM_SingularSpan)->Unit(benchmark::kMillisecond);

void BM_MinimiseWuthrich(benchmark::State& state) {
  const Model5 m = fixture("wuthrich.g1");
  for (auto _ : state) benchmark::DoNotOptimize(minimise_global(m, {Int(2)}));
}
BENCHMARK(BM_MinimiseWuthrich)->Unit(benchmark::kMillisecond);

// Argument: inflation level k at p = 3.
void BM_MinimiseInflated(benchmark::State& state) {
  const Model5 base = make_model(WeierstrassCoefficients{0, 0, 1, -1, 0});
  const Model5 m = scramble(base, 5, 20, Inflation{Int(3), state.range(0)}).model;
  for (auto _ : state) benchmark::DoNotOptimize(minimise_local(m, Int(3)));
}
BENCHMARK(BM_MinimiseInflated)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

// Argument: starting precision in bits.
void BM_ReduceHesse(benchmark::State& state) {
  const Scramble sc = scramble(hesse_model(2, -3), 11, 1000);
  const HessianHandle h = HessianHandle::transported(sc.g, 2, -3);
  ReductionOptions ro;
  ro.numeric.bits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(sc.model, h, ro));
}
BENCHMARK(BM_ReduceHesse)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_VerifyTable29(benchmark::State& state) {
  VerifyOptions vo;
  vo.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_domination_table(twenty_nine_weight_table(), {}, vo));
}
BENCHMARK(BM_VerifyTable29)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
