#include <benchmark/benchmark.h>

#include "soliton/barriers.hpp"
#include "soliton/picard.hpp"

namespace {

using namespace soliton;

void BM_OperatorT(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto w4 = Barrier::make(BarrierName::w4, 3);
  const auto w3 = Barrier::make(BarrierName::w3, 3);
  const auto g = sample_grid(picard_radius_R1(3), m, [&](double r) { return 0.5 * (w4(r) + w3(r)); });
  for (auto _ : state) benchmark::DoNotOptimize(operator_T(3, g));
  state.SetComplexityN(m);
}
BENCHMARK(BM_OperatorT)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_PicardSolve(benchmark::State& state) {
  PicardOptions o;
  o.m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(3, o));
}
BENCHMARK(BM_PicardSolve)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
