#include <benchmark/benchmark.h>

#include "soliton/profiles.hpp"

namespace {

using namespace soliton;

void BM_SigmaProfile(benchmark::State& state) {
  const auto spec = SpeedSpec::sigma_k(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_profile(spec, {}));
}
BENCHMARK(BM_SigmaProfile)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_HarmonicProfile(benchmark::State& state) {
  const auto spec = SpeedSpec::harmonic(static_cast<int>(state.range(0)));
  ProfileOptions o;
  o.r_max = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_profile(spec, o));
}
BENCHMARK(BM_HarmonicProfile)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_CylinderHeight(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cyl_profile(0.0, z));
    z = z > 3.0 ? -0.5 : z + 0.01;
  }
}
BENCHMARK(BM_CylinderHeight);

}  // namespace
