#include <benchmark/benchmark.h>

#include "soliton/cones.hpp"
#include "soliton/sampling.hpp"
#include "soliton/speeds.hpp"

namespace {

using namespace soliton;

CurvatureVector interior_point(const SpeedSpec& spec) {
  SphereSampler sampler(spec.n(), 7);
  return *sampler.next_where([&](const CurvatureVector& x) { return bool(speed_domain_contains(spec, x)); }, 100000);
}

void BM_SigmaK(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = SpeedSpec::sigma_k(n, 2);
  const auto x = interior_point(spec);
  for (auto _ : state) benchmark::DoNotOptimize(eval_speed(spec, x));
}
BENCHMARK(BM_SigmaK)->DenseRange(3, 8);

void BM_Harmonic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = SpeedSpec::harmonic(n);
  const auto x = interior_point(spec);
  for (auto _ : state) benchmark::DoNotOptimize(eval_speed(spec, x));
}
BENCHMARK(BM_Harmonic)->DenseRange(3, 8);

void BM_HarmonicDerivatives(benchmark::State& state) {
  const auto spec = SpeedSpec::harmonic(static_cast<int>(state.range(0)));
  const auto x = interior_point(spec);
  for (auto _ : state) benchmark::DoNotOptimize(eval_derivatives(spec, x));
}
BENCHMARK(BM_HarmonicDerivatives)->DenseRange(3, 6);

void BM_Properties(benchmark::State& state) {
  const auto spec = SpeedSpec::harmonic(4);
  for (auto _ : state) benchmark::DoNotOptimize(check_properties(spec, static_cast<int>(state.range(0)), 42));
}
BENCHMARK(BM_Properties)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
