#include <freeprob/cumulants.hpp>
#include <freeprob/transforms.hpp>

#include <benchmark/benchmark.h>

using namespace freeprob;

static void BM_FreeCumulantsExact(benchmark::State& state) {
  const auto m = moments_of(NamedLaw::parse("bernoulli:1/3:-1:2"), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_cumulants_from_moments(m));
  }
}
BENCHMARK(BM_FreeCumulantsExact)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMicrosecond);

static void BM_FreeCumulantsReal(benchmark::State& state) {
  const auto m = to_real(moments_of(NamedLaw::parse("bernoulli:1/3:-1:2"), static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_cumulants_from_moments(m));
  }
}
BENCHMARK(BM_FreeCumulantsReal)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMicrosecond);

static void BM_FreeConvolve(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto a = moments_of(NamedLaw::parse("proj:1/3"), k);
  const auto b = moments_of(NamedLaw::parse("semicircle:2"), k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_convolve(a, b, k));
  }
}
BENCHMARK(BM_FreeConvolve)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMicrosecond);

static void BM_CauchyInversion(benchmark::State& state) {
  const auto g = cauchy_series(moments_of(NamedLaw::parse("pm1"), static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(r_coefficients_via_inversion(g));
  }
}
BENCHMARK(BM_CauchyInversion)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMicrosecond);
