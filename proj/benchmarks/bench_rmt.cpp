#include <freeprob/rmt.hpp>

#include <benchmark/benchmark.h>

using namespace freeprob;
using namespace freeprob::rmt;

static void BM_HaarUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_haar_unitary(n, stream));
  }
}
BENCHMARK(BM_HaarUnitary)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_RealizeModel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MatrixModel model(n, {spectrum_from_law(NamedLaw::parse("pm1"), n)}, 7);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(realize_model(model, trial++));
  }
}
BENCHMARK(BM_RealizeModel)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_SumSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = spectrum_from_law(NamedLaw::parse("proj:1/2"), n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum_spectrum_experiment(s, s, 1, 42));
  }
}
BENCHMARK(BM_SumSpectrum)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);
