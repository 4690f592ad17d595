#include <freeprob/young.hpp>

#include <benchmark/benchmark.h>

using namespace freeprob;
using namespace freeprob::young;

static void BM_TransitionMeasure(benchmark::State& state) {
  const auto d = YoungDiagram::staircase(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(transition_measure(d));
  }
}
BENCHMARK(BM_TransitionMeasure)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

static void BM_MnCharacter(benchmark::State& state) {
  const auto d = YoungDiagram::square(static_cast<int>(state.range(0)));
  const auto ct = CycleType::parse("2:1,3:1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(mn_character(d, ct));
  }
}
BENCHMARK(BM_MnCharacter)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

static void BM_CharacterEstimate(benchmark::State& state) {
  const auto d = YoungDiagram::square(static_cast<int>(state.range(0)));
  const auto ct = CycleType::parse("2:1,3:1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(character_estimate(d, ct));
  }
}
BENCHMARK(BM_CharacterEstimate)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

static void BM_InducedDecomposition(benchmark::State& state) {
  const auto d1 = YoungDiagram::parse("3,2,1");
  const auto d2 = YoungDiagram::parse(state.range(0) == 0 ? "2,1" : "3,2,1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(induced_decomposition_oracle(d1, d2));
  }
}
BENCHMARK(BM_InducedDecomposition)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
