#include <freeprob/nc_core.hpp>

#include <benchmark/benchmark.h>

using namespace freeprob;

static void BM_EnumerateNc(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nc::enumerate_nc(n));
  }
}
BENCHMARK(BM_EnumerateNc)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_NcJoin(benchmark::State& state) {
  const auto all = nc::enumerate_nc(8);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& p = all[i % all.size()];
    const auto& q = all[(7 * i + 3) % all.size()];
    benchmark::DoNotOptimize(nc::nc_join(p, q));
    ++i;
  }
}
BENCHMARK(BM_NcJoin);

static void BM_NcToPermutation(benchmark::State& state) {
  const auto all = nc::enumerate_nc(10);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nc::nc_to_permutation(all[i++ % all.size()]));
  }
}
BENCHMARK(BM_NcToPermutation);
