#include "tqf/dirichlet.hpp"
#include "tqf/forms.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_EnumerateSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tqf::enumerate_reduced_serial(state.range(0)));
}

void BM_EnumerateParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tqf::enumerate_reduced(state.range(0)));
}

void BM_RecordsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tqf::build_records_serial(state.range(0)));
}

void BM_RecordsParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tqf::build_records(state.range(0)));
}

tqf::DirichletSeries sample(std::size_t N) { return tqf::zeta_shift(1, -1, N) + tqf::zeta_shift(2, 1, N); }

void BM_ConvolveSerial(benchmark::State& state) {
  auto a = sample(state.range(0)), b = tqf::zeta_shift(1, 0, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tqf::convolve_serial(a, b));
}

void BM_ConvolveParallel(benchmark::State& state) {
  auto a = sample(state.range(0)), b = tqf::zeta_shift(1, 0, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tqf::convolve(a, b));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecordsSerial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecordsParallel)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
