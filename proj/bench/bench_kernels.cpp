// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "polyqubit/kernels.hpp"
#include "polyqubit/random.hpp"
#include "polyqubit/sweep.hpp"

using namespace polyqubit;

namespace {

const std::vector<Complex>& amplitudes(int n) {
  static std::vector<std::vector<Complex>> cache(32);
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (slot.empty()) slot = haar_amplitudes(std::size_t{1} << n, 1234);
  return slot;
}

void BM_OneQubitSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& amps = amplitudes(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reduce_one_qubit_serial(amps, n, n / 2));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * amps.size() * sizeof(Complex)));
}

void BM_OneQubitParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& amps = amplitudes(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reduce_one_qubit(amps, n, n / 2));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * amps.size() * sizeof(Complex)));
}

void BM_SitesSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& amps = amplitudes(n);
  const std::vector<int> sites{0, n / 2, n - 1};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reduce_sites_serial(amps, 2, n, sites));
}

void BM_SitesParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& amps = amplitudes(n);
  const std::vector<int> sites{0, n / 2, n - 1};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reduce_sites(amps, 2, n, sites));
}

void BM_NecessitySweep(benchmark::State& state) {
  SweepOptions opt;
  opt.parallel = state.range(0) != 0;
  opt.certify = true;
  for (auto _ : state) benchmark::DoNotOptimize(necessity_sweep(6, 500, 7, opt).min_slack);
}

void BM_SufficiencySweep(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(sufficiency_sweep(6, 500, 7, parallel).max_error);
}

}  // namespace

BENCHMARK(BM_OneQubitSerial)->DenseRange(14, 22, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OneQubitParallel)->DenseRange(14, 22, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SitesSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SitesParallel)->DenseRange(14, 20, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NecessitySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SufficiencySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
