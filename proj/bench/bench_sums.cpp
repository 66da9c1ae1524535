#include <benchmark/benchmark.h>

#include "multdens/limits.hpp"
#include "multdens/reference.hpp"
#include "multdens/sums.hpp"

using namespace multdens;

namespace {

const FactorSieve& shared_sieve() {
  static const FactorSieve sieve(1 << 16);
  return sieve;
}

const IntervalAt kInterval = IntervalAt::exact({1, 2}, {3, 1});
const CoprimalitySpec kClass(2, 3, 5);

bool in_class(const ReducedFraction& f) { return in_coprimality_class(f, kClass); }

// Serial gcd-per-pair baseline.
void BM_ReferenceDirect(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::s_direct(x, kInterval, {1, 1}, in_class).value);
}

// Sieve-based enumeration over denominator blocks; second argument is the thread cap.
void BM_ParallelDirect(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  const ExecPolicy policy{static_cast<int>(state.range(1)), 1024};
  for (auto _ : state)
    benchmark::DoNotOptimize(s_direct(x, kInterval, {1, 1}, in_class, shared_sieve(), policy).value);
}

void BM_Mobius(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  const ExecPolicy policy{static_cast<int>(state.range(1)), 1024};
  for (auto _ : state) benchmark::DoNotOptimize(s_mobius(x, kInterval, {1, 1}, kClass, shared_sieve(), policy).value);
}

void BM_SubsetDensity(benchmark::State& state) {
  const std::vector<u64> a = {2, 3, 5, 7, 11, 13, 17};
  const std::vector<u64> b = {1, 19, 23};
  for (auto _ : state)
    benchmark::DoNotOptimize(ie_density(a, b, 1, shared_sieve(), static_cast<int>(state.range(0))).to_double());
}

}  // namespace

BENCHMARK(BM_ReferenceDirect)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelDirect)->ArgsProduct({{500, 2000, 8000}, {1, 0}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mobius)->ArgsProduct({{500, 2000, 8000, 20000}, {1, 0}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsetDensity)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
