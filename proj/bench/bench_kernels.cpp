#include <benchmark/benchmark.h>

#include "gw/grunwald.hpp"
#include "gw/mult_one.hpp"

using namespace gw;

namespace {

// Obstructed order-8 data at 2: the least solution has exponent 16 and conductor 34887.
GrunwaldInstance obstructed() {
  GrunwaldInstance inst;
  inst.m = 8;
  inst.places = {LocalCharacter::unramified(2, 8, 1), LocalCharacter::unramified(5, 8, 0),
                 LocalCharacter::unramified(7, 8, 1)};
  return inst;
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_oracle_search(benchmark::State& state) {
  const auto inst = obstructed();
  for (auto _ : state) {
    auto chi = oracle_search(inst, 16, 40'000, mode(state));
    benchmark::DoNotOptimize(chi);
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_scan_family(benchmark::State& state) {
  for (auto _ : state) {
    auto recs = scan_family(static_cast<u64>(state.range(1)), {}, 0.1, 100'000'000, mode(state));
    benchmark::DoNotOptimize(recs);
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_oracle_search)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_family)->Args({0, 1000})->Args({1, 1000})->Args({0, 2000})->Args({1, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
