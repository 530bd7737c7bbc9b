#include <benchmark/benchmark.h>
#include "qsp/scalar.hpp"

static void BM_QuantumFactorial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(qsp::quantum_factorial(state.range(0)));
}
BENCHMARK(BM_QuantumFactorial)->Arg(5)->Arg(10);

BENCHMARK_MAIN();
