// Serial reference path against the OpenMP path on the objectwise kernels.
// The second benchmark argument selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "fimkit/constructors.hpp"
#include "fimkit/functors.hpp"
#include "fimkit/homology.hpp"
#include "fimkit/parallel.hpp"

namespace {

using namespace fimkit;

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::Serial : Exec::Parallel; }

TruncatedModule sample(int side) {
  const Shape box({side, side});
  return direct_sum(free_module(Field::rationals(), Shape({1, 0}), box), basic_relative_projective(GroupRep::regular(Field::rationals(), Shape({1, 1})), box));
}

void BM_FreeModule(benchmark::State& state) {
  ExecScope scope(exec_of(state));
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(free_module(Field::rationals(), Shape({1, 1}), Shape({side, side})));
}

void BM_TotalFunctors(benchmark::State& state) {
  const TruncatedModule V = sample(static_cast<int>(state.range(0)));
  ExecScope scope(exec_of(state));
  for (auto _ : state) benchmark::DoNotOptimize(total_functors(V));
}

void BM_Homology(benchmark::State& state) {
  const TruncatedModule V = sample(static_cast<int>(state.range(0)));
  ExecScope scope(exec_of(state));
  for (auto _ : state) benchmark::DoNotOptimize(homology(V, 1));
}

}  // namespace

BENCHMARK(BM_FreeModule)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TotalFunctors)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Homology)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
