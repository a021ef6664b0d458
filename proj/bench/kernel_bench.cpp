// Parallel kernels against their serial references.

#include "lpsphere/enumerate.hpp"
#include "lpsphere/lattice.hpp"
#include "lpsphere/lpquad.hpp"
#include "lpsphere/qseries.hpp"
#include "lpsphere/silp.hpp"

#include <benchmark/benchmark.h>

using namespace lpsphere;

namespace {

template <auto Kernel>
void BM_count(benchmark::State& state) {
  const enumeration::Problem problem(builtin("e8").gram());
  const Rational bound(static_cast<long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(problem, bound, {}));
}
BENCHMARK(BM_count<enumeration::count_parallel>)->Name("count/parallel")->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count<enumeration::count_serial>)->Name("count/serial")->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

template <auto Kernel>
void BM_series(benchmark::State& state) {
  const QSeries e4 = eisenstein_e4(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(e4, e4));
}
BENCHMARK(BM_series<series_mul>)->Name("series_mul/parallel")->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_series<series_mul_serial>)->Name("series_mul/serial")->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);

template <auto Kernel>
void BM_silp(benchmark::State& state) {
  const HalfLineFunction f = exponential_fn();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f, Order(1), default_y_grid(), static_cast<int>(state.range(0)), 1e-9));
}
BENCHMARK(BM_silp<silp_check>)->Name("silp_check/parallel")->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_silp<silp_check_serial>)->Name("silp_check/serial")->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

template <auto Kernel>
void BM_rule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(8, 1.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_rule<bgf_rule>)->Name("quadrature_rule/parallel")->Arg(400)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rule<bgf_rule_serial>)->Name("quadrature_rule/serial")->Arg(400)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
