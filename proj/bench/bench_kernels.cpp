// Serial against OpenMP variants of the heavy kernels.

#include <benchmark/benchmark.h>

#include "idap/empirical.hpp"
#include "idap/parser.hpp"

using namespace idap;

namespace {

const VarietyContext& pair_ctx() {
  static const VarietyContext ctx = build_context(parse_system("x1^2+x2^2; x1^2-x2^2").polys);
  return ctx;
}

const VarietyContext& parabola() {
  static const VarietyContext ctx = build_context(parse_system("x1^2").polys);
  return ctx;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_HeightScan(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(height_bound_scan(pair_ctx(), 96, exec_of(st)));
}
BENCHMARK(BM_HeightScan)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_HeightScanReference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(height_bound_scan_reference(pair_ctx(), 32));
}
BENCHMARK(BM_HeightScanReference)->Unit(benchmark::kMillisecond);

void BM_TailSum(benchmark::State& st) {
  auto psi = ApproxFunction::power(2);
  auto f = DimFunction::power_log(BigRat::parse("0.6"));
  for (auto _ : st) benchmark::DoNotOptimize(tail_sum(parabola(), psi, f, 1000, 2000, exec_of(st)));
}
BENCHMARK(BM_TailSum)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_EstimateDimension(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(estimate_dimension(parabola(), 2, {32, 64, 128, 256}, std::nullopt, exec_of(st)));
}
BENCHMARK(BM_EstimateDimension)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_OffManifold(benchmark::State& st) {
  OffManifoldOptions opt;
  opt.d_max = 40;
  auto psi = ApproxFunction::power(3);
  for (auto _ : st) benchmark::DoNotOptimize(off_manifold_check(parabola(), psi, opt, exec_of(st)));
}
BENCHMARK(BM_OffManifold)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
