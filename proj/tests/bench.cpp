#include <benchmark/benchmark.h>

#include "fixtures.h"
#include "localizer/antipodal_opt.h"
#include "localizer/oracle.h"
#include "localizer/single_query.h"

using namespace localizer;

namespace {

void BM_OracleSingle(benchmark::State& state) {
  auto w = fixtures::three_rooms();
  auto grid = make_grid(w, {100, 30, 360, 0});
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_single_many(w, {1.0, 3.0, 6.5}, grid, exec));
}
BENCHMARK(BM_OracleSingle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleAntipodal(benchmark::State& state) {
  auto w = fixtures::square_with_hole();
  auto grid = make_grid(w, {100, 100, 360, 0});
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_antipodal(w, 0.2, 0.3, grid, exec));
}
BENCHMARK(BM_OracleAntipodal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Rtd(benchmark::State& state) {
  auto w = fixtures::regular_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_rtd(w, build_visibility(w)));
}
BENCHMARK(BM_Rtd)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_OptIndex(benchmark::State& state) {
  auto w = fixtures::spiky_triangle(static_cast<int>(state.range(0)));
  auto r = build_rtd(w, build_visibility(w));
  for (auto _ : state) benchmark::DoNotOptimize(build_opt_index(w, r.cells));
}
BENCHMARK(BM_OptIndex)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Queries(benchmark::State& state) {
  auto w = fixtures::three_rooms();
  auto r = build_rtd(w, build_visibility(w));
  auto si = build_single_index(r.cells);
  auto ai = build_antipodal_index(r.cells);
  auto oi = build_opt_index(w, r.cells);
  for (auto _ : state) {
    switch (state.range(0)) {
      case 0: benchmark::DoNotOptimize(query_single(w, r.cells, si, 3.0)); break;
      case 1: benchmark::DoNotOptimize(query_antipodal(w, r.cells, ai, 0.8, 1.6)); break;
      default: benchmark::DoNotOptimize(query_opt(w, r.cells, oi, 0.8, 1.6)); break;
    }
  }
}
BENCHMARK(BM_Queries)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
