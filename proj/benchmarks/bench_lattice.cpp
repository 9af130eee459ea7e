#include "lattice/homology.hpp"
#include "lattice/pipeline.hpp"
#include "lattice/reduction.hpp"
#include "lattice/surgery.hpp"
#include "lattice/verify.hpp"

#include <benchmark/benchmark.h>

using namespace lattice;

namespace {

std::string data(const std::string& rel) { return std::string(LATTICE_BENCH_DATA) + "/" + rel; }

void BM_TauClosedForm(benchmark::State& state) {
  for (auto _ : state) {
    const TauFunction tau({2, 3, 7});
    int64_t acc = 0;
    for (int64_t n = 0; n <= state.range(0); ++n) acc += tau(n);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_TauClosedForm)->Arg(84)->Arg(840);

void BM_TauLatticeOracle(benchmark::State& state) {
  const auto g = brieskorn_star({2, 3, 7}, true);
  for (auto _ : state) benchmark::DoNotOptimize(tau_lattice_oracle(g, 0, state.range(0)));
}
BENCHMARK(BM_TauLatticeOracle)->Arg(84);

void BM_LineHomology(benchmark::State& state) {
  const auto l = ar_line({2, 3, 7});
  for (auto _ : state) benchmark::DoNotOptimize(assoc_graded_homology(line_complex(l)));
}
BENCHMARK(BM_LineHomology);

void BM_KnotLatticeFamily(benchmark::State& state) {
  const auto g = read_graph_file(data("graphs/trefoil.txt"));
  for (auto _ : state) benchmark::DoNotOptimize(build_lattice_family(g));
}
BENCHMARK(BM_KnotLatticeFamily);

void BM_LineSurgery(benchmark::State& state) {
  const auto t = brieskorn_fiber_family({2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(surgery(t, -state.range(0)));
}
BENCHMARK(BM_LineSurgery)->Arg(1)->Arg(3)->Arg(6);

void BM_VerifySurgery(benchmark::State& state) {
  const auto g = read_graph_file(data("graphs/trefoil.txt"));
  for (auto _ : state) benchmark::DoNotOptimize(verify_surgery(g, -state.range(0)));
}
BENCHMARK(BM_VerifySurgery)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_IteratedPipeline(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline_file(data("pipelines/iterated.toml")));
}
BENCHMARK(BM_IteratedPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
