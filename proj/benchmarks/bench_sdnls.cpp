#include <benchmark/benchmark.h>

#include <vector>

#include "sdnls/cli_io.hpp"
#include "sdnls/solution.hpp"

namespace {

sdnls::Solution make_solution(const char* name) {
  const sdnls::ScenarioConfig cfg = sdnls::preset(name);
  return sdnls::Solution(sdnls::build_spectrum(cfg), sdnls::solver_options(cfg));
}

void BM_BarePotential(benchmark::State& state, const char* name) {
  const sdnls::Solution sol = make_solution(name);
  double x = -20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sol.bare(x, 1.5));
    x = x > 20.0 ? -20.0 : x + 0.37;
  }
}
BENCHMARK_CAPTURE(BM_BarePotential, fig1b, "fig1b");
BENCHMARK_CAPTURE(BM_BarePotential, fig4b, "fig4b");
BENCHMARK_CAPTURE(BM_BarePotential, fig5b, "fig5b");

void BM_EvaluateRow(benchmark::State& state, const char* name) {
  const sdnls::Solution sol = make_solution(name);
  std::vector<double> xs;
  for (int i = 0; i < 201; ++i) xs.push_back(-40.0 + 0.4 * i);
  for (auto _ : state) benchmark::DoNotOptimize(sol.evaluate_row(2.0, xs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK_CAPTURE(BM_EvaluateRow, fig1b, "fig1b")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvaluateRow, fig4b, "fig4b")->Unit(benchmark::kMillisecond);

void BM_Fig4bGrid200(benchmark::State& state) {
  sdnls::ScenarioConfig cfg = sdnls::preset("fig4b");
  cfg.grid.nx = 200;
  cfg.grid.nt = 200;
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sdnls::render_evaluation(cfg, workers));
  state.SetItemsProcessed(state.iterations() * 200 * 200);
}
BENCHMARK(BM_Fig4bGrid200)->Arg(1)->Iterations(1)->Unit(benchmark::kSecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
