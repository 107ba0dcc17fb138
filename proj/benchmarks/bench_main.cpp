#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rlan/design.hpp"
#include "rlan/mc_likelihood.hpp"
#include "rlan/model.hpp"
#include "rlan/polyfit.hpp"
#include "rlan/rlan_check.hpp"

namespace {

void BM_IsPhat(benchmark::State& state) {
  rlan::GaussScale model;
  rlan::MCLikConfig cfg{static_cast<std::size_t>(state.range(0)), rlan::StreamKey(1), false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlan::is_phat(model, model.point(1.0), 0.3, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IsPhat)->Arg(64)->Arg(512)->Arg(4096);

void BM_McLoglik(benchmark::State& state) {
  rlan::GaussScale model;
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = rlan::sample_dataset(model, model.point(1.0), n, rlan::StreamKey(2));
  const rlan::MCLikConfig cfg{static_cast<std::size_t>(std::ceil(std::pow(n, 0.75))),
                              rlan::StreamKey(3), false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlan::mc_loglik(model, model.point(1.0), data, cfg).total);
  }
}
BENCHMARK(BM_McLoglik)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_LsqFit(benchmark::State& state) {
  const auto grid = rlan::build_grid(1.0, 4096, 10, 0.25, 0.1);
  const auto design = rlan::build_design(grid);
  std::vector<double> values;
  for (double t : grid.points) values.push_back(-2048.0 * (t - 1.01) * (t - 1.01));
  for (auto _ : state) benchmark::DoNotOptimize(rlan::lsq_fit(design, values));
}
BENCHMARK(BM_LsqFit);

void BM_Coefficients(benchmark::State& state) {
  rlan::GaussScale model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlan::rlan_coefficients(model, model.point(1.0)).info);
  }
}
BENCHMARK(BM_Coefficients)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
