#include <benchmark/benchmark.h>

#include <cmath>

#include "macamp/monte_carlo.hpp"
#include "macamp/tradeoff_two_user.hpp"
#include "macamp/weighted_sum.hpp"

namespace {

const macamp::ChannelConfig kFig3{{2.0, 2.0}, 1.0, 1.0, 1.0};

void BM_SurfaceSamples(benchmark::State& state) {
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(macamp::surface_samples(kFig3, grid));
  state.SetItemsProcessed(state.iterations() * grid * grid);
}
BENCHMARK(BM_SurfaceSamples)->Arg(64)->Arg(128)->Arg(512);

void BM_CrossSection(benchmark::State& state) {
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(macamp::cross_section(kFig3, 0.66, grid));
}
BENCHMARK(BM_CrossSection)->Arg(128)->Arg(512)->Arg(2048);

void BM_ConverseBound(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  macamp::ChannelConfig config{std::vector<double>(n, 2.0), 1.0, 1.0, 1.0};
  macamp::WeightVector w;
  for (std::size_t j = 0; j < n; ++j) w.mus.push_back(1.0 + 0.5 * static_cast<double>(j));
  w.lambda = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(macamp::converse_bound(config, w));
}
BENCHMARK(BM_ConverseBound)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_GridOracle(benchmark::State& state) {
  const auto res = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(0));
  macamp::ChannelConfig config{std::vector<double>(n, 2.0), 1.0, 1.0, 1.0};
  const macamp::WeightVector w{std::vector<double>(n, 1.0), 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(macamp::grid_oracle(config, w, res));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(std::pow(static_cast<double>(res), n)));
}
BENCHMARK(BM_GridOracle)->Args({2, 512})->Args({3, 128})->Unit(benchmark::kMillisecond);

void BM_SimulateDistortion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(macamp::simulate_distortion(kFig3, macamp::make_split(0.4, 0.6), n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SimulateDistortion)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_DpcRate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        macamp::estimate_dpc_rate(kFig3, macamp::make_split(1.0, 1.0), {0, 1}, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DpcRate)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
