#include <benchmark/benchmark.h>

#include "scorecast/features.hpp"

namespace scorecast {
namespace {

const Dataset& sample() {
  static const Dataset ds = load_dataset(SCORECAST_SAMPLE_DIR, 8);
  return ds;
}

const FeatureSchema& schema() {
  static const FeatureSchema s = FeatureSchema::load(SCORECAST_SCHEMA_PATH);
  return s;
}

void BM_BuildMatrix(benchmark::State& state, Approach approach) {
  const auto& ds = sample();
  const auto universe = player_universe(ds.train());
  const FeatureContext ctx{schema(), ds.stats, ds.seasons, universe};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_matrix(ds.fixtures, approach, Side::Home, ctx));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ds.fixtures.size()));
}

void BM_LoadDataset(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(load_dataset(SCORECAST_SAMPLE_DIR, 8));
}

BENCHMARK_CAPTURE(BM_BuildMatrix, players, Approach::Players);
BENCHMARK_CAPTURE(BM_BuildMatrix, lineup_stats, Approach::LineupStats);
BENCHMARK_CAPTURE(BM_BuildMatrix, team_stats, Approach::TeamStats);
BENCHMARK(BM_LoadDataset);

}  // namespace
}  // namespace scorecast
