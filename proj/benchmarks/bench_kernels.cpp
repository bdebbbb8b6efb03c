#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "floodrisk/app/pipeline.hpp"
#include "floodrisk/app/synthetic.hpp"
#include "floodrisk/floodrisk.hpp"

using namespace floodrisk;

namespace {

RasterGrid valley(int n) {
  app::SyntheticTerrainSpec spec;
  spec.nrows = n;
  spec.ncols = n;
  return app::gen_synthetic(spec).dem;
}

}  // namespace

static void BM_PowerIteration(benchmark::State& state) {
  const JudgmentMatrix m = build_matrix(project_from_number(45));
  for (auto _ : state) benchmark::DoNotOptimize(principal_eigen(m));
}
BENCHMARK(BM_PowerIteration);

static void BM_JenksExact(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (double& v : values) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(jenks_breaks(values, kRiskLevels));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JenksExact)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_FillAndRoute(benchmark::State& state) {
  const RasterGrid dem = valley(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const FlowDirGrid dirs = d8_flow_directions(fill_sinks(dem));
    benchmark::DoNotOptimize(flow_accumulation(dirs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(dem.size()));
}
BENCHMARK(BM_FillAndRoute)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_MfdBasins(benchmark::State& state) {
  const RasterGrid dem = valley(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_mfd_basins(dem));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(dem.size()));
}
BENCHMARK(BM_MfdBasins)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_ConstrainedFri(benchmark::State& state) {
  app::SyntheticTerrainSpec spec;
  spec.nrows = spec.ncols = static_cast<int>(state.range(0));
  const app::SyntheticScene scene = app::gen_synthetic(spec);
  const app::TerrainProducts t = app::derive_terrain(scene.dem, kDefaultStreamThresholdHa);
  const IndicatorStack stack = app::build_indicator_stack(
      scene.dem, t, *scene.landuse, *scene.hydrolith, app::water_mask_for(*scene.landuse, scene.permanent_water));
  const EigenResult w = principal_eigen(build_matrix(project_from_number(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_fri(stack, w, ModelVariant::mfd_rc, &t.mfd.zones, &t.zones_d8));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(scene.dem.size()));
}
BENCHMARK(BM_ConstrainedFri)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
