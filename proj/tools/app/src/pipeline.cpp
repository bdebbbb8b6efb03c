#include "floodrisk/app/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>

namespace floodrisk::app {

TerrainProducts derive_terrain(const RasterGrid& dem, double threshold_ha) {
  RasterGrid filled = fill_sinks(dem);
  FlowDirGrid dirs = d8_flow_directions(filled);
  RasterGrid acc = flow_accumulation(dirs);
  StreamNetwork streams = extract_streams(dirs, acc, threshold_ha);
  auto by_level = distances_by_level(streams);
  RasterGrid any = distance_to_any_stream(streams);
  ZoneRaster zones_d8 = delineate_d8(dirs, streams);
  return TerrainProducts{slope_degrees(dem),
                         std::move(filled),
                         std::move(dirs),
                         std::move(acc),
                         std::move(streams),
                         std::move(by_level),
                         std::move(any),
                         std::move(zones_d8),
                         analyze_mfd_basins(dem)};
}

RasterGrid water_mask_for(const RasterGrid& landuse, const std::optional<RasterGrid>& permanent_water) {
  if (permanent_water) {
    require_aligned(landuse, *permanent_water, "permanent water");
    return *permanent_water;
  }
  std::vector<double> mask(landuse.size(), landuse.nodata());
  for (std::size_t i = 0; i < landuse.size(); ++i) {
    if (!landuse.is_nodata(i)) mask[i] = landuse[i] == landuse_code::water ? 1.0 : 0.0;
  }
  return landuse.with_cells(std::move(mask), GridKind::categorical);
}

IndicatorStack build_indicator_stack(const RasterGrid& dem, const TerrainProducts& terrain,
                                     const RasterGrid& landuse, const RasterGrid& hydrolith,
                                     const RasterGrid& water_mask) {
  require_aligned(dem, landuse, "land use");
  require_aligned(dem, hydrolith, "hydro-lithology");
  require_aligned(dem, water_mask, "water mask");
  return IndicatorStack({
      rank_slope(terrain.slope),
      rank_elevation(dem),
      rank_distance(terrain.streams, terrain.distance_by_level, water_mask),
      rank_hydrolith(hydrolith),
      rank_landuse(landuse),
  });
}

namespace {

using LayerSet = std::array<RasterGrid, kIndicatorCount>;

LayerSet zonal_layers(const IndicatorStack& stack, const ZoneRaster& zones) {
  LayerSet out;
  for (std::size_t j = 0; j < kIndicatorCount; ++j) out[j] = zonal_max(zones, stack[j]);
  return out;
}

VariantOutcome evaluate(const SweepInputs& inputs, const LayerSet& mfd, const LayerSet& d8,
                        const ProjectDefinition& project, const EigenResult& eigen, ModelVariant variant,
                        const SweepOptions& options) {
  std::array<const RasterGrid*, kIndicatorCount> layers{};
  for (std::size_t j = 0; j < kIndicatorCount; ++j) {
    const Indicator id = kIndicators[j];
    if (!is_constrained(variant, id)) layers[j] = &inputs.stack[j].grid;
    else if (zone_source(variant) == ZoneSource::mfd) layers[j] = &mfd[j];
    else layers[j] = &d8[j];
  }
  RasterGrid fri = weighted_sum(layers, eigen.weights);
  JenksOptions jenks;
  jenks.seed = options.seed;
  RiskProduct product = [&] {
    try {
      return classify_fri(fri, jenks);
    } catch (const Error& e) {
      throw Error(e.kind(), "project " + std::to_string(project.number()) + ", " +
                                std::string(variant_name(variant)) + ": " + e.what());
    }
  }();

  VariantOutcome outcome{variant, product.breaks, product.subsampled, {}, high_risk_ratio(product), {}};
  std::size_t valid = 0;
  std::array<std::size_t, kRiskLevels> counts{};
  for (std::size_t i = 0; i < product.levels.size(); ++i) {
    if (product.levels.is_nodata(i)) continue;
    ++valid;
    ++counts[static_cast<std::size_t>(product.levels[i]) - 1];
  }
  for (std::size_t l = 0; l < kRiskLevels; ++l) {
    outcome.level_ratio[l] = valid ? static_cast<double>(counts[l]) / static_cast<double>(valid) : 0.0;
  }
  if (inputs.flood) outcome.scores = score(positive_mask(product), *inputs.flood);
  if (options.on_product) options.on_product(project, variant, product);
  return outcome;
}

}  // namespace

std::vector<ProjectOutcome> run_sweep(const SweepInputs& inputs, const SweepOptions& options) {
  if (options.variants.empty()) throw Error(ErrorKind::config, "no model variants selected");
  if (options.projects.empty()) throw Error(ErrorKind::config, "no projects selected");

  const bool need_mfd = std::any_of(options.variants.begin(), options.variants.end(),
                                    [](ModelVariant v) { return zone_source(v) == ZoneSource::mfd; });
  const bool need_d8 = std::any_of(options.variants.begin(), options.variants.end(),
                                   [](ModelVariant v) { return zone_source(v) == ZoneSource::d8; });
  const LayerSet mfd = need_mfd ? zonal_layers(inputs.stack, inputs.zones_mfd) : LayerSet{};
  const LayerSet d8 = need_d8 ? zonal_layers(inputs.stack, inputs.zones_d8) : LayerSet{};

  std::vector<ProjectOutcome> outcomes(options.projects.size());
  std::vector<std::exception_ptr> errors(options.projects.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < outcomes.size(); k = next++) {
      try {
        const ProjectDefinition project = project_from_number(options.projects[k]);
        ProjectOutcome& out = outcomes[k];
        out.project = project;
        out.eigen = principal_eigen(build_matrix(project));
        for (ModelVariant v : options.variants) {
          out.variants.push_back(evaluate(inputs, mfd, d8, project, out.eigen, v, options));
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(outcomes.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

std::vector<StabilitySeries> stability_series(const std::vector<ProjectOutcome>& outcomes) {
  std::vector<StabilitySeries> series;
  if (outcomes.empty()) return series;
  const std::size_t nvariants = outcomes.front().variants.size();
  for (std::size_t v = 0; v < nvariants; ++v) {
    const std::string name(variant_name(outcomes.front().variants[v].variant));
    auto collect = [&](const std::string& metric, auto&& pick) {
      StabilitySeries s{name, metric, {}};
      for (const auto& o : outcomes) s.values.push_back(pick(o.variants[v]));
      series.push_back(std::move(s));
    };
    if (outcomes.front().variants[v].scores) {
      collect("correct", [](const VariantOutcome& o) { return o.scores->correct_pct; });
      collect("fit", [](const VariantOutcome& o) { return o.scores->fit_pct; });
    }
    collect("high_ratio", [](const VariantOutcome& o) { return o.high_ratio; });
    for (int l = 1; l <= kRiskLevels; ++l) {
      collect("level" + std::to_string(l) + "_ratio", [l](const VariantOutcome& o) {
        return o.level_ratio[static_cast<std::size_t>(l - 1)];
      });
    }
  }
  return series;
}

}  // namespace floodrisk::app
