#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "floodrisk/ahp.hpp"
#include "floodrisk/indicators.hpp"
#include "floodrisk/risk.hpp"
#include "floodrisk/terrain.hpp"
#include "floodrisk/validation.hpp"

namespace floodrisk::app {

/// All hydrology products derived from one DEM.
struct TerrainProducts {
  RasterGrid slope;
  RasterGrid filled;
  FlowDirGrid dirs;
  RasterGrid accumulation;
  StreamNetwork streams;
  std::array<RasterGrid, 5> distance_by_level;
  RasterGrid distance_any;
  ZoneRaster zones_d8;
  MfdBasins mfd;
};

TerrainProducts derive_terrain(const RasterGrid& dem, double threshold_ha);

/// Water mask for the distance ranking: permanent water when supplied,
/// otherwise the land-use water class.
RasterGrid water_mask_for(const RasterGrid& landuse, const std::optional<RasterGrid>& permanent_water);

IndicatorStack build_indicator_stack(const RasterGrid& dem, const TerrainProducts& terrain,
                                     const RasterGrid& landuse, const RasterGrid& hydrolith,
                                     const RasterGrid& water_mask);

struct SweepInputs {
  IndicatorStack stack;
  ZoneRaster zones_mfd;
  ZoneRaster zones_d8;
  std::optional<FloodMask> flood;
};

struct VariantOutcome {
  ModelVariant variant;
  std::vector<double> breaks;
  bool subsampled = false;
  std::array<double, kRiskLevels> level_ratio{};
  double high_ratio = 0.0;
  std::optional<ValidationScores> scores;
};

struct ProjectOutcome {
  ProjectDefinition project;
  EigenResult eigen;
  std::vector<VariantOutcome> variants;  // in requested variant order
};

struct SweepOptions {
  std::vector<int> projects;  // 1..48
  std::vector<ModelVariant> variants;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  /// Called from worker threads with each product; must be thread-safe
  /// across distinct projects.
  std::function<void(const ProjectDefinition&, ModelVariant, const RiskProduct&)> on_product;
};

/// Evaluates every project x variant. Projects run concurrently; the result
/// is in project order and independent of the thread count.
std::vector<ProjectOutcome> run_sweep(const SweepInputs& inputs, const SweepOptions& options);

/// Per-variant stability series (correct/fit when scored, high_ratio and
/// level ratios always).
std::vector<StabilitySeries> stability_series(const std::vector<ProjectOutcome>& outcomes);

}  // namespace floodrisk::app
