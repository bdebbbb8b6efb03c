#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "floodrisk/raster.hpp"
#include "floodrisk/risk.hpp"
#include "floodrisk/terrain.hpp"

namespace floodrisk {

/// Ground truth for scoring: 1 = flood water. Cells flagged in
/// `permanent_water` are left out of every count.
struct FloodMask {
  RasterGrid truth;
  RasterGrid permanent_water;

  /// Truth with no permanent water.
  static FloodMask without_permanent_water(RasterGrid truth);
};

struct ValidationScores {
  double correct_pct = 0.0;  // 100 |pred & truth| / |truth|
  double fit_pct = 0.0;      // 100 |pred & truth| / |pred | truth|
  std::size_t intersection = 0;
  std::size_t fa_fri = 0;    // predicted positives
  std::size_t fa_water = 0;  // truth positives
  std::size_t union_count = 0;
  bool degenerate = false;   // empty truth: both scores reported as 0
};

/// 1 where the level is High or Very High, 0 elsewhere.
RasterGrid positive_mask(const RiskProduct& product);

/// Share of non-nodata cells classed High or Very High.
double high_risk_ratio(const RiskProduct& product);

ValidationScores score(const RasterGrid& pred, const FloodMask& mask);

struct LevelShare {
  long long basin = 0;
  int level = 0;
  std::size_t count = 0;
  double ratio = 0.0;
};

/// Per-basin histogram of risk levels 1..5, ordered by basin then level.
/// Basin id 0 and nodata cells are skipped.
std::vector<LevelShare> level_distribution(const RiskProduct& product, const ZoneRaster& basins);

struct SeriesStats {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  double range = 0.0;
};

SeriesStats summarize(std::span<const double> values);

/// One metric of one variant across the projects of a sweep.
struct StabilitySeries {
  std::string variant;
  std::string metric;  // e.g. "correct", "fit", "high_ratio", "level5_ratio"
  std::vector<double> values;
};

struct StabilityRow {
  std::string variant;
  std::string metric;
  SeriesStats stats;
  int range_rank = 0;  // 1 = smallest range among variants for this metric
};

struct StabilityReport {
  std::vector<StabilityRow> rows;  // input order
};

/// Throws Error{argument} when a series has fewer than two projects.
StabilityReport sweep_stability(const std::vector<StabilitySeries>& series);

}  // namespace floodrisk
