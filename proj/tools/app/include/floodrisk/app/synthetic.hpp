#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "floodrisk/raster.hpp"

namespace floodrisk::app {

enum class Motif { tilted_plane, single_valley, twin_bowl, branched_network };

std::string_view motif_name(Motif m) noexcept;
std::optional<Motif> parse_motif(std::string_view name) noexcept;

struct SyntheticTerrainSpec {
  int nrows = 64;
  int ncols = 64;
  Motif motif = Motif::single_valley;
  double amplitude = 30.0;    // metres; per cell for tilted_plane
  double noise_sigma = 1.0;   // metres of smooth value noise
  double cellsize = 30.0;
  double truth_quantile = 0.15;  // flood truth = cells below this elevation quantile
  std::uint64_t seed = 42;
};

/// A DEM plus, for the valley motifs, class and validation companions.
struct SyntheticScene {
  RasterGrid dem;
  std::optional<RasterGrid> landuse;          // landuse_code values
  std::optional<RasterGrid> hydrolith;        // hydrolith_code values
  std::optional<RasterGrid> truth;            // 1 = flooded
  std::optional<RasterGrid> permanent_water;  // 1 = river channel
};

/// Deterministic in (spec, seed). Throws Error{argument} for empty sizes or
/// non-positive cellsize.
SyntheticScene gen_synthetic(const SyntheticTerrainSpec& spec);

}  // namespace floodrisk::app
