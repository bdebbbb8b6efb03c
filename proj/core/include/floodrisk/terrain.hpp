#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "floodrisk/raster.hpp"

namespace floodrisk {

// ---------------------------------------------------------------------------
// D8 neighbourhood

struct D8Step {
  int code;
  int drow;
  int dcol;
};

/// ESRI direction codes, clockwise from east. Row offsets grow southward.
inline constexpr std::array<D8Step, 8> kD8Steps{{
    {1, 0, 1},     // E
    {2, 1, 1},     // SE
    {4, 1, 0},     // S
    {8, 1, -1},    // SW
    {16, 0, -1},   // W
    {32, -1, -1},  // NW
    {64, -1, 0},   // N
    {128, -1, 1},  // NE
}};

inline constexpr int kOutletCode = 0;

/// Index into kD8Steps for a direction code, or -1 if the code is not one of
/// the eight.
int d8_step_index(int code) noexcept;

/// Flow directions as ESRI codes; 0 marks sinks/outlets.
class FlowDirGrid {
 public:
  /// Validates that every non-nodata cell holds 0 or one of the eight codes.
  explicit FlowDirGrid(RasterGrid grid);

  const RasterGrid& grid() const noexcept { return grid_; }
  const GridHeader& header() const noexcept { return grid_.header(); }

  /// Receiving cell of `i`, or nullopt for outlets, cells pointing off the
  /// grid, or cells pointing into nodata.
  std::optional<std::size_t> downstream(std::size_t i) const noexcept;

 private:
  RasterGrid grid_;
};

struct StreamNetwork {
  RasterGrid mask;   // 1 = stream, 0 = not, nodata outside the DEM
  RasterGrid level;  // Strahler order clamped to [1, 5] on streams, 0 elsewhere
  std::size_t accumulation_cutoff = 0;  // minimum contributing cells for a stream

  bool empty() const noexcept;
};

/// Integer sub-watershed labels; ids >= 1 partition the non-nodata cells.
class ZoneRaster {
 public:
  explicit ZoneRaster(RasterGrid grid);

  const RasterGrid& grid() const noexcept { return grid_; }
  std::size_t zone_count() const noexcept { return zone_count_; }

 private:
  RasterGrid grid_;
  std::size_t zone_count_ = 0;
};

// ---------------------------------------------------------------------------
// Operations

/// Horn (1981) 3x3 slope in degrees. Missing neighbours (edges or nodata) are
/// mirrored through the centre cell: z' = 2 z0 - z_opposite, or z0 when the
/// opposite neighbour is missing too.
RasterGrid slope_degrees(const RasterGrid& dem);

inline constexpr double kFillEpsilon = 1e-5;

/// Depression filling with a minimal epsilon gradient (Priority-Flood+eps).
/// Cells on the grid edge or next to nodata seed the flood and keep their
/// elevation; every other cell ends strictly above one of its neighbours.
RasterGrid fill_sinks(const RasterGrid& dem, double epsilon = kFillEpsilon);

/// Interior, non-nodata cells with no strictly lower 8-neighbour.
std::size_t count_interior_sinks(const RasterGrid& dem);

/// Steepest descent (drop / distance, diagonals at cellsize * sqrt 2). Ties
/// go to the first code in kD8Steps order; cells with no lower neighbour get 0.
FlowDirGrid d8_flow_directions(const RasterGrid& filled_dem);

/// Contributing cell count including the cell itself. Throws Error{routing}
/// if the directions contain a cycle.
RasterGrid flow_accumulation(const FlowDirGrid& dirs);

/// ceil(threshold_ha * 1e4 / cellsize^2): cells needed to reach the area.
std::size_t stream_cell_cutoff(double threshold_ha, double cellsize);

/// Default stream initiation area, in hectares.
inline constexpr double kDefaultStreamThresholdHa = 66.7;

/// Stream cells are those whose contributing area reaches `threshold_ha`.
/// Levels are Strahler orders over the D8 stream graph, clamped to 5.
StreamNetwork extract_streams(const FlowDirGrid& dirs, const RasterGrid& acc,
                              double threshold_ha = kDefaultStreamThresholdHa);

/// Euclidean distance (map units) from every cell to the nearest stream cell
/// of `level`; +infinity everywhere when the level is absent.
RasterGrid distance_to_streams(const StreamNetwork& network, int level);

/// Distance to the nearest stream cell of any level.
RasterGrid distance_to_any_stream(const StreamNetwork& network);

/// Exact squared-EDT on a target mask (Felzenszwalb-Huttenlocher), scaled to
/// map units. Output has `like`'s lattice; nodata in `like` stays nodata.
RasterGrid euclidean_distance(const RasterGrid& like, const std::vector<std::uint8_t>& targets);

/// Streams are split into links at junctions; each link is a zone, and each
/// non-stream cell joins the zone of the link its D8 path reaches first.
/// Cells whose path ends at an outlet without touching a stream are grouped
/// by that outlet, with ids after the link ids.
ZoneRaster delineate_d8(const FlowDirGrid& dirs, const StreamNetwork& network);

/// Number of stream links (link ids are 1..count in delineate_d8 output).
std::size_t count_stream_links(const FlowDirGrid& dirs, const StreamNetwork& network);

struct MfdBasins {
  ZoneRaster zones;
  std::size_t sink_count = 0;
  /// Unit mass per cell routed with MFD-8; total mass collected by each sink
  /// (index 0 = sink id 1).
  std::vector<double> sink_inflow;
};

/// Sink-basin labeling on an unfilled DEM. Sinks are connected equal-elevation
/// regions without a strictly lower neighbour; each cell goes to the sink that
/// receives the largest share of its MFD-8 mass (smallest id on ties).
MfdBasins analyze_mfd_basins(const RasterGrid& dem);

ZoneRaster delineate_mfd(const RasterGrid& dem);

}  // namespace floodrisk
