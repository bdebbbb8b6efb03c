#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "floodrisk/raster.hpp"
#include "floodrisk/terrain.hpp"

namespace floodrisk {

/// The five criteria, in weight-vector order.
enum class Indicator { slope = 0, elevation = 1, dist_streams = 2, hydro_lith = 3, land_use = 4 };

inline constexpr std::size_t kIndicatorCount = 5;
inline constexpr std::array<Indicator, kIndicatorCount> kIndicators{
    Indicator::slope, Indicator::elevation, Indicator::dist_streams, Indicator::hydro_lith,
    Indicator::land_use};

std::string_view indicator_name(Indicator id) noexcept;

/// Slope and distance from streams govern where runoff converges.
constexpr bool is_converging_related(Indicator id) noexcept {
  return id == Indicator::slope || id == Indicator::dist_streams;
}

/// Whether `rank` belongs to the indicator's legal rank set.
bool is_legal_rank(Indicator id, double rank) noexcept;

struct RankedIndicator {
  Indicator id;
  RasterGrid grid;  // categorical ranks

  bool converging_related() const noexcept { return is_converging_related(id); }
};

/// Exactly one ranked layer per indicator, in weight order, all aligned.
class IndicatorStack {
 public:
  /// Throws Error{argument} on duplicate/misordered indicators and
  /// Error{alignment} if the grids do not share a lattice.
  explicit IndicatorStack(std::array<RankedIndicator, kIndicatorCount> layers);

  const RankedIndicator& operator[](Indicator id) const noexcept {
    return layers_[static_cast<std::size_t>(id)];
  }
  const RankedIndicator& operator[](std::size_t i) const noexcept { return layers_[i]; }
  const GridHeader& header() const noexcept { return layers_[0].grid.header(); }

 private:
  std::array<RankedIndicator, kIndicatorCount> layers_;
};

// Category codes of the input class rasters.
namespace hydrolith_code {
inline constexpr int water = 1;
inline constexpr int impervious = 2;
inline constexpr int pervious = 3;
}  // namespace hydrolith_code

namespace landuse_code {
inline constexpr int water = 1;
inline constexpr int road = 2;
inline constexpr int building = 3;
inline constexpr int soil = 4;
inline constexpr int vegetation = 5;
}  // namespace landuse_code

// Single-value rank tables; nodata is handled by the grid-level functions.
int slope_rank(double degrees);
int elevation_rank(double metres) noexcept;
int hydrolith_rank(int code);
int landuse_rank(int code);

/// Rank earned from the distance to a stream of a given level (1..5), or
/// nullopt when the distance falls outside that level's bands.
std::optional<int> stream_level_rank(int level, double metres) noexcept;

/// 0 -> 5, (0,2] -> 4, (2,6] -> 3, (6,12] -> 2, (12,20] -> 1, > 20 -> 0.
/// Negative slopes throw Error{domain}.
RankedIndicator rank_slope(const RasterGrid& slope_deg);

/// <= 12 -> 5, (12,23] -> 4, (23,46] -> 3, (46,152] -> 2, > 152 -> 1.
RankedIndicator rank_elevation(const RasterGrid& dem);

struct DistanceRankOptions {
  /// Rank 0 for cells when no stream of any level exists in the grid.
  /// Off by default: such cells receive rank 1.
  bool zero_without_streams = false;
};

/// Permanent water -> 5; otherwise the maximum rank across the five
/// per-level distance grids (index 0 = level 1), floor 1.
RankedIndicator rank_distance(const StreamNetwork& network,
                              const std::array<RasterGrid, 5>& distance_by_level,
                              const RasterGrid& water_mask, DistanceRankOptions options = {});

/// Convenience: per-level distance grids for `network`.
std::array<RasterGrid, 5> distances_by_level(const StreamNetwork& network);

/// water -> 4, impervious -> 3, pervious -> 1; other codes throw
/// Error{classification}.
RankedIndicator rank_hydrolith(const RasterGrid& classes);

/// vegetation -> 1, soil -> 2, building -> 3, road -> 4, water -> 5.
RankedIndicator rank_landuse(const RasterGrid& classes);

}  // namespace floodrisk
