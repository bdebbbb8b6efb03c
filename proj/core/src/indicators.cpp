#include "floodrisk/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace floodrisk {

std::string_view indicator_name(Indicator id) noexcept {
  switch (id) {
    case Indicator::slope: return "Slope";
    case Indicator::elevation: return "Elevation";
    case Indicator::dist_streams: return "DistStreams";
    case Indicator::hydro_lith: return "HydroLith";
    case Indicator::land_use: return "LandUse";
  }
  return "?";
}

bool is_legal_rank(Indicator id, double rank) noexcept {
  if (rank != std::trunc(rank)) return false;
  switch (id) {
    case Indicator::slope:
    case Indicator::dist_streams: return rank >= 0 && rank <= 5;
    case Indicator::elevation:
    case Indicator::land_use: return rank >= 1 && rank <= 5;
    case Indicator::hydro_lith: return rank == 1 || rank == 3 || rank == 4;
  }
  return false;
}

IndicatorStack::IndicatorStack(std::array<RankedIndicator, kIndicatorCount> layers)
    : layers_(std::move(layers)) {
  for (std::size_t i = 0; i < kIndicatorCount; ++i) {
    if (layers_[i].id != kIndicators[i]) {
      throw Error(ErrorKind::argument, "indicator stack slot " + std::to_string(i) + " holds " +
                                           std::string(indicator_name(layers_[i].id)) +
                                           ", expected " +
                                           std::string(indicator_name(kIndicators[i])));
    }
    require_aligned(layers_[0].grid, layers_[i].grid, "indicator stack");
  }
}

int slope_rank(double degrees) {
  if (degrees < 0.0) {
    throw Error(ErrorKind::domain, "negative slope " + std::to_string(degrees));
  }
  if (degrees == 0.0) return 5;
  if (degrees <= 2.0) return 4;
  if (degrees <= 6.0) return 3;
  if (degrees <= 12.0) return 2;
  if (degrees <= 20.0) return 1;
  return 0;
}

int elevation_rank(double metres) noexcept {
  if (metres <= 12.0) return 5;
  if (metres <= 23.0) return 4;
  if (metres <= 46.0) return 3;
  if (metres <= 152.0) return 2;
  return 1;
}

int hydrolith_rank(int code) {
  switch (code) {
    case hydrolith_code::water: return 4;
    case hydrolith_code::impervious: return 3;
    case hydrolith_code::pervious: return 1;
  }
  throw Error(ErrorKind::classification, "unknown hydro-lithological class code " + std::to_string(code));
}

int landuse_rank(int code) {
  switch (code) {
    case landuse_code::water: return 5;
    case landuse_code::road: return 4;
    case landuse_code::building: return 3;
    case landuse_code::soil: return 2;
    case landuse_code::vegetation: return 1;
  }
  throw Error(ErrorKind::classification, "unknown land-use class code " + std::to_string(code));
}

std::optional<int> stream_level_rank(int level, double d) noexcept {
  if (!(d >= 0.0) || std::isinf(d)) return std::nullopt;
  switch (level) {
    case 1: return d <= 500.0 ? 2 : 1;
    case 2: return d <= 500.0 ? 3 : d <= 1000.0 ? 2 : 1;
    case 3: return d <= 500.0 ? 4 : d <= 1000.0 ? 3 : d <= 1500.0 ? 2 : 1;
    case 4: return d <= 1000.0 ? 4 : d <= 2000.0 ? 3 : d <= 3000.0 ? 2 : 1;
    // Level 5's first band starts at 1 km in the source table; nearer cells
    // are folded into it so the rank stays monotone in distance.
    case 5: return d <= 2000.0 ? 4 : d <= 4000.0 ? 3 : d <= 6000.0 ? 2 : 1;
  }
  return std::nullopt;
}

namespace {

template <class RankFn>
RankedIndicator map_ranks(Indicator id, const RasterGrid& input, RankFn&& rank) {
  std::vector<double> out(input.size(), input.nodata());
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (!input.is_nodata(i)) out[i] = rank(input[i]);
  }
  return {id, input.with_cells(std::move(out), GridKind::categorical)};
}

int as_code(double v) {
  if (v != std::trunc(v)) {
    throw Error(ErrorKind::classification, "non-integer class code " + std::to_string(v));
  }
  return static_cast<int>(v);
}

}  // namespace

RankedIndicator rank_slope(const RasterGrid& slope_deg) {
  return map_ranks(Indicator::slope, slope_deg, [](double v) { return slope_rank(v); });
}

RankedIndicator rank_elevation(const RasterGrid& dem) {
  return map_ranks(Indicator::elevation, dem, [](double v) { return elevation_rank(v); });
}

RankedIndicator rank_hydrolith(const RasterGrid& classes) {
  return map_ranks(Indicator::hydro_lith, classes, [](double v) { return hydrolith_rank(as_code(v)); });
}

RankedIndicator rank_landuse(const RasterGrid& classes) {
  return map_ranks(Indicator::land_use, classes, [](double v) { return landuse_rank(as_code(v)); });
}

std::array<RasterGrid, 5> distances_by_level(const StreamNetwork& network) {
  return {distance_to_streams(network, 1), distance_to_streams(network, 2),
          distance_to_streams(network, 3), distance_to_streams(network, 4),
          distance_to_streams(network, 5)};
}

RankedIndicator rank_distance(const StreamNetwork& network,
                              const std::array<RasterGrid, 5>& distance_by_level,
                              const RasterGrid& water_mask, DistanceRankOptions options) {
  const RasterGrid& like = network.level;
  require_aligned(like, water_mask, "rank_distance water mask");
  for (const auto& grid : distance_by_level) require_aligned(like, grid, "rank_distance distances");

  const bool any_stream = !network.empty();
  std::vector<double> out(like.size(), like.nodata());
  for (std::size_t i = 0; i < like.size(); ++i) {
    if (like.is_nodata(i) || water_mask.is_nodata(i)) continue;
    if (water_mask[i] != 0.0) {
      out[i] = 5;
      continue;
    }
    if (!any_stream && options.zero_without_streams) {
      out[i] = 0;
      continue;
    }
    int rank = 1;
    for (int level = 1; level <= 5; ++level) {
      const RasterGrid& d = distance_by_level[static_cast<std::size_t>(level - 1)];
      if (d.is_nodata(i)) continue;
      if (auto r = stream_level_rank(level, d[i])) rank = std::max(rank, *r);
    }
    out[i] = rank;
  }
  return {Indicator::dist_streams, like.with_cells(std::move(out), GridKind::categorical)};
}

}  // namespace floodrisk
