#include "floodrisk/risk.hpp"

#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

namespace floodrisk {

std::string_view variant_name(ModelVariant v) noexcept {
  switch (v) {
    case ModelVariant::pixel_ahp: return "PixelAHP";
    case ModelVariant::mfd_rc: return "MFD_RC";
    case ModelVariant::mfd_all: return "MFD_All";
    case ModelVariant::d8_rc: return "D8_RC";
    case ModelVariant::d8_all: return "D8_All";
  }
  return "?";
}

std::optional<ModelVariant> parse_variant(std::string_view name) noexcept {
  for (ModelVariant v : kModelVariants) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

ZoneSource zone_source(ModelVariant v) noexcept {
  switch (v) {
    case ModelVariant::pixel_ahp: return ZoneSource::none;
    case ModelVariant::mfd_rc:
    case ModelVariant::mfd_all: return ZoneSource::mfd;
    case ModelVariant::d8_rc:
    case ModelVariant::d8_all: return ZoneSource::d8;
  }
  return ZoneSource::none;
}

bool is_constrained(ModelVariant v, Indicator id) noexcept {
  switch (v) {
    case ModelVariant::pixel_ahp: return false;
    case ModelVariant::mfd_rc:
    case ModelVariant::d8_rc: return is_converging_related(id);
    case ModelVariant::mfd_all:
    case ModelVariant::d8_all: return true;
  }
  return false;
}

std::string_view risk_level_name(int level) noexcept {
  switch (level) {
    case 1: return "Very Low";
    case 2: return "Low";
    case 3: return "Normal";
    case 4: return "High";
    case 5: return "Very High";
  }
  return "?";
}

RasterGrid zonal_max(const ZoneRaster& zones, const RankedIndicator& indicator) {
  const RasterGrid& z = zones.grid();
  const RasterGrid& values = indicator.grid;
  require_aligned(z, values, "zonal_max");

  std::unordered_map<long long, double> maxima;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values.is_nodata(i) || z.is_nodata(i) || z[i] == 0.0) continue;
    const auto id = static_cast<long long>(z[i]);
    auto [it, inserted] = maxima.try_emplace(id, values[i]);
    if (!inserted && values[i] > it->second) it->second = values[i];
  }

  std::vector<double> out(values.size(), values.nodata());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values.is_nodata(i)) continue;
    if (z.is_nodata(i) || z[i] == 0.0) {
      out[i] = values[i];
    } else {
      out[i] = maxima.at(static_cast<long long>(z[i]));
    }
  }
  return values.with_cells(std::move(out), values.kind());
}

RasterGrid weighted_sum(const std::array<const RasterGrid*, kIndicatorCount>& layers,
                        std::span<const double> weights) {
  if (weights.size() != kIndicatorCount) {
    throw Error(ErrorKind::argument, "expected 5 weights, got " + std::to_string(weights.size()));
  }
  const RasterGrid& first = *layers[0];
  for (const RasterGrid* layer : layers) require_aligned(first, *layer, "weighted_sum");

  std::vector<double> out(first.size(), first.nodata());
  for (std::size_t i = 0; i < first.size(); ++i) {
    double fri = 0.0;
    bool valid = true;
    for (std::size_t j = 0; j < kIndicatorCount; ++j) {
      const RasterGrid& layer = *layers[j];
      if (layer.is_nodata(i)) {
        valid = false;
        break;
      }
      fri += weights[j] * layer[i];
    }
    if (valid) out[i] = fri;
  }
  return first.with_cells(std::move(out), GridKind::continuous);
}

RasterGrid compute_fri(const IndicatorStack& stack, const EigenResult& weights, ModelVariant variant,
                       const ZoneRaster* zones_mfd, const ZoneRaster* zones_d8) {
  const ZoneRaster* zones = nullptr;
  switch (zone_source(variant)) {
    case ZoneSource::none: break;
    case ZoneSource::mfd: zones = zones_mfd; break;
    case ZoneSource::d8: zones = zones_d8; break;
  }
  if (zone_source(variant) != ZoneSource::none && zones == nullptr) {
    throw Error(ErrorKind::config,
                std::string(variant_name(variant)) + " requires a sub-watershed zone raster");
  }

  std::array<RasterGrid, kIndicatorCount> constrained;
  std::array<const RasterGrid*, kIndicatorCount> layers{};
  for (std::size_t j = 0; j < kIndicatorCount; ++j) {
    const RankedIndicator& indicator = stack[j];
    if (is_constrained(variant, indicator.id)) {
      constrained[j] = zonal_max(*zones, indicator);
      layers[j] = &constrained[j];
    } else {
      layers[j] = &indicator.grid;
    }
  }
  return weighted_sum(layers, weights.weights);
}

RiskProduct classify_fri(const RasterGrid& fri, JenksOptions options) {
  std::vector<double> values;
  values.reserve(fri.size());
  for (std::size_t i = 0; i < fri.size(); ++i) {
    if (!fri.is_nodata(i) && std::isfinite(fri[i])) values.push_back(fri[i]);
  }
  const std::set<double> distinct(values.begin(), values.end());
  if (distinct.size() < static_cast<std::size_t>(kRiskLevels)) {
    throw Error(ErrorKind::classification, "FRI raster has " + std::to_string(distinct.size()) +
                                               " distinct values; five risk levels need at least 5");
  }
  JenksResult jenks = jenks_breaks(values, kRiskLevels, options);

  std::vector<double> levels(fri.size(), fri.nodata());
  for (std::size_t i = 0; i < fri.size(); ++i) {
    if (!fri.is_nodata(i) && std::isfinite(fri[i])) levels[i] = class_of(fri[i], jenks.breaks);
  }
  return RiskProduct{fri, fri.with_cells(std::move(levels), GridKind::categorical),
                     std::move(jenks.breaks), jenks.subsampled, jenks.seed};
}

}  // namespace floodrisk
