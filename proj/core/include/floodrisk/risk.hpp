#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "floodrisk/ahp.hpp"
#include "floodrisk/indicators.hpp"
#include "floodrisk/raster.hpp"
#include "floodrisk/terrain.hpp"

namespace floodrisk {

enum class ModelVariant { pixel_ahp, mfd_rc, mfd_all, d8_rc, d8_all };

inline constexpr std::array<ModelVariant, 5> kModelVariants{
    ModelVariant::pixel_ahp, ModelVariant::mfd_rc, ModelVariant::mfd_all, ModelVariant::d8_rc,
    ModelVariant::d8_all};

enum class ZoneSource { none, mfd, d8 };

/// "PixelAHP", "MFD_RC", "MFD_All", "D8_RC", "D8_All".
std::string_view variant_name(ModelVariant v) noexcept;
std::optional<ModelVariant> parse_variant(std::string_view name) noexcept;

ZoneSource zone_source(ModelVariant v) noexcept;

/// Whether the variant replaces `id` by its sub-watershed maximum.
bool is_constrained(ModelVariant v, Indicator id) noexcept;

/// Each cell takes the maximum non-nodata rank of its zone. Cells with zone
/// id 0 keep their own value; nodata stays nodata.
RasterGrid zonal_max(const ZoneRaster& zones, const RankedIndicator& indicator);

/// FRI = sum_j w_j * layer_j, where constrained layers pass through
/// zonal_max. Any nodata layer voids the cell. Throws Error{config} when the
/// variant needs a zone raster that was not supplied.
RasterGrid compute_fri(const IndicatorStack& stack, const EigenResult& weights, ModelVariant variant,
                       const ZoneRaster* zones_mfd, const ZoneRaster* zones_d8);

/// Same, taking pre-computed constrained layers (index = indicator) so a
/// sweep can reuse zonal maxima across projects.
RasterGrid weighted_sum(const std::array<const RasterGrid*, kIndicatorCount>& layers,
                        std::span<const double> weights);

// ---------------------------------------------------------------------------
// Natural breaks

struct JenksOptions {
  /// Above this many values, a fixed-seed uniform sample of this size is
  /// classified instead.
  std::size_t max_values = 100000;
  std::uint64_t seed = 20240917;
};

struct JenksResult {
  std::vector<double> breaks;  // k - 1 ascending; break value belongs to the lower class
  double cost = 0.0;           // total within-class sum of squared deviations
  bool subsampled = false;
  std::uint64_t seed = 0;
  std::size_t sample_size = 0;
};

/// Exact Fisher-Jenks optimum over the values (grouped by distinct value).
/// Among equal-cost optima the lexicographically smallest break vector wins.
/// Throws Error{classification} with fewer than k distinct finite values.
JenksResult jenks_breaks(std::span<const double> values, int k, JenksOptions options = {});

/// Within-class squared deviation total of `values` under `breaks`.
double classification_cost(std::span<const double> values, std::span<const double> breaks);

/// 1 + number of breaks strictly below `value`.
int class_of(double value, std::span<const double> breaks) noexcept;

inline constexpr int kRiskLevels = 5;

struct RiskProduct {
  RasterGrid fri;
  RasterGrid levels;  // 1 = Very Low .. 5 = Very High
  std::vector<double> breaks;
  bool subsampled = false;
  std::uint64_t seed = 0;
};

std::string_view risk_level_name(int level) noexcept;

/// Five-class natural-breaks slicing of the FRI raster.
RiskProduct classify_fri(const RasterGrid& fri, JenksOptions options = {});

}  // namespace floodrisk
