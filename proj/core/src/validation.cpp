#include "floodrisk/validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace floodrisk {

FloodMask FloodMask::without_permanent_water(RasterGrid truth) {
  RasterGrid none = RasterGrid::filled(truth.header(), 0.0, GridKind::categorical);
  return FloodMask{std::move(truth), std::move(none)};
}

RasterGrid positive_mask(const RiskProduct& product) {
  const RasterGrid& levels = product.levels;
  std::vector<double> out(levels.size(), levels.nodata());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!levels.is_nodata(i)) out[i] = levels[i] >= 4 ? 1.0 : 0.0;
  }
  return levels.with_cells(std::move(out), GridKind::categorical);
}

double high_risk_ratio(const RiskProduct& product) {
  std::size_t valid = 0;
  std::size_t high = 0;
  for (std::size_t i = 0; i < product.levels.size(); ++i) {
    if (product.levels.is_nodata(i)) continue;
    ++valid;
    if (product.levels[i] >= 4) ++high;
  }
  return valid == 0 ? 0.0 : static_cast<double>(high) / static_cast<double>(valid);
}

ValidationScores score(const RasterGrid& pred, const FloodMask& mask) {
  require_aligned(pred, mask.truth, "score truth");
  require_aligned(pred, mask.permanent_water, "score permanent water");

  ValidationScores s;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred.is_nodata(i) || mask.truth.is_nodata(i)) continue;
    if (!mask.permanent_water.is_nodata(i) && mask.permanent_water[i] != 0.0) continue;
    const bool p = pred[i] != 0.0;
    const bool t = mask.truth[i] != 0.0;
    s.fa_fri += p;
    s.fa_water += t;
    s.intersection += p && t;
    s.union_count += p || t;
  }
  if (s.fa_water == 0) {
    s.degenerate = true;
    return s;
  }
  s.correct_pct = 100.0 * static_cast<double>(s.intersection) / static_cast<double>(s.fa_water);
  s.fit_pct = 100.0 * static_cast<double>(s.intersection) / static_cast<double>(s.union_count);
  return s;
}

std::vector<LevelShare> level_distribution(const RiskProduct& product, const ZoneRaster& basins) {
  require_aligned(product.levels, basins.grid(), "level_distribution");
  std::map<long long, std::array<std::size_t, kRiskLevels>> histogram;
  for (std::size_t i = 0; i < product.levels.size(); ++i) {
    if (product.levels.is_nodata(i) || basins.grid().is_nodata(i)) continue;
    const auto basin = static_cast<long long>(basins.grid()[i]);
    if (basin == 0) continue;
    const int level = static_cast<int>(product.levels[i]);
    if (level < 1 || level > kRiskLevels) continue;
    auto [it, inserted] = histogram.try_emplace(basin);
    if (inserted) it->second.fill(0);
    ++it->second[static_cast<std::size_t>(level - 1)];
  }

  std::vector<LevelShare> out;
  out.reserve(histogram.size() * kRiskLevels);
  for (const auto& [basin, counts] : histogram) {
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    for (int level = 1; level <= kRiskLevels; ++level) {
      const std::size_t c = counts[static_cast<std::size_t>(level - 1)];
      out.push_back({basin, level, c, static_cast<double>(c) / static_cast<double>(total)});
    }
  }
  return out;
}

SeriesStats summarize(std::span<const double> values) {
  SeriesStats s;
  s.count = values.size();
  if (values.empty()) return s;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.range = s.max - s.min;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

StabilityReport sweep_stability(const std::vector<StabilitySeries>& series) {
  StabilityReport report;
  for (const auto& s : series) {
    if (s.values.size() < 2) {
      throw Error(ErrorKind::argument, "stability of " + s.variant + "/" + s.metric +
                                           " needs at least two projects");
    }
    report.rows.push_back({s.variant, s.metric, summarize(s.values), 0});
  }
  // Rank variants by range within each metric.
  for (auto& row : report.rows) {
    int rank = 1;
    for (const auto& other : report.rows) {
      if (other.metric == row.metric && other.stats.range < row.stats.range) ++rank;
    }
    row.range_rank = rank;
  }
  return report;
}

}  // namespace floodrisk
