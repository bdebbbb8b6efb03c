#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "floodrisk/terrain.hpp"

namespace floodrisk {

bool StreamNetwork::empty() const noexcept {
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask.is_nodata(i) && mask[i] == 1.0) return false;
  }
  return true;
}

std::size_t stream_cell_cutoff(double threshold_ha, double cellsize) {
  if (!(threshold_ha > 0.0) || !std::isfinite(threshold_ha)) {
    throw Error(ErrorKind::argument, "stream threshold must be positive, got " + std::to_string(threshold_ha));
  }
  if (!(cellsize > 0.0)) throw Error(ErrorKind::argument, "cellsize must be positive");
  const double cells = threshold_ha * 1e4 / (cellsize * cellsize);
  // Absorb representation error so exact multiples do not round up.
  const double cutoff = std::ceil(cells - 1e-9 * std::max(1.0, cells));
  return static_cast<std::size_t>(std::max(1.0, cutoff));
}

StreamNetwork extract_streams(const FlowDirGrid& dirs, const RasterGrid& acc, double threshold_ha) {
  require_aligned(dirs.grid(), acc, "extract_streams");
  const std::size_t cutoff = stream_cell_cutoff(threshold_ha, acc.cellsize());
  const std::size_t n = acc.size();
  const double nodata = acc.nodata();

  std::vector<double> mask(n, nodata);
  for (std::size_t i = 0; i < n; ++i) {
    if (acc.is_nodata(i) || dirs.grid().is_nodata(i)) continue;
    mask[i] = acc[i] >= static_cast<double>(cutoff) ? 1.0 : 0.0;
  }

  // Strahler order over the stream subgraph in upstream-first order.
  std::vector<int> indegree(n, 0);
  std::vector<std::optional<std::size_t>> down(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i] != 1.0) continue;
    auto d = dirs.downstream(i);
    if (d && mask[*d] == 1.0) {
      down[i] = d;
      ++indegree[*d];
    }
  }
  std::vector<int> max_in(n, 0);
  std::vector<int> count_max(n, 0);
  std::vector<int> order(n, 0);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i] == 1.0 && indegree[i] == 0) queue.push_back(i);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t i = queue[head];
    if (max_in[i] == 0) order[i] = 1;
    else order[i] = count_max[i] >= 2 ? max_in[i] + 1 : max_in[i];
    if (!down[i]) continue;
    const std::size_t d = *down[i];
    if (order[i] > max_in[d]) {
      max_in[d] = order[i];
      count_max[d] = 1;
    } else if (order[i] == max_in[d]) {
      ++count_max[d];
    }
    if (--indegree[d] == 0) queue.push_back(d);
  }

  std::vector<double> level(n, nodata);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i] == nodata) continue;
    level[i] = mask[i] == 1.0 ? std::clamp(order[i], 1, 5) : 0.0;
  }

  return StreamNetwork{acc.with_cells(std::move(mask), GridKind::label),
                       acc.with_cells(std::move(level), GridKind::label), cutoff};
}

namespace {

/// 1-D squared distance transform of a sampled function (Felzenszwalb and
/// Huttenlocher 2012). `f` holds squared distances in cell units.
void distance_transform_1d(std::span<const double> f, std::span<double> d,
                           std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  constexpr double inf = std::numeric_limits<double>::infinity();
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (int q = 1; q < n; ++q) {
    auto intersect = [&](int p) {
      return ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
             (2.0 * q - 2.0 * p);
    };
    double s = intersect(v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double diff = q - v[k];
    d[q] = diff * diff + f[v[k]];
  }
}

}  // namespace

RasterGrid euclidean_distance(const RasterGrid& like, const std::vector<std::uint8_t>& targets) {
  const int rows = like.nrows();
  const int cols = like.ncols();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> out(like.size(), inf);

  if (std::none_of(targets.begin(), targets.end(), [](std::uint8_t t) { return t != 0; })) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (like.is_nodata(i)) out[i] = like.nodata();
    }
    return like.with_cells(std::move(out), GridKind::continuous);
  }

  // Finite stand-in for "far": larger than any squared in-grid distance.
  const double far = 2.0 * (static_cast<double>(rows) * rows + static_cast<double>(cols) * cols) + 1.0;
  std::vector<double> sq(like.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = targets[i] ? 0.0 : far;

  std::vector<int> v;
  std::vector<double> z;
  std::vector<double> f(static_cast<std::size_t>(std::max(rows, cols)));
  std::vector<double> d(f.size());

  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) f[r] = sq[like.index(r, c)];
    distance_transform_1d(std::span(f).first(rows), std::span(d).first(rows), v, z);
    for (int r = 0; r < rows; ++r) sq[like.index(r, c)] = d[r];
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) f[c] = sq[like.index(r, c)];
    distance_transform_1d(std::span(f).first(cols), std::span(d).first(cols), v, z);
    for (int c = 0; c < cols; ++c) sq[like.index(r, c)] = d[c];
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = like.is_nodata(i) ? like.nodata() : std::sqrt(sq[i]) * like.cellsize();
  }
  return like.with_cells(std::move(out), GridKind::continuous);
}

RasterGrid distance_to_streams(const StreamNetwork& network, int level) {
  if (level < 1 || level > 5) {
    throw Error(ErrorKind::argument, "stream level must be in 1..5, got " + std::to_string(level));
  }
  std::vector<std::uint8_t> targets(network.level.size(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    targets[i] = !network.level.is_nodata(i) && network.level[i] == level;
  }
  return euclidean_distance(network.level, targets);
}

RasterGrid distance_to_any_stream(const StreamNetwork& network) {
  std::vector<std::uint8_t> targets(network.mask.size(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    targets[i] = !network.mask.is_nodata(i) && network.mask[i] == 1.0;
  }
  return euclidean_distance(network.mask, targets);
}

}  // namespace floodrisk
