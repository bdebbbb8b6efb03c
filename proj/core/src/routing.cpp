#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <string>
#include <utility>

#include "floodrisk/terrain.hpp"

namespace floodrisk {

int d8_step_index(int code) noexcept {
  for (int k = 0; k < 8; ++k) {
    if (kD8Steps[k].code == code) return k;
  }
  return -1;
}

FlowDirGrid::FlowDirGrid(RasterGrid grid) : grid_(std::move(grid)) {
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_.is_nodata(i)) continue;
    const double v = grid_[i];
    if (v != kOutletCode && (v != std::trunc(v) || d8_step_index(static_cast<int>(v)) < 0)) {
      throw Error(ErrorKind::routing,
                  "invalid flow direction code " + std::to_string(v) + " at cell " + std::to_string(i));
    }
  }
}

std::optional<std::size_t> FlowDirGrid::downstream(std::size_t i) const noexcept {
  if (grid_.is_nodata(i)) return std::nullopt;
  const int k = d8_step_index(static_cast<int>(grid_[i]));
  if (k < 0) return std::nullopt;
  const int cols = grid_.ncols();
  const int r = static_cast<int>(i / static_cast<std::size_t>(cols)) + kD8Steps[k].drow;
  const int c = static_cast<int>(i % static_cast<std::size_t>(cols)) + kD8Steps[k].dcol;
  if (!grid_.in_bounds(r, c) || grid_.is_nodata(r, c)) return std::nullopt;
  return grid_.index(r, c);
}

RasterGrid fill_sinks(const RasterGrid& dem, double epsilon) {
  const int rows = dem.nrows();
  const int cols = dem.ncols();
  std::vector<double> filled(dem.cells().begin(), dem.cells().end());
  std::vector<bool> closed(dem.size(), false);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  auto is_seed = [&](int r, int c) {
    for (const auto& s : kD8Steps) {
      const int nr = r + s.drow;
      const int nc = c + s.dcol;
      if (!dem.in_bounds(nr, nc) || dem.is_nodata(nr, nc)) return true;
    }
    return false;
  };

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = dem.index(r, c);
      if (dem.is_nodata(i) || !is_seed(r, c)) continue;
      closed[i] = true;
      open.emplace(filled[i], i);
    }
  }

  while (!open.empty()) {
    const auto [z, i] = open.top();
    open.pop();
    const int r = static_cast<int>(i / static_cast<std::size_t>(cols));
    const int c = static_cast<int>(i % static_cast<std::size_t>(cols));
    for (const auto& s : kD8Steps) {
      const int nr = r + s.drow;
      const int nc = c + s.dcol;
      if (!dem.in_bounds(nr, nc)) continue;
      const std::size_t n = dem.index(nr, nc);
      if (closed[n] || dem.is_nodata(n)) continue;
      closed[n] = true;
      if (filled[n] <= z) filled[n] = z + epsilon;
      open.emplace(filled[n], n);
    }
  }
  return dem.with_cells(std::move(filled), GridKind::continuous);
}

std::size_t count_interior_sinks(const RasterGrid& dem) {
  std::size_t sinks = 0;
  for (int r = 0; r < dem.nrows(); ++r) {
    for (int c = 0; c < dem.ncols(); ++c) {
      if (dem.is_nodata(r, c)) continue;
      bool interior = true;
      bool has_lower = false;
      for (const auto& s : kD8Steps) {
        const int nr = r + s.drow;
        const int nc = c + s.dcol;
        if (!dem.in_bounds(nr, nc) || dem.is_nodata(nr, nc)) {
          interior = false;
          break;
        }
        if (dem.at(nr, nc) < dem.at(r, c)) has_lower = true;
      }
      if (interior && !has_lower) ++sinks;
    }
  }
  return sinks;
}

FlowDirGrid d8_flow_directions(const RasterGrid& filled_dem) {
  const RasterGrid& dem = filled_dem;
  std::vector<double> codes(dem.size(), dem.nodata());
  const double diagonal = dem.cellsize() * std::numbers::sqrt2;

  for (int r = 0; r < dem.nrows(); ++r) {
    for (int c = 0; c < dem.ncols(); ++c) {
      const std::size_t i = dem.index(r, c);
      if (dem.is_nodata(i)) continue;
      int best_code = kOutletCode;
      double best_slope = 0.0;
      for (const auto& s : kD8Steps) {
        const int nr = r + s.drow;
        const int nc = c + s.dcol;
        if (!dem.in_bounds(nr, nc) || dem.is_nodata(nr, nc)) continue;
        const double drop = dem[i] - dem.at(nr, nc);
        if (drop <= 0.0) continue;
        const double slope = drop / (s.drow != 0 && s.dcol != 0 ? diagonal : dem.cellsize());
        if (slope > best_slope) {
          best_slope = slope;
          best_code = s.code;
        }
      }
      codes[i] = best_code;
    }
  }
  return FlowDirGrid(dem.with_cells(std::move(codes), GridKind::label));
}

RasterGrid flow_accumulation(const FlowDirGrid& dirs) {
  const RasterGrid& grid = dirs.grid();
  const std::size_t n = grid.size();
  std::vector<int> indegree(n, 0);
  std::vector<std::optional<std::size_t>> down(n);
  std::size_t valid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.is_nodata(i)) continue;
    ++valid;
    down[i] = dirs.downstream(i);
    if (down[i]) ++indegree[*down[i]];
  }

  std::vector<double> acc(n, grid.nodata());
  std::vector<std::size_t> queue;
  queue.reserve(valid);
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.is_nodata(i)) continue;
    acc[i] = 1.0;
    if (indegree[i] == 0) queue.push_back(i);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t i = queue[head];
    if (!down[i]) continue;
    const std::size_t d = *down[i];
    acc[d] += acc[i];
    if (--indegree[d] == 0) queue.push_back(d);
  }
  if (queue.size() != valid) {
    throw Error(ErrorKind::routing, "flow directions contain a cycle (" +
                                        std::to_string(valid - queue.size()) + " cells unreachable)");
  }
  return grid.with_cells(std::move(acc), GridKind::continuous);
}

}  // namespace floodrisk
