#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "floodrisk/terrain.hpp"

namespace floodrisk {

ZoneRaster::ZoneRaster(RasterGrid grid) : grid_(std::move(grid)) {
  std::set<double> ids;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_.is_nodata(i)) continue;
    const double v = grid_[i];
    if (v < 0 || v != std::trunc(v)) {
      throw Error(ErrorKind::argument, "zone ids must be non-negative integers, got " + std::to_string(v));
    }
    if (v > 0) ids.insert(v);
  }
  zone_count_ = ids.size();
}

namespace {

bool is_stream(const StreamNetwork& network, std::size_t i) {
  return !network.mask.is_nodata(i) && network.mask[i] == 1.0;
}

struct LinkLabels {
  std::vector<int> link;  // 0 for non-stream cells
  int count = 0;
};

LinkLabels label_links(const FlowDirGrid& dirs, const StreamNetwork& network) {
  require_aligned(dirs.grid(), network.mask, "stream links");
  const std::size_t n = network.mask.size();
  std::vector<int> donors(n, 0);
  std::vector<std::optional<std::size_t>> down(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_stream(network, i)) continue;
    auto d = dirs.downstream(i);
    if (d && is_stream(network, *d)) {
      down[i] = d;
      ++donors[*d];
    }
  }

  // A link starts at a source (no stream donors) or just below a junction.
  LinkLabels labels{std::vector<int>(n, 0), 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (is_stream(network, i) && donors[i] != 1) labels.link[i] = ++labels.count;
  }

  std::vector<int> pending = donors;
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_stream(network, i) && donors[i] == 0) queue.push_back(i);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t i = queue[head];
    if (!down[i]) continue;
    const std::size_t d = *down[i];
    if (donors[d] == 1) labels.link[d] = labels.link[i];
    if (--pending[d] == 0) queue.push_back(d);
  }
  return labels;
}

}  // namespace

std::size_t count_stream_links(const FlowDirGrid& dirs, const StreamNetwork& network) {
  return static_cast<std::size_t>(label_links(dirs, network).count);
}

ZoneRaster delineate_d8(const FlowDirGrid& dirs, const StreamNetwork& network) {
  if (network.empty()) throw Error(ErrorKind::delineation, "stream network is empty");
  const LinkLabels links = label_links(dirs, network);
  const RasterGrid& grid = dirs.grid();
  const std::size_t n = grid.size();

  std::vector<std::vector<std::size_t>> upstream(n);
  std::vector<double> zone(n, grid.nodata());
  std::vector<std::size_t> queue;
  std::size_t valid = 0;
  int next_id = links.count;

  for (std::size_t i = 0; i < n; ++i) {
    if (grid.is_nodata(i)) continue;
    ++valid;
    if (is_stream(network, i)) {
      zone[i] = links.link[i];
      queue.push_back(i);
      continue;
    }
    if (auto d = dirs.downstream(i)) {
      upstream[*d].push_back(i);
    } else {
      zone[i] = ++next_id;
      queue.push_back(i);
    }
  }
  // Non-stream cells inherit the label of the cell they drain into.
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t i = queue[head];
    for (std::size_t u : upstream[i]) {
      if (is_stream(network, u)) continue;
      zone[u] = zone[i];
      queue.push_back(u);
    }
  }
  if (queue.size() != valid) {
    throw Error(ErrorKind::routing, "flow directions contain a cycle; " +
                                        std::to_string(valid - queue.size()) + " cells unlabeled");
  }
  return ZoneRaster(grid.with_cells(std::move(zone), GridKind::label));
}

// ---------------------------------------------------------------------------
// MFD sink basins

namespace {

struct Receiver {
  std::size_t cell;
  double fraction;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

MfdBasins analyze_mfd_basins(const RasterGrid& dem) {
  const int cols = dem.ncols();
  const std::size_t n = dem.size();
  const double diagonal = dem.cellsize() * std::numbers::sqrt2;

  auto neighbours = [&](std::size_t i, auto&& visit) {
    const int r = static_cast<int>(i / static_cast<std::size_t>(cols));
    const int c = static_cast<int>(i % static_cast<std::size_t>(cols));
    for (const auto& s : kD8Steps) {
      const int nr = r + s.drow;
      const int nc = c + s.dcol;
      if (!dem.in_bounds(nr, nc) || dem.is_nodata(nr, nc)) continue;
      visit(dem.index(nr, nc), s.drow != 0 && s.dcol != 0 ? diagonal : dem.cellsize());
    }
  };

  // Equal-elevation 8-connected components.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<bool> has_lower(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (dem.is_nodata(i)) continue;
    neighbours(i, [&](std::size_t j, double) {
      if (dem[j] < dem[i]) has_lower[i] = true;
      if (dem[j] == dem[i]) {
        const std::size_t a = find_root(parent, i);
        const std::size_t b = find_root(parent, j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    });
  }
  std::vector<bool> component_drains(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!dem.is_nodata(i) && has_lower[i]) component_drains[find_root(parent, i)] = true;
  }

  // Sink ids in row-major order of each sink region's first cell.
  std::vector<int> sink_of_root(n, 0);
  std::vector<int> sink(n, 0);
  int sink_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (dem.is_nodata(i)) continue;
    const std::size_t root = find_root(parent, i);
    if (component_drains[root]) continue;
    if (sink_of_root[root] == 0) sink_of_root[root] = ++sink_count;
    sink[i] = sink_of_root[root];
  }

  // Inside draining flats, distance (in steps) to the flat's spill cells.
  constexpr int kNotFlat = 0;
  std::vector<int> flat_distance(n, kNotFlat);
  {
    std::vector<std::size_t> queue;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (dem.is_nodata(i) || sink[i] != 0 || has_lower[i]) continue;
      // Cell in a draining flat with no own descent: seed from its spill cells.
      neighbours(i, [&](std::size_t j, double) {
        if (dem[j] == dem[i] && has_lower[j] && !seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      });
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t i = queue[head];
      neighbours(i, [&](std::size_t j, double) {
        if (seen[j] || dem[j] != dem[i] || has_lower[j]) return;
        seen[j] = true;
        flat_distance[j] = flat_distance[i] + 1;
        queue.push_back(j);
      });
    }
  }

  // Receivers: strictly lower neighbours weighted by drop / distance, or for
  // flat cells, the equal neighbours one step closer to the spill.
  std::vector<std::vector<Receiver>> receivers(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dem.is_nodata(i) || sink[i] != 0) continue;
    auto& out = receivers[i];
    double total = 0.0;
    if (has_lower[i]) {
      neighbours(i, [&](std::size_t j, double length) {
        const double drop = dem[i] - dem[j];
        if (drop > 0.0) {
          out.push_back({j, drop / length});
          total += drop / length;
        }
      });
    } else {
      neighbours(i, [&](std::size_t j, double) {
        if (dem[j] == dem[i] && flat_distance[j] == flat_distance[i] - 1) {
          out.push_back({j, 1.0});
          total += 1.0;
        }
      });
    }
    if (out.empty()) {
      throw Error(ErrorKind::routing, "MFD routing found no receiver for cell " + std::to_string(i));
    }
    for (auto& rcv : out) rcv.fraction /= total;
  }

  // Downstream-first order: elevation, then distance along a flat.
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!dem.is_nodata(i)) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dem[a] != dem[b]) return dem[a] < dem[b];
    if (flat_distance[a] != flat_distance[b]) return flat_distance[a] < flat_distance[b];
    return a < b;
  });

  // Share of each cell's mass reaching each sink, as sparse (id, share) lists.
  // A list is released once every donor has consumed it.
  std::vector<std::vector<std::pair<int, double>>> shares(n);
  std::vector<int> pending_donors(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& rcv : receivers[i]) ++pending_donors[rcv.cell];
  }
  std::vector<double> scratch(static_cast<std::size_t>(sink_count) + 1, 0.0);
  std::vector<char> marked(static_cast<std::size_t>(sink_count) + 1, 0);
  std::vector<int> touched;
  std::vector<double> zone(n, dem.nodata());
  for (std::size_t i : order) {
    if (sink[i] != 0) {
      shares[i] = {{sink[i], 1.0}};
      zone[i] = sink[i];
      continue;
    }
    touched.clear();
    for (const auto& rcv : receivers[i]) {
      for (const auto& [id, share] : shares[rcv.cell]) {
        if (!marked[id]) {
          marked[id] = 1;
          touched.push_back(id);
        }
        scratch[id] += rcv.fraction * share;
      }
      if (--pending_donors[rcv.cell] == 0) std::vector<std::pair<int, double>>().swap(shares[rcv.cell]);
    }
    std::sort(touched.begin(), touched.end());
    auto& mine = shares[i];
    mine.reserve(touched.size());
    double best = -1.0;
    int best_id = 0;
    for (int id : touched) {
      if (scratch[id] > 0.0) mine.emplace_back(id, scratch[id]);
      scratch[id] = 0.0;
      marked[id] = 0;
    }
    for (const auto& [id, share] : mine) best = std::max(best, share);
    for (const auto& [id, share] : mine) {
      if (share >= best * (1.0 - 1e-12)) {
        best_id = id;
        break;
      }
    }
    zone[i] = best_id;
    if (pending_donors[i] == 0) std::vector<std::pair<int, double>>().swap(mine);
  }

  // Forward pass: unit mass per cell, pushed downslope until it reaches a sink.
  std::vector<double> mass(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!dem.is_nodata(i)) mass[i] = 1.0;
  }
  std::vector<double> inflow(static_cast<std::size_t>(sink_count), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t i = *it;
    if (sink[i] != 0) {
      inflow[static_cast<std::size_t>(sink[i] - 1)] += mass[i];
      continue;
    }
    for (const auto& rcv : receivers[i]) mass[rcv.cell] += mass[i] * rcv.fraction;
  }

  return MfdBasins{ZoneRaster(dem.with_cells(std::move(zone), GridKind::label)),
                   static_cast<std::size_t>(sink_count), std::move(inflow)};
}

ZoneRaster delineate_mfd(const RasterGrid& dem) { return analyze_mfd_basins(dem).zones; }

}  // namespace floodrisk
