#include <cmath>
#include <numbers>
#include <optional>

#include "floodrisk/terrain.hpp"

namespace floodrisk {

RasterGrid slope_degrees(const RasterGrid& dem) {
  const int rows = dem.nrows();
  const int cols = dem.ncols();
  const double nodata = dem.nodata();
  std::vector<double> out(dem.size(), nodata);

  auto value = [&](int r, int c) -> std::optional<double> {
    if (!dem.in_bounds(r, c) || dem.is_nodata(r, c)) return std::nullopt;
    return dem.at(r, c);
  };

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (dem.is_nodata(r, c)) continue;
      const double z0 = dem.at(r, c);
      // z[dr + 1][dc + 1]; orthogonal neighbours first so corners can extrapolate from them.
      double z[3][3];
      z[1][1] = z0;
      auto fill = [&](int dr, int dc, double fallback) {
        if (auto v = value(r + dr, c + dc)) {
          z[dr + 1][dc + 1] = *v;
        } else if (auto opposite = value(r - dr, c - dc)) {
          z[dr + 1][dc + 1] = 2.0 * z0 - *opposite;
        } else {
          z[dr + 1][dc + 1] = fallback;
        }
      };
      fill(-1, 0, z0);
      fill(1, 0, z0);
      fill(0, -1, z0);
      fill(0, 1, z0);
      for (int dr : {-1, 1}) {
        for (int dc : {-1, 1}) fill(dr, dc, z[dr + 1][1] + z[1][dc + 1] - z0);
      }
      const double cs = dem.cellsize();
      const double dzdx =
          ((z[0][2] + 2.0 * z[1][2] + z[2][2]) - (z[0][0] + 2.0 * z[1][0] + z[2][0])) / (8.0 * cs);
      const double dzdy =
          ((z[2][0] + 2.0 * z[2][1] + z[2][2]) - (z[0][0] + 2.0 * z[0][1] + z[0][2])) / (8.0 * cs);
      out[dem.index(r, c)] = std::atan(std::hypot(dzdx, dzdy)) * 180.0 / std::numbers::pi;
    }
  }
  return dem.with_cells(std::move(out), GridKind::continuous);
}

}  // namespace floodrisk
