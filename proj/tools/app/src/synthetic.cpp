#include "floodrisk/app/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "floodrisk/indicators.hpp"

namespace floodrisk::app {

std::string_view motif_name(Motif m) noexcept {
  switch (m) {
    case Motif::tilted_plane: return "tilted_plane";
    case Motif::single_valley: return "single_valley";
    case Motif::twin_bowl: return "twin_bowl";
    case Motif::branched_network: return "branched_network";
  }
  return "?";
}

std::optional<Motif> parse_motif(std::string_view name) noexcept {
  for (Motif m : {Motif::tilted_plane, Motif::single_valley, Motif::twin_bowl, Motif::branched_network}) {
    if (motif_name(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

/// Uniform [0, 1) from the raw 64-bit stream; avoids the library-specific
/// distribution classes so output does not depend on the standard library.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

/// Three octaves of bilinear value noise, rescaled to standard deviation `sigma`.
std::vector<double> value_noise(int rows, int cols, double sigma, Uniform& uniform) {
  std::vector<double> field(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
  if (sigma <= 0.0) return field;
  double weight = 1.0;
  for (int period : {16, 8, 4}) {
    const int lr = rows / period + 2;
    const int lc = cols / period + 2;
    std::vector<double> lattice(static_cast<std::size_t>(lr) * static_cast<std::size_t>(lc));
    for (double& v : lattice) v = 2.0 * uniform() - 1.0;
    auto at = [&](int r, int c) { return lattice[static_cast<std::size_t>(r) * lc + c]; };
    for (int r = 0; r < rows; ++r) {
      const int r0 = r / period;
      double fr = static_cast<double>(r % period) / period;
      fr = fr * fr * (3.0 - 2.0 * fr);
      for (int c = 0; c < cols; ++c) {
        const int c0 = c / period;
        double fc = static_cast<double>(c % period) / period;
        fc = fc * fc * (3.0 - 2.0 * fc);
        const double top = at(r0, c0) * (1 - fc) + at(r0, c0 + 1) * fc;
        const double bottom = at(r0 + 1, c0) * (1 - fc) + at(r0 + 1, c0 + 1) * fc;
        field[static_cast<std::size_t>(r) * cols + c] += weight * (top * (1 - fr) + bottom * fr);
      }
    }
    weight *= 0.5;
  }
  double mean = 0.0;
  for (double v : field) mean += v;
  mean /= static_cast<double>(field.size());
  double var = 0.0;
  for (double v : field) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(field.size()));
  for (double& v : field) v = sd > 0.0 ? (v - mean) * sigma / sd : 0.0;
  return field;
}

struct Segment {
  double u0, v0, u1, v1;
};

double distance_to_segment(double u, double v, const Segment& s) {
  const double du = s.u1 - s.u0;
  const double dv = s.v1 - s.v0;
  const double len2 = du * du + dv * dv;
  double t = len2 > 0.0 ? ((u - s.u0) * du + (v - s.v0) * dv) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(u - (s.u0 + t * du), v - (s.v0 + t * dv));
}

constexpr std::array<Segment, 4> kBranches{{
    {0.50, 0.45, 0.50, 1.00},  // trunk
    {0.10, 0.00, 0.50, 0.45},
    {0.90, 0.00, 0.50, 0.45},
    {0.15, 0.70, 0.50, 0.85},
}};

void add_companions(SyntheticScene& scene, const SyntheticTerrainSpec& spec,
                    const std::vector<double>& channel_cells, Uniform& uniform) {
  const GridHeader& h = scene.dem.header();
  const std::size_t n = h.cell_count();
  std::vector<double> landuse(n), hydrolith(n), water(n), truth(n);

  for (std::size_t i = 0; i < n; ++i) {
    const double d = channel_cells[i];
    const double u = uniform();
    int lu;
    if (d <= 0.75) lu = landuse_code::water;
    else if (d <= 4.0) lu = u < 0.5 ? landuse_code::building : u < 0.65 ? landuse_code::road : landuse_code::soil;
    else if (d <= 10.0)
      lu = u < 0.2   ? landuse_code::building
           : u < 0.3 ? landuse_code::road
           : u < 0.6 ? landuse_code::soil
                     : landuse_code::vegetation;
    else lu = u < 0.2 ? landuse_code::soil : landuse_code::vegetation;
    landuse[i] = lu;
    water[i] = lu == landuse_code::water ? 1.0 : 0.0;
    hydrolith[i] = lu == landuse_code::water                                   ? hydrolith_code::water
                   : lu == landuse_code::building || lu == landuse_code::road ? hydrolith_code::impervious
                                                                               : hydrolith_code::pervious;
  }

  std::vector<double> sorted(scene.dem.cells().begin(), scene.dem.cells().end());
  const auto q = std::clamp(spec.truth_quantile, 0.0, 1.0);
  const auto k = std::min(n - 1, static_cast<std::size_t>(q * static_cast<double>(n)));
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
  const double cutoff = sorted[k];
  for (std::size_t i = 0; i < n; ++i) truth[i] = scene.dem[i] <= cutoff ? 1.0 : 0.0;

  scene.landuse = RasterGrid(h, std::move(landuse), GridKind::categorical);
  scene.hydrolith = RasterGrid(h, std::move(hydrolith), GridKind::categorical);
  scene.permanent_water = RasterGrid(h, std::move(water), GridKind::categorical);
  scene.truth = RasterGrid(h, std::move(truth), GridKind::categorical);
}

}  // namespace

SyntheticScene gen_synthetic(const SyntheticTerrainSpec& spec) {
  if (spec.nrows < 1 || spec.ncols < 1) {
    throw Error(ErrorKind::argument, "synthetic terrain size must be positive, got " +
                                         std::to_string(spec.nrows) + "x" + std::to_string(spec.ncols));
  }
  if (!(spec.cellsize > 0.0)) throw Error(ErrorKind::argument, "synthetic cellsize must be positive");

  const int rows = spec.nrows;
  const int cols = spec.ncols;
  GridHeader header{cols, rows, 0.0, 0.0, spec.cellsize, kDefaultNodata};
  Uniform uniform(spec.seed);
  const std::vector<double> noise = value_noise(rows, cols, spec.noise_sigma, uniform);

  std::vector<double> z(header.cell_count());
  std::vector<double> channel_cells(header.cell_count(), 0.0);  // distance to the channel, cells
  const double half_width = std::max(1.0, (cols - 1) / 2.0);
  auto v_of = [&](int r) { return rows > 1 ? static_cast<double>(r) / (rows - 1) : 0.0; };
  auto u_of = [&](int c) { return cols > 1 ? static_cast<double>(c) / (cols - 1) : 0.0; };

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      switch (spec.motif) {
        case Motif::tilted_plane:
          z[i] = 100.0 + spec.amplitude * c;
          break;
        case Motif::single_valley: {
          const double x = (c - (cols - 1) / 2.0) / half_width;
          z[i] = spec.amplitude * (2.5 * std::pow(std::abs(x), 1.5) + (1.0 - v_of(r)));
          channel_cells[i] = std::abs(c - (cols - 1) / 2.0);
          break;
        }
        case Motif::twin_bowl: {
          const double rc = rows / 2;
          const double sr = std::max(1.0, rows / 2.0);
          const double sc = std::max(1.0, cols / 4.0);
          const double q1 = std::pow((r - rc) / sr, 2) + std::pow((c - cols / 4) / sc, 2);
          const double q2 = std::pow((r - rc) / sr, 2) + std::pow((c - 3 * cols / 4) / sc, 2);
          z[i] = spec.amplitude * std::min(q1, q2);
          break;
        }
        case Motif::branched_network: {
          double d = 1e9;
          for (const auto& s : kBranches) d = std::min(d, distance_to_segment(u_of(c), v_of(r), s));
          z[i] = spec.amplitude * (2.0 * d + (1.0 - v_of(r)));
          channel_cells[i] = d * (cols - 1);
          break;
        }
      }
      z[i] += noise[i];
    }
  }

  SyntheticScene scene{RasterGrid(header, std::move(z), GridKind::continuous), {}, {}, {}, {}};
  if (spec.motif == Motif::single_valley || spec.motif == Motif::branched_network) {
    add_companions(scene, spec, channel_cells, uniform);
  }
  return scene;
}

}  // namespace floodrisk::app
