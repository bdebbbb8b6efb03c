// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "floodrisk/app/commands.hpp"
#include "floodrisk/app/pipeline.hpp"
#include "floodrisk/app/synthetic.hpp"
#include "support/oracles.hpp"
#include "support/reference_weights.hpp"

using namespace floodrisk;
namespace ft = floodrisk::testing;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Verdict()> body;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, sep);) out.push_back(f);
  return out;
}

Verdict weights_table() {
  Verdict v;
  std::ostringstream out, err;
  const int code = app::run({"floodrisk", "weights"}, out, err);
  v.require(code == app::kExitOk, "weights command exited " + std::to_string(code));
  const auto lines = split(out.str(), '\n');
  v.require(lines.size() == 49, "expected 49 CSV lines, got " + std::to_string(lines.size()));
  if (!v.ok) return v;

  double worst = 0.0;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto f = split(lines[r], ',');
    const auto& ref = ft::kReferenceWeights[r - 1];
    v.require(f.size() == 12, "row " + std::to_string(r) + " has " + std::to_string(f.size()) + " fields");
    if (!v.ok) return v;
    v.require(std::stoi(f[0]) == ref.prj, "row order");
    const double got[] = {std::stod(f[4]), std::stod(f[5]), std::stod(f[6]), std::stod(f[7]),
                          std::stod(f[8]), std::stod(f[9]), std::stod(f[11])};
    const double want[] = {ref.w[0], ref.w[1], ref.w[2], ref.w[3], ref.w[4], ref.lambda_max, ref.cr};
    for (int j = 0; j < 7; ++j) {
      const double d = std::abs(got[j] - want[j]);
      worst = std::max(worst, d);
      v.require(d <= 0.001 + 1e-9, "prj " + std::to_string(ref.prj) + " column " + std::to_string(j) +
                                       fmt(": %.3f vs %.3f", got[j], want[j]));
    }
  }
  v.require(lines[1].find("0.214,0.068,0.302,0.100,0.315,5.133,") != std::string::npos &&
                lines[1].substr(lines[1].size() - 5) == "0.030",
            "prj 1 anchor");
  v.require(lines[45].find(",5.423,") != std::string::npos && lines[45].substr(lines[45].size() - 5) == "0.095",
            "prj 45 anchor");
  v.require(lines[48].find("0.222,0.047,0.351,0.089,0.291,") != std::string::npos, "prj 48 anchor");
  if (v.ok) v.detail = "48 rows, worst deviation " + fmt("%.4f", worst);
  return v;
}

Verdict consistency_gate_all() {
  Verdict v;
  double worst_cr = 0.0;
  for (const ProjectDefinition& p : enumerate_projects()) {
    const EigenResult e = principal_eigen(build_matrix(p));
    worst_cr = std::max(worst_cr, e.cr);
    v.require(consistency_gate(e), "prj " + std::to_string(p.number()) + fmt(" CR %.4f", e.cr));
    v.require(e.weights[2] > e.weights[0] && e.weights[0] > e.weights[1],
              "prj " + std::to_string(p.number()) + " weight order");
  }
  if (v.ok) v.detail = "max CR " + fmt("%.4f", worst_cr);
  return v;
}

Verdict zonal_max_oracle() {
  Verdict v;
  ft::Rng rng(401);
  for (int trial = 0; trial < 200 && v.ok; ++trial) {
    const GridHeader h = ft::header(ft::uniform_int(rng, 1, 20), ft::uniform_int(rng, 1, 20));
    RasterGrid ranks = ft::random_ranks(rng, h, 0, 5);
    std::vector<double> cells(ranks.cells().begin(), ranks.cells().end());
    for (double& c : cells) {
      if (ft::uniform(rng, 0.0, 1.0) < 0.05) c = h.nodata;
    }
    const RasterGrid values(h, std::move(cells), GridKind::categorical);
    const ZoneRaster zones = ft::random_zones(rng, h, ft::uniform_int(rng, 1, 12), trial % 3 == 0);
    const RasterGrid got = zonal_max(zones, RankedIndicator{Indicator::slope, values});
    const std::vector<double> want = ft::brute_zonal_max(zones, values);
    for (std::size_t i = 0; i < want.size(); ++i) {
      v.require(got[i] == want[i], "instance " + std::to_string(trial) + " cell " + std::to_string(i));
    }
  }
  if (v.ok) v.detail = "200 instances, exact";
  return v;
}

Verdict jenks_oracle() {
  Verdict v;
  ft::Rng rng(501);
  int instances = 0, unrestricted = 0;
  while (instances < 240 && v.ok) {
    const int n = ft::uniform_int(rng, 4, 12);
    const int k = ft::uniform_int(rng, 2, 4);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (double& x : values) x = ft::uniform_int(rng, 0, 40) * 0.125;
    std::vector<double> distinct(values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (static_cast<int>(distinct.size()) < k) continue;
    ++instances;

    const JenksResult r = jenks_breaks(values, k);
    const double cost = classification_cost(values, r.breaks);
    v.require(cost == ft::brute_jenks_cost(values, k),
              "instance " + std::to_string(instances) + fmt(": cost %.17g vs %.17g", cost, ft::brute_jenks_cost(values, k)));
    {
      ++unrestricted;
      const double any = ft::brute_partition_cost(values, k);
      v.require(std::abs(cost - any) <= 1e-12 * std::max(1.0, any),
                "instance " + std::to_string(instances) + fmt(": set partitions %.17g vs %.17g", any, cost));
    }
  }
  if (v.ok) {
    v.detail = std::to_string(instances) + " instances exact vs ordered enumeration, " +
               std::to_string(unrestricted) + " also vs all set partitions";
  }
  return v;
}

IndicatorStack random_stack(ft::Rng& rng, const GridHeader& h) {
  return IndicatorStack({RankedIndicator{Indicator::slope, ft::random_ranks(rng, h, 0, 5)},
                         RankedIndicator{Indicator::elevation, ft::random_ranks(rng, h, 1, 5)},
                         RankedIndicator{Indicator::dist_streams, ft::random_ranks(rng, h, 1, 5)},
                         RankedIndicator{Indicator::hydro_lith, ft::random_ranks(rng, h, 1, 4)},
                         RankedIndicator{Indicator::land_use, ft::random_ranks(rng, h, 1, 5)}});
}

Verdict singleton_equivalence() {
  Verdict v;
  ft::Rng rng(601);
  std::vector<EigenResult> weights;
  for (const ProjectDefinition& p : enumerate_projects()) weights.push_back(principal_eigen(build_matrix(p)));
  double worst = 0.0;
  for (int trial = 0; trial < 50 && v.ok; ++trial) {
    const GridHeader h = ft::header(ft::uniform_int(rng, 1, 16), ft::uniform_int(rng, 1, 16));
    const IndicatorStack stack = random_stack(rng, h);
    const ZoneRaster single = ft::singleton_zones(h);
    for (const EigenResult& w : weights) {
      const RasterGrid pixel = compute_fri(stack, w, ModelVariant::pixel_ahp, nullptr, nullptr);
      for (ModelVariant m : {ModelVariant::mfd_all, ModelVariant::d8_all}) {
        const RasterGrid f = compute_fri(stack, w, m, &single, &single);
        for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(f[i] - pixel[i]));
      }
    }
  }
  v.require(worst <= 1e-12, fmt("max difference %.3g", worst));
  if (v.ok) v.detail = "50 stacks x 48 weight vectors, max difference " + fmt("%.3g", worst);
  return v;
}

Verdict hydrology_conservation() {
  Verdict v;
  ft::Rng rng(701);
  double worst_mfd = 0.0;
  int networks = 0;
  for (int trial = 0; trial < 50 && v.ok; ++trial) {
    const std::string tag = "dem " + std::to_string(trial);
    const RasterGrid dem = ft::random_dem(rng, ft::uniform_int(rng, 8, 64), ft::uniform_int(rng, 8, 64),
                                          trial % 4 == 0 ? 0.03 : 0.0);
    const RasterGrid filled = fill_sinks(dem);
    const FlowDirGrid dirs = d8_flow_directions(filled);
    v.require(ft::routing_acyclic(dirs), tag + ": D8 routing has a cycle");
    const RasterGrid acc = flow_accumulation(dirs);
    double outlets = 0.0;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (!dirs.grid().is_nodata(i) && !dirs.downstream(i)) outlets += acc[i];
    }
    v.require(outlets == static_cast<double>(dem.valid_count()), tag + ": outlet accumulation");

    // 0.36 ha at 30 m is a four-cell cutoff.
    const StreamNetwork net = extract_streams(dirs, acc, 0.36);
    v.require(!net.empty(), tag + ": no stream cells");
    if (!net.empty()) {
      ++networks;
      v.require(ft::partitions_valid_cells(delineate_d8(dirs, net), dem), tag + ": D8 zones");
    }

    for (const RasterGrid* surface : {&dem, &filled}) {
      const MfdBasins b = analyze_mfd_basins(*surface);
      v.require(ft::partitions_valid_cells(b.zones, dem), tag + ": MFD zones");
      double mass = 0.0;
      for (double m : b.sink_inflow) mass += m;
      const double n = static_cast<double>(dem.valid_count());
      worst_mfd = std::max(worst_mfd, std::abs(mass - n) / n);
    }
  }
  v.require(worst_mfd <= 1e-6, fmt("MFD relative mass error %.3g", worst_mfd));
  if (v.ok) {
    v.detail = "50 DEMs, " + std::to_string(networks) + " networks, MFD mass error " + fmt("%.2g", worst_mfd);
  }
  return v;
}

struct RangePair {
  double pixel = 0.0;
  double mfd_rc = 0.0;
  std::size_t projects = 0;
  std::size_t mfd_zones = 0;
};

RangePair high_ratio_ranges(std::uint64_t seed) {
  app::SyntheticTerrainSpec spec;
  spec.nrows = 128;
  spec.ncols = 128;
  spec.motif = app::Motif::single_valley;
  spec.seed = seed;
  const app::SyntheticScene scene = app::gen_synthetic(spec);
  const app::TerrainProducts terrain = app::derive_terrain(scene.dem, kDefaultStreamThresholdHa);
  const RasterGrid water = app::water_mask_for(*scene.landuse, scene.permanent_water);
  const app::SweepInputs inputs{
      app::build_indicator_stack(scene.dem, terrain, *scene.landuse, *scene.hydrolith, water), terrain.mfd.zones,
      terrain.zones_d8, FloodMask{*scene.truth, *scene.permanent_water}};

  app::SweepOptions options;
  for (int p = 1; p <= static_cast<int>(kProjectCount); ++p) options.projects.push_back(p);
  options.variants = {ModelVariant::pixel_ahp, ModelVariant::mfd_rc};
  options.seed = seed;
  const auto outcomes = app::run_sweep(inputs, options);

  std::vector<double> pixel, mfd;
  for (const auto& o : outcomes) {
    pixel.push_back(o.variants[0].high_ratio);
    mfd.push_back(o.variants[1].high_ratio);
  }
  return {summarize(pixel).range, summarize(mfd).range, outcomes.size(), terrain.mfd.sink_count};
}

Verdict stability_property() {
  Verdict v;
  const std::uint64_t scenario_seed = app::SyntheticTerrainSpec{}.seed;
  const RangePair r = high_ratio_ranges(scenario_seed);
  v.require(r.projects == kProjectCount, "sweep did not cover 48 projects");
  v.require(r.mfd_rc <= r.pixel, fmt("MFD_RC range %.6f > PixelAHP range %.6f", r.mfd_rc, r.pixel));

  // Same check on other seeds; reported, not gated.
  int holds = 0, tried = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed, ++tried) {
    const RangePair other = high_ratio_ranges(seed);
    holds += other.mfd_rc <= other.pixel;
  }
  const std::string spread = "; other seeds 1-8: holds on " + std::to_string(holds) + "/" + std::to_string(tried);
  if (v.ok) {
    v.detail = "seed " + std::to_string(scenario_seed) +
               fmt(": High+Very High ratio range MFD_RC %.6f <= PixelAHP %.6f", r.mfd_rc, r.pixel) + " (" +
               std::to_string(r.mfd_zones) + " MFD zones)" + spread;
  } else {
    v.detail += spread;
  }
  return v;
}

RasterGrid mask_row(int ones, int offset, int cols) {
  std::vector<double> cells(static_cast<std::size_t>(cols), 0.0);
  for (int i = offset; i < offset + ones; ++i) cells[static_cast<std::size_t>(i)] = 1.0;
  return RasterGrid(ft::header(1, cols), std::move(cells), GridKind::categorical);
}

Verdict metric_arithmetic() {
  Verdict v;
  // 60 predicted, 50 truth, 30 shared on a 200-cell row.
  const ValidationScores s = score(mask_row(60, 0, 200), FloodMask::without_permanent_water(mask_row(50, 30, 200)));
  v.require(s.intersection == 30 && s.union_count == 80, "counts");
  v.require(std::abs(s.correct_pct - 60.0) < 1e-12, fmt("Correct %.6f", s.correct_pct));
  v.require(std::abs(s.fit_pct - 37.5) < 1e-12, fmt("Fit %.6f", s.fit_pct));

  const RasterGrid t = mask_row(50, 10, 100);
  const ValidationScores same = score(t, FloodMask::without_permanent_water(t));
  v.require(same.correct_pct == 100.0 && same.fit_pct == 100.0, "identical masks");
  const ValidationScores apart = score(mask_row(10, 0, 100), FloodMask::without_permanent_water(t));
  v.require(apart.correct_pct == 0.0 && apart.fit_pct == 0.0, "disjoint masks");
  if (v.ok) v.detail = "60.0/37.5, 100/100, 0/0";
  return v;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "weight table reproduction", 1.0, weights_table},
      {2, "consistency gate and weight order", 1.0, consistency_gate_all},
      {4, "zonal max oracle", 5.0, zonal_max_oracle},
      {5, "natural breaks oracle", 10.0, jenks_oracle},
      {6, "singleton zone equivalence", 10.0, singleton_equivalence},
      {7, "hydrology conservation", 30.0, hydrology_conservation},
      {8, "end-to-end stability", 60.0, stability_property},
      {9, "validation metric arithmetic", 1.0, metric_arithmetic},
  };

  int failures = 0;
  bool substitutes_ok = true;
  auto report = [&](int id, const char* title, bool ok, double secs, const std::string& detail) {
    std::printf("[%s] %d %s (%.3f s): %s\n", ok ? "PASS" : "FAIL", id, title, secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  };

  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (v.ok && secs > c.budget_s) {
      v.ok = false;
      v.detail = fmt("over the %.0f s budget", c.budget_s);
    }
    if (c.id >= 4 && c.id <= 8) substitutes_ok = substitutes_ok && v.ok;
    report(c.id, c.title, v.ok, secs, v.detail);
  }
  // The field-validation table needs the original rasters; it stands or falls
  // with the property substitutes.
  report(3, "field validation table (replaced by properties 4-8)", substitutes_ok, 0.0,
         substitutes_ok ? "property substitutes all pass" : "a property substitute failed");

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
