#include "floodrisk/app/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floodrisk/app/config.hpp"
#include "floodrisk/app/pipeline.hpp"
#include "floodrisk/app/synthetic.hpp"
#include "floodrisk/floodrisk.hpp"

namespace fs = std::filesystem;

namespace floodrisk::app {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input:
    case ErrorKind::domain:
    case ErrorKind::classification: return kExitInput;
    case ErrorKind::alignment:
    case ErrorKind::config:
    case ErrorKind::argument: return kExitConfig;
    case ErrorKind::numeric:
    case ErrorKind::routing:
    case ErrorKind::delineation: return kExitNumeric;
  }
  return kExitNumeric;
}

namespace {

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[256];
  const int n = std::snprintf(buf, sizeof buf, pattern, args...);
  if (n < 0) return {};
  if (static_cast<std::size_t>(n) < sizeof buf) return std::string(buf, static_cast<std::size_t>(n));
  std::string big(static_cast<std::size_t>(n) + 1, '\0');
  std::snprintf(big.data(), big.size(), pattern, args...);
  big.resize(static_cast<std::size_t>(n));
  return big;
}

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::input, "cannot create directory '" + dir.string() + "': " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::input, "cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw Error(ErrorKind::input, "write failed for '" + path.string() + "'");
}

RasterGrid finite_or_nodata(const RasterGrid& g) {
  std::vector<double> cells(g.cells().begin(), g.cells().end());
  for (double& v : cells) {
    if (!std::isfinite(v)) v = g.nodata();
  }
  return g.with_cells(std::move(cells), g.kind());
}

/// Accumulates "key = value" parameter lines and emitted file names.
class Manifest {
 public:
  explicit Manifest(std::string command) { param("command", std::move(command)); }
  void param(const std::string& key, const std::string& value) { text_ += key + " = " + value + "\n"; }
  void file(const std::string& name) { files_ += "file = " + name + "\n"; }
  void write(const fs::path& dir) const { write_text(dir / "manifest.txt", text_ + files_); }

 private:
  std::string text_;
  std::string files_;
};

std::string weights_header() { return "prj_no,s_e,s_r,e_r,w1,w2,w3,w4,w5,lambda_max,CI,CR\n"; }

std::string weights_row(const ProjectDefinition& p, const EigenResult& e) {
  std::string row = std::to_string(p.number()) + "," + saaty_fraction(p.slope_vs_elevation, 1) + "," +
                    saaty_fraction(1, p.slope_vs_distance_den) + "," +
                    saaty_fraction(1, p.elevation_vs_distance_den);
  for (double w : e.weights) row += fmt(",%.3f", round_decimals(w, 3));
  row += fmt(",%.3f,%.3f,%.3f\n", round_decimals(e.lambda_max, 3), round_decimals(e.ci, 3),
             round_decimals(e.cr, 3));
  return row;
}

std::string weights_csv(const std::vector<int>& projects) {
  std::string csv = weights_header();
  for (int n : projects) {
    const ProjectDefinition p = project_from_number(n);
    csv += weights_row(p, principal_eigen(build_matrix(p)));
  }
  return csv;
}

std::string join_variants(const std::vector<ModelVariant>& variants) {
  std::string s;
  for (ModelVariant v : variants) {
    if (!s.empty()) s += ',';
    s += variant_name(v);
  }
  return s;
}

std::string join_projects(const std::vector<int>& projects) {
  std::string s;
  for (int p : projects) {
    if (!s.empty()) s += ',';
    s += std::to_string(p);
  }
  return s;
}

RasterGrid read_categorical(const fs::path& path) { return read_ascii_grid(path, GridKind::categorical); }

/// Flags shared by the commands that take a run configuration.
struct RunFlags {
  std::string config;
  std::string dem, landuse, hydrolith, truth, permanent_water, out, projects, variants;
  double threshold_ha = 0.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  CLI::Option* o_dem = nullptr;
  CLI::Option* o_landuse = nullptr;
  CLI::Option* o_hydrolith = nullptr;
  CLI::Option* o_truth = nullptr;
  CLI::Option* o_pw = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_projects = nullptr;
  CLI::Option* o_variants = nullptr;
  CLI::Option* o_threshold = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_threads = nullptr;

  void add_to(CLI::App* cmd, bool sweep_inputs) {
    cmd->add_option("--config", config, "key = value configuration file");
    o_dem = cmd->add_option("--dem", dem, "DEM grid (ESRI ASCII)");
    if (sweep_inputs) {
      o_landuse = cmd->add_option("--landuse", landuse, "land-use class grid");
      o_hydrolith = cmd->add_option("--hydrolith", hydrolith, "hydro-lithology class grid");
      o_truth = cmd->add_option("--truth", truth, "flood truth mask (1 = flooded)");
      o_pw = cmd->add_option("--permanent-water", permanent_water, "permanent water mask (1 = water)");
      o_projects = cmd->add_option("--projects", projects, "project list, e.g. 1,3,5-8 or all");
      o_variants = cmd->add_option("--variants", variants, "model variants, e.g. PixelAHP,MFD_RC or all");
      o_threads = cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
    }
    o_out = cmd->add_option("--out", out, "output directory");
    o_threshold = cmd->add_option("--threshold-ha", threshold_ha, "stream area threshold in hectares");
    o_seed = cmd->add_option("--seed", seed, "random seed recorded in outputs");
  }

  RunConfig resolve() const {
    RunConfig cfg = config.empty() ? RunConfig{} : load_config_file(config);
    auto given = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };
    if (given(o_dem)) cfg.dem = dem;
    if (given(o_landuse)) cfg.landuse = landuse;
    if (given(o_hydrolith)) cfg.hydrolith = hydrolith;
    if (given(o_truth)) cfg.truth = fs::path(truth);
    if (given(o_pw)) cfg.permanent_water = fs::path(permanent_water);
    if (given(o_out)) cfg.out = out;
    if (given(o_projects)) cfg.projects = parse_project_list(projects);
    if (given(o_variants)) cfg.variants = parse_variant_list(variants);
    if (given(o_threshold)) cfg.threshold_ha = threshold_ha;
    if (given(o_seed)) cfg.seed = seed;
    if (given(o_threads)) cfg.threads = threads;
    cfg.validate();
    if (cfg.dem.empty()) throw Error(ErrorKind::config, "no DEM given (use --dem or 'dem' in the config)");
    return cfg;
  }
};

int cmd_terrain(const RunConfig& cfg, std::ostream& out) {
  const RasterGrid dem = read_ascii_grid(cfg.dem);
  const TerrainProducts t = derive_terrain(dem, cfg.threshold_ha);
  make_dir(cfg.out);

  Manifest manifest("terrain");
  manifest.param("dem", cfg.dem.string());
  manifest.param("threshold_ha", num(cfg.threshold_ha));
  manifest.param("cellsize", num(dem.cellsize()));
  manifest.param("accumulation_cutoff_cells", std::to_string(t.streams.accumulation_cutoff));
  manifest.param("fill_epsilon", num(kFillEpsilon));
  manifest.param("stream_levels", "strahler_clamped_1_5");
  manifest.param("d8_zones", std::to_string(t.zones_d8.zone_count()));
  manifest.param("mfd_sinks", std::to_string(t.mfd.sink_count));
  manifest.param("seed", std::to_string(cfg.seed));

  const std::pair<const char*, const RasterGrid*> products[] = {
      {"slope.asc", &t.slope},
      {"filled.asc", &t.filled},
      {"dirs.asc", &t.dirs.grid()},
      {"acc.asc", &t.accumulation},
      {"streams.asc", &t.streams.mask},
      {"levels.asc", &t.streams.level},
      {"zones_d8.asc", &t.zones_d8.grid()},
      {"zones_mfd.asc", &t.mfd.zones.grid()},
  };
  for (const auto& [name, grid] : products) {
    write_ascii_grid(*grid, cfg.out / name);
    manifest.file(name);
  }
  write_ascii_grid(finite_or_nodata(t.distance_any), cfg.out / "distance.asc");
  manifest.file("distance.asc");
  manifest.write(cfg.out);

  out << "terrain: wrote 9 grids to " << cfg.out.string() << " (stream cutoff "
      << t.streams.accumulation_cutoff << " cells, " << t.zones_d8.zone_count() << " D8 zones, "
      << t.mfd.sink_count << " MFD zones)\n";
  return kExitOk;
}

std::string meta_text(int project, ModelVariant variant, const RiskProduct& p, std::uint64_t seed) {
  std::string s = "variant = " + std::string(variant_name(variant)) + "\n";
  s += "prj_no = " + std::to_string(project) + "\n";
  s += "breaks =";
  for (double b : p.breaks) s += " " + num(b);
  s += "\nsubsampled = " + std::string(p.subsampled ? "true" : "false") + "\n";
  s += "seed = " + std::to_string(seed) + "\n";
  return s;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.landuse.empty() || cfg.hydrolith.empty()) {
    throw Error(ErrorKind::config, "sweep needs landuse and hydrolith grids");
  }
  const RasterGrid dem = read_ascii_grid(cfg.dem);
  const RasterGrid landuse = read_categorical(cfg.landuse);
  const RasterGrid hydrolith = read_categorical(cfg.hydrolith);
  std::optional<RasterGrid> truth;
  std::optional<RasterGrid> pw;
  if (cfg.truth) truth = read_categorical(*cfg.truth);
  if (cfg.permanent_water) pw = read_categorical(*cfg.permanent_water);
  require_aligned(dem, landuse, "land use");
  require_aligned(dem, hydrolith, "hydro-lithology");
  if (truth) require_aligned(dem, *truth, "flood truth");
  if (pw) require_aligned(dem, *pw, "permanent water");

  TerrainProducts terrain = derive_terrain(dem, cfg.threshold_ha);
  const RasterGrid water = water_mask_for(landuse, pw);
  std::optional<FloodMask> flood;
  if (truth) {
    flood = pw ? FloodMask{*truth, *pw} : FloodMask::without_permanent_water(*truth);
  }
  const SweepInputs inputs{build_indicator_stack(dem, terrain, landuse, hydrolith, water),
                           terrain.mfd.zones, terrain.zones_d8, flood};

  const std::vector<int> projects = cfg.selected_projects();
  make_dir(cfg.out);
  for (int p : projects) make_dir(cfg.out / fmt("prj_%02d", p));

  SweepOptions options;
  options.projects = projects;
  options.variants = cfg.variants;
  options.seed = cfg.seed;
  options.threads = cfg.threads;
  options.on_product = [&](const ProjectDefinition& project, ModelVariant v, const RiskProduct& product) {
    const fs::path dir = cfg.out / fmt("prj_%02d", project.number());
    const std::string stem(variant_name(v));
    write_ascii_grid(product.fri, dir / (stem + "_fri.asc"));
    write_ascii_grid(product.levels, dir / (stem + "_levels.asc"));
    write_text(dir / (stem + "_meta.txt"), meta_text(project.number(), v, product, cfg.seed));
  };
  const std::vector<ProjectOutcome> outcomes = run_sweep(inputs, options);

  Manifest manifest("sweep");
  manifest.param("dem", cfg.dem.string());
  manifest.param("landuse", cfg.landuse.string());
  manifest.param("hydrolith", cfg.hydrolith.string());
  manifest.param("truth", cfg.truth ? cfg.truth->string() : "none");
  manifest.param("permanent_water", cfg.permanent_water ? cfg.permanent_water->string() : "none");
  manifest.param("threshold_ha", num(cfg.threshold_ha));
  manifest.param("accumulation_cutoff_cells", std::to_string(terrain.streams.accumulation_cutoff));
  manifest.param("projects", join_projects(projects));
  manifest.param("variants", join_variants(cfg.variants));
  manifest.param("seed", std::to_string(cfg.seed));

  std::string weights = weights_header();
  for (const auto& o : outcomes) weights += weights_row(o.project, o.eigen);
  write_text(cfg.out / "weights.csv", weights);
  manifest.file("weights.csv");

  std::string levels = "prj_no,variant,b1,b2,b3,b4,level1,level2,level3,level4,level5,high_ratio,subsampled\n";
  for (const auto& o : outcomes) {
    for (const auto& v : o.variants) {
      levels += std::to_string(o.project.number()) + "," + std::string(variant_name(v.variant));
      for (double b : v.breaks) levels += fmt(",%.6f", b);
      for (double r : v.level_ratio) levels += fmt(",%.6f", r);
      levels += fmt(",%.6f,%d\n", v.high_ratio, v.subsampled ? 1 : 0);
    }
  }
  write_text(cfg.out / "levels.csv", levels);
  manifest.file("levels.csv");

  if (flood) {
    std::string sweep = "prj_no,s_e,s_r,e_r";
    for (ModelVariant v : cfg.variants) {
      const std::string name(variant_name(v));
      sweep += "," + name + "_correct," + name + "_fit";
    }
    sweep += "\n";
    for (const auto& o : outcomes) {
      const auto& p = o.project;
      sweep += std::to_string(p.number()) + "," + saaty_fraction(p.slope_vs_elevation, 1) + "," +
               saaty_fraction(1, p.slope_vs_distance_den) + "," + saaty_fraction(1, p.elevation_vs_distance_den);
      for (const auto& v : o.variants) sweep += fmt(",%.3f,%.3f", v.scores->correct_pct, v.scores->fit_pct);
      sweep += "\n";
    }
    write_text(cfg.out / "sweep.csv", sweep);
    manifest.file("sweep.csv");
  }

  if (outcomes.size() >= 2) {
    const StabilityReport report = sweep_stability(stability_series(outcomes));
    std::string csv = "variant,metric,count,min,max,mean,stddev,range,range_rank\n";
    for (const auto& r : report.rows) {
      csv += r.variant + "," + r.metric +
             fmt(",%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n", r.stats.count, r.stats.min, r.stats.max, r.stats.mean,
                 r.stats.stddev, r.stats.range, r.range_rank);
    }
    write_text(cfg.out / "stability.csv", csv);
    manifest.file("stability.csv");
  }

  for (const auto& o : outcomes) {
    for (const auto& v : o.variants) {
      const std::string stem = fmt("prj_%02d/", o.project.number()) + std::string(variant_name(v.variant));
      manifest.file(stem + "_fri.asc");
      manifest.file(stem + "_levels.asc");
      manifest.file(stem + "_meta.txt");
    }
  }
  manifest.write(cfg.out);

  out << "sweep: " << outcomes.size() << " project(s) x " << cfg.variants.size() << " variant(s) written to "
      << cfg.out.string() << "\n";
  return kExitOk;
}

struct SynthFlags {
  std::string motif = "single_valley";
  SyntheticTerrainSpec spec;
  std::string out = "synth";
};

int cmd_synth(const SynthFlags& flags, std::ostream& out) {
  SyntheticTerrainSpec spec = flags.spec;
  const auto motif = parse_motif(flags.motif);
  if (!motif) throw Error(ErrorKind::argument, "unknown motif '" + flags.motif + "'");
  spec.motif = *motif;
  const SyntheticScene scene = gen_synthetic(spec);
  const fs::path dir(flags.out);
  make_dir(dir);

  Manifest manifest("synth");
  manifest.param("motif", std::string(motif_name(spec.motif)));
  manifest.param("nrows", std::to_string(spec.nrows));
  manifest.param("ncols", std::to_string(spec.ncols));
  manifest.param("amplitude", num(spec.amplitude));
  manifest.param("noise_sigma", num(spec.noise_sigma));
  manifest.param("cellsize", num(spec.cellsize));
  manifest.param("truth_quantile", num(spec.truth_quantile));
  manifest.param("seed", std::to_string(spec.seed));

  std::string cfg = "dem = dem.asc\nseed = " + std::to_string(spec.seed) + "\n";
  write_ascii_grid(scene.dem, dir / "dem.asc");
  manifest.file("dem.asc");
  const std::pair<const char*, const std::optional<RasterGrid>*> companions[] = {
      {"landuse", &scene.landuse},
      {"hydrolith", &scene.hydrolith},
      {"truth", &scene.truth},
      {"permanent_water", &scene.permanent_water},
  };
  for (const auto& [key, grid] : companions) {
    if (!*grid) continue;
    const std::string name = std::string(key) + ".asc";
    write_ascii_grid(**grid, dir / name);
    manifest.file(name);
    cfg += std::string(key) + " = " + name + "\n";
  }
  write_text(dir / "run.cfg", cfg);
  manifest.file("run.cfg");
  manifest.write(dir);
  out << "synth: " << motif_name(spec.motif) << " " << spec.nrows << "x" << spec.ncols << " written to "
      << dir.string() << "\n";
  return kExitOk;
}

struct ScoreFlags {
  std::string pred, levels, truth, permanent_water;
};

int cmd_score(const ScoreFlags& flags, std::ostream& out) {
  if (flags.pred.empty() == flags.levels.empty()) {
    throw Error(ErrorKind::argument, "score needs exactly one of --pred or --levels");
  }
  RasterGrid pred;
  if (!flags.levels.empty()) {
    const RasterGrid levels = read_categorical(flags.levels);
    std::vector<double> mask(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
      mask[i] = levels.is_nodata(i) ? levels.nodata() : (levels[i] >= 4 ? 1.0 : 0.0);
    }
    pred = levels.with_cells(std::move(mask), GridKind::categorical);
  } else {
    pred = read_categorical(flags.pred);
  }
  RasterGrid truth = read_categorical(flags.truth);
  const FloodMask mask = flags.permanent_water.empty()
                             ? FloodMask::without_permanent_water(std::move(truth))
                             : FloodMask{std::move(truth), read_categorical(flags.permanent_water)};
  const ValidationScores s = score(pred, mask);
  out << "correct_pct,fit_pct,intersection,fa_fri,fa_water,union,degenerate\n"
      << fmt("%.3f,%.3f,%zu,%zu,%zu,%zu,%d\n", s.correct_pct, s.fit_pct, s.intersection, s.fa_fri, s.fa_water,
             s.union_count, s.degenerate ? 1 : 0);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sub-watershed constrained AHP flood-risk estimation"};
  app.name(args.empty() ? "floodrisk" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  RunFlags terrain_flags;
  auto* terrain = app.add_subcommand("terrain", "derive slope, routing, streams, distances and zones from a DEM");
  terrain_flags.add_to(terrain, false);

  std::string weights_out;
  auto* weights = app.add_subcommand("weights", "print the 48 judgment-matrix weight vectors as CSV");
  weights->add_option("--out", weights_out, "write weights.csv into this directory instead of stdout");

  RunFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "run projects x model variants, classify and score");
  sweep_flags.add_to(sweep, true);

  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "generate a synthetic DEM with companion grids");
  synth->add_option("--motif", synth_flags.motif, "tilted_plane | single_valley | twin_bowl | branched_network");
  synth->add_option("--rows", synth_flags.spec.nrows, "grid rows");
  synth->add_option("--cols", synth_flags.spec.ncols, "grid columns");
  synth->add_option("--amplitude", synth_flags.spec.amplitude, "relief in metres");
  synth->add_option("--noise", synth_flags.spec.noise_sigma, "noise standard deviation in metres");
  synth->add_option("--cellsize", synth_flags.spec.cellsize, "cell size in metres");
  synth->add_option("--truth-quantile", synth_flags.spec.truth_quantile, "flooded elevation quantile");
  synth->add_option("--seed", synth_flags.spec.seed, "random seed");
  synth->add_option("--out", synth_flags.out, "output directory");

  ScoreFlags score_flags;
  auto* score_cmd = app.add_subcommand("score", "score a prediction against a flood truth mask");
  score_cmd->add_option("--pred", score_flags.pred, "0/1 prediction grid");
  score_cmd->add_option("--levels", score_flags.levels, "risk level grid; levels 4 and 5 count as flooded");
  score_cmd->add_option("--truth", score_flags.truth, "flood truth grid")->required();
  score_cmd->add_option("--permanent-water", score_flags.permanent_water, "cells excluded from scoring");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (terrain->parsed()) return cmd_terrain(terrain_flags.resolve(), out);
    if (weights->parsed()) {
      std::vector<int> all(kProjectCount);
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i) + 1;
      const std::string csv = weights_csv(all);
      if (weights_out.empty()) {
        out << csv;
      } else {
        make_dir(weights_out);
        write_text(fs::path(weights_out) / "weights.csv", csv);
      }
      return kExitOk;
    }
    if (sweep->parsed()) return cmd_sweep(sweep_flags.resolve(), out);
    if (synth->parsed()) return cmd_synth(synth_flags, out);
    if (score_cmd->parsed()) return cmd_score(score_flags, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error (input): " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}

}  // namespace floodrisk::app
