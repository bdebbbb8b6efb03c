#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "floodrisk/app/commands.hpp"
#include "floodrisk/app/config.hpp"
#include "floodrisk/app/synthetic.hpp"
#include "support/tempdir.hpp"

using namespace floodrisk;
using namespace floodrisk::app;
using floodrisk::testing::TempDir;
using floodrisk::testing::slurp;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "floodrisk");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

std::size_t columns(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST_CASE("config text") {
  const ConfigEntries e = parse_config_text("# comment\nDEM = a.asc\n\nthreshold_ha = 12.5  # inline\n");
  CHECK(e.at("dem") == "a.asc");
  CHECK(e.at("threshold_ha") == "12.5");
  CHECK_THROWS_AS(parse_config_text("dem a.asc\n"), Error);

  RunConfig cfg;
  apply_config(cfg, e, "/data");
  CHECK(cfg.dem == std::filesystem::path("/data/a.asc"));
  CHECK(cfg.threshold_ha == 12.5);
  try {
    apply_config(cfg, {{"bogus", "1"}});
    FAIL("unknown key accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::config);
  }
  cfg.threshold_ha = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("project and variant lists") {
  CHECK(parse_project_list("all").empty());
  CHECK(parse_project_list("5-7, 1,6") == std::vector<int>{1, 5, 6, 7});
  CHECK_THROWS_AS(parse_project_list("0"), Error);
  CHECK_THROWS_AS(parse_project_list("49"), Error);
  CHECK_THROWS_AS(parse_project_list("8-3"), Error);
  CHECK(parse_variant_list("d8_all, PixelAHP") ==
        std::vector<ModelVariant>{ModelVariant::pixel_ahp, ModelVariant::d8_all});
  CHECK(parse_variant_list("all").size() == 5);
  CHECK_THROWS_AS(parse_variant_list("MFD"), Error);
  RunConfig cfg;
  CHECK(cfg.selected_projects().size() == 48);
}

TEST_CASE("synthetic scenes are deterministic") {
  SyntheticTerrainSpec spec;
  spec.nrows = 24;
  spec.ncols = 20;
  const SyntheticScene a = gen_synthetic(spec);
  const SyntheticScene b = gen_synthetic(spec);
  CHECK(a.dem == b.dem);
  REQUIRE(a.truth.has_value());
  CHECK(*a.truth == *b.truth);
  spec.seed = 43;
  CHECK_FALSE(gen_synthetic(spec).dem == a.dem);

  spec.motif = Motif::tilted_plane;
  spec.noise_sigma = 0.0;
  const SyntheticScene plane = gen_synthetic(spec);
  for (int r = 0; r < spec.nrows; ++r) {
    for (int c = 1; c < spec.ncols; ++c) CHECK(plane.dem.at(r, c) > plane.dem.at(r, c - 1));
  }
  spec.nrows = 0;
  CHECK_THROWS_AS(gen_synthetic(spec), Error);
  CHECK(parse_motif("twin_bowl") == Motif::twin_bowl);
  CHECK_FALSE(parse_motif("volcano").has_value());
}

TEST_CASE("cli error codes") {
  TempDir dir("cli");
  CHECK(cli({}).code == kExitConfig);
  CHECK(cli({"nonsense"}).code == kExitConfig);
  CHECK(cli({"terrain", "--threshold-ha", "1"}).code == kExitConfig);
  const Outcome missing = cli({"terrain", "--dem", (dir / "absent.asc").string(), "--out", (dir / "t").string()});
  CHECK(missing.code == kExitInput);
  CHECK(missing.err.find("absent.asc") != std::string::npos);
  CHECK(cli({"sweep", "--dem", "x.asc", "--projects", "60"}).code == kExitConfig);
  CHECK(cli({"synth", "--motif", "volcano", "--out", (dir / "s").string()}).code != kExitOk);
  CHECK(exit_code_for(ErrorKind::routing) == kExitNumeric);
  CHECK(exit_code_for(ErrorKind::alignment) == kExitConfig);
  CHECK(exit_code_for(ErrorKind::domain) == kExitInput);
}

TEST_CASE("weights command prints the reference table") {
  const Outcome o = cli({"weights"});
  REQUIRE(o.code == kExitOk);
  const auto lines = lines_of(o.out);
  REQUIRE(lines.size() == 49);
  CHECK(lines[0] == "prj_no,s_e,s_r,e_r,w1,w2,w3,w4,w5,lambda_max,CI,CR");
  CHECK(lines[1].rfind("1,4,1/2,1/3,0.214,0.068,0.302,0.100,0.315,5.133,", 0) == 0);
  CHECK(lines[1].substr(lines[1].size() - 5) == "0.030");
  CHECK(lines[48].rfind("48,9,1/3,1/6,", 0) == 0);
}

TEST_CASE("terrain, sweep and score commands") {
  TempDir dir("cli");
  REQUIRE(cli({"synth", "--motif", "branched_network", "--rows", "48", "--cols", "48", "--seed", "7", "--out",
               (dir / "scene").string()})
              .code == kExitOk);
  const auto scene = dir / "scene";

  SUBCASE("terrain writes nine grids and a manifest") {
    const Outcome o = cli({"terrain", "--dem", (scene / "dem.asc").string(), "--out", (dir / "t").string()});
    REQUIRE(o.code == kExitOk);
    for (const char* name : {"slope", "filled", "dirs", "acc", "streams", "levels", "zones_d8", "zones_mfd",
                             "distance"}) {
      CHECK(std::filesystem::exists(dir / "t" / (std::string(name) + ".asc")));
    }
    const std::string manifest = slurp(dir / "t" / "manifest.txt");
    CHECK(manifest.find("accumulation_cutoff_cells = 742") != std::string::npos);
    CHECK(read_ascii_grid(dir / "t" / "dirs.asc").header() == read_ascii_grid(scene / "dem.asc").header());
  }

  SUBCASE("minimal sweep is reproducible") {
    const std::vector<std::string> args{"sweep", "--config", (scene / "run.cfg").string(), "--projects", "1",
                                        "--variants", "PixelAHP", "--out", (dir / "a").string()};
    REQUIRE(cli(args).code == kExitOk);
    const auto p1 = dir / "a" / "prj_01";
    CHECK(std::filesystem::exists(p1 / "PixelAHP_fri.asc"));
    CHECK(std::filesystem::exists(p1 / "PixelAHP_levels.asc"));
    const std::string meta = slurp(p1 / "PixelAHP_meta.txt");
    CHECK(meta.find("prj_no = 1") != std::string::npos);
    CHECK(meta.find("seed = 7") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir / "a" / "stability.csv"));

    std::vector<std::string> again = args;
    again.back() = (dir / "b").string();
    REQUIRE(cli(again).code == kExitOk);
    CHECK(slurp(p1 / "PixelAHP_fri.asc") == slurp(dir / "b" / "prj_01" / "PixelAHP_fri.asc"));
    CHECK(slurp(p1 / "PixelAHP_levels.asc") == slurp(dir / "b" / "prj_01" / "PixelAHP_levels.asc"));
    CHECK(slurp(dir / "a" / "levels.csv") == slurp(dir / "b" / "levels.csv"));
  }

  SUBCASE("scored sweep tables") {
    const Outcome o = cli({"sweep", "--config", (scene / "run.cfg").string(), "--projects", "1-3", "--variants",
                           "PixelAHP,D8_RC", "--threads", "2", "--out", (dir / "s").string()});
    REQUIRE(o.code == kExitOk);
    const auto rows = lines_of(slurp(dir / "s" / "sweep.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "prj_no,s_e,s_r,e_r,PixelAHP_correct,PixelAHP_fit,D8_RC_correct,D8_RC_fit");
    for (const auto& r : rows) CHECK(columns(r) == 8);
    const auto stability = lines_of(slurp(dir / "s" / "stability.csv"));
    CHECK(stability.size() > 1);
    CHECK(columns(stability[0]) == 9);

    const Outcome s = cli({"score", "--levels", (dir / "s" / "prj_01" / "PixelAHP_levels.asc").string(),
                           "--truth", (scene / "truth.asc").string(), "--permanent-water",
                           (scene / "permanent_water.asc").string()});
    REQUIRE(s.code == kExitOk);
    const auto score_lines = lines_of(s.out);
    REQUIRE(score_lines.size() == 2);
    const auto sweep_fields = fields(rows[1]);
    const auto score_fields = fields(score_lines[1]);
    CHECK(score_fields[0] == sweep_fields[4]);
    CHECK(score_fields[1] == sweep_fields[5]);
  }

  SUBCASE("misaligned companion grid") {
    const RasterGrid dem = read_ascii_grid(scene / "dem.asc");
    GridHeader h = dem.header();
    h.xll += 5 * h.cellsize;
    write_ascii_grid(RasterGrid::filled(h, 1.0, GridKind::categorical), dir / "shifted.asc");
    const Outcome o = cli({"sweep", "--config", (scene / "run.cfg").string(), "--landuse",
                           (dir / "shifted.asc").string(), "--projects", "1", "--out", (dir / "m").string()});
    CHECK(o.code == kExitConfig);
  }
}
