#include <doctest.h>

#include <cstring>
#include <limits>
#include <string>

#include "floodrisk/raster.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace floodrisk;
using floodrisk::testing::TempDir;

namespace {

std::string error_of(const std::filesystem::path& p) {
  try {
    read_ascii_grid(p);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::input);
    return e.what();
  }
  FAIL("expected a read error");
  return {};
}

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("grid construction validates shape and kind") {
  const GridHeader h{2, 2, 0, 0, 30, -9999};
  CHECK_NOTHROW(RasterGrid(h, {1, 2, 3, 4}));
  CHECK_THROWS_AS(RasterGrid(h, {1, 2, 3}), Error);
  CHECK_THROWS_AS(RasterGrid(GridHeader{0, 2, 0, 0, 30, -9999}, {}), Error);
  CHECK_THROWS_AS(RasterGrid(GridHeader{1, 1, 0, 0, 0.0, -9999}, {1}), Error);
  CHECK_THROWS_AS(RasterGrid(h, {1, 2.5, 3, 4}, GridKind::categorical), Error);
  CHECK_NOTHROW(RasterGrid(h, {1, -9999, 3, 4}, GridKind::categorical));

  const RasterGrid g(h, {1, -9999, 3, 4});
  CHECK(g.valid_count() == 3);
  CHECK(g.is_nodata(0, 1));
  CHECK(g.at(1, 0) == 3);
  CHECK_FALSE(g.in_bounds(2, 0));
}

TEST_CASE("smallest legal grid reads back its value") {
  TempDir dir("raster");
  const auto p = dir.write("one.asc",
                           "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 30\nNODATA_value -9999\n7\n");
  const RasterGrid g = read_ascii_grid(p);
  CHECK(g.ncols() == 1);
  CHECK(g.nrows() == 1);
  CHECK(g.cellsize() == 30.0);
  CHECK(g[0] == 7.0);
}

TEST_CASE("header keys are case-insensitive and centre origins shift to corners") {
  TempDir dir("raster");
  const auto p = dir.write("c.asc",
                           "NCOLS 2\nNROWS 1\nXLLCENTER 15\nYLLCENTER 45\nCELLSIZE 30\n1 2\n");
  const RasterGrid g = read_ascii_grid(p);
  CHECK(g.header().xll == 0.0);
  CHECK(g.header().yll == 30.0);
  CHECK(g.nodata() == kDefaultNodata);
}

TEST_CASE("malformed files report what is wrong") {
  TempDir dir("raster");
  SUBCASE("short cell count") {
    const auto msg = error_of(dir.write(
        "a.asc", "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 30\nNODATA_value -9999\n1 2 3\n"));
    CHECK(msg.find("expected 4, found 3") != std::string::npos);
  }
  SUBCASE("extra cells") {
    const auto msg = error_of(dir.write(
        "b.asc", "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 30\n1 2\n"));
    CHECK(msg.find("expected 1, found 2") != std::string::npos);
  }
  SUBCASE("missing key") {
    const auto msg = error_of(dir.write("c.asc", "ncols 1\nxllcorner 0\nyllcorner 0\ncellsize 30\n1\n"));
    CHECK(msg.find("nrows") != std::string::npos);
  }
  SUBCASE("unknown key") {
    const auto msg = error_of(dir.write("d.asc", "ncols 1\nnrows 1\nbogus 3\n1\n"));
    CHECK(msg.find("bogus") != std::string::npos);
  }
  SUBCASE("non-numeric header value") {
    const auto msg = error_of(dir.write("e.asc", "ncols x\nnrows 1\n"));
    CHECK(msg.find("ncols") != std::string::npos);
  }
  SUBCASE("bad token carries its position") {
    const auto msg = error_of(dir.write(
        "f.asc", "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 30\n1 2\n3 q\n"));
    CHECK(msg.find("row 1, col 1") != std::string::npos);
  }
  SUBCASE("missing file names the path") {
    const auto msg = error_of(dir / "absent.asc");
    CHECK(msg.find("absent.asc") != std::string::npos);
  }
}

TEST_CASE("write then read reproduces the grid") {
  TempDir dir("raster");
  SUBCASE("single zero") {
    const RasterGrid g(GridHeader{1, 1, 0, 0, 30, -9999}, {0.0});
    write_ascii_grid(g, dir / "z.asc");
    CHECK(read_ascii_grid(dir / "z.asc") == g);
  }
  SUBCASE("nodata token matches the header text") {
    const RasterGrid g(GridHeader{2, 1, 0, 0, 30, -32768}, {-32768, 1});
    write_ascii_grid(g, dir / "n.asc");
    const std::string text = floodrisk::testing::slurp(dir / "n.asc");
    CHECK(text.find("NODATA_value  -32768\n") != std::string::npos);
    CHECK(text.find("\n-32768 1\n") != std::string::npos);
  }
  SUBCASE("random grids round-trip bit for bit") {
    floodrisk::testing::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      const GridHeader h{8, 8, floodrisk::testing::uniform(rng, -1e6, 1e6),
                         floodrisk::testing::uniform(rng, -1e6, 1e6), 0.1 + trial, -9999};
      std::vector<double> cells(64);
      for (double& v : cells) v = floodrisk::testing::uniform(rng, -1e4, 1e4);
      cells[static_cast<std::size_t>(trial % 64)] = h.nodata;
      const RasterGrid g(h, cells);
      write_ascii_grid(g, dir / "r.asc");
      const RasterGrid back = read_ascii_grid(dir / "r.asc");
      REQUIRE(back.header() == g.header());
      for (std::size_t i = 0; i < cells.size(); ++i) CHECK(bitwise_equal(back[i], g[i]));
    }
  }
  SUBCASE("unwritable path") {
    const RasterGrid g(GridHeader{1, 1, 0, 0, 30, -9999}, {0.0});
    CHECK_THROWS_AS(write_ascii_grid(g, dir / "no" / "such" / "dir.asc"), Error);
  }
}

TEST_CASE("alignment uses a tolerance relative to the cell size") {
  const GridHeader h{10, 10, 0, 0, 30, -9999};
  const RasterGrid a = RasterGrid::filled(h, 1.0);
  CHECK(grids_aligned(a, a));

  GridHeader wider = h;
  wider.ncols = 11;
  CHECK_FALSE(grids_aligned(a, RasterGrid::filled(wider, 1.0)));

  GridHeader shifted = h;
  shifted.xll = 15.0;
  CHECK_FALSE(grids_aligned(a, RasterGrid::filled(shifted, 1.0)));

  GridHeader nudged = h;
  nudged.xll = 1e-6;
  CHECK(grids_aligned(a, RasterGrid::filled(nudged, 1.0)));
  CHECK_THROWS_AS(require_aligned(a, RasterGrid::filled(shifted, 1.0), "test"), Error);

  // Symmetric and transitive at a fixed tolerance.
  GridHeader b = h, c = h;
  b.yll = 1e-5;
  c.yll = 2e-5;
  const RasterGrid gb = RasterGrid::filled(b, 0.0), gc = RasterGrid::filled(c, 0.0);
  CHECK(grids_aligned(gb, a) == grids_aligned(a, gb));
  CHECK(grids_aligned(a, gb));
  CHECK(grids_aligned(gb, gc));
  CHECK(grids_aligned(a, gc));
}
