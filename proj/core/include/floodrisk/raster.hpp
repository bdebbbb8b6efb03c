#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "floodrisk/error.hpp"

namespace floodrisk {

inline constexpr double kDefaultNodata = -9999.0;

/// Georeferencing of an m x n lattice. Corner coordinates are the lower-left
/// corner of the lower-left cell, in map units.
struct GridHeader {
  int ncols = 1;
  int nrows = 1;
  double xll = 0.0;
  double yll = 0.0;
  double cellsize = 1.0;
  double nodata = kDefaultNodata;

  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(ncols) * static_cast<std::size_t>(nrows);
  }
  bool operator==(const GridHeader&) const = default;
};

enum class GridKind { continuous, categorical, label };

/// Row-major grid of doubles, row 0 northernmost. Immutable once built;
/// transformations return new grids.
class RasterGrid {
 public:
  RasterGrid() = default;

  /// Throws Error{argument} if the header is invalid or the cell count is
  /// wrong, Error{domain} if a categorical/label grid holds a non-integer.
  RasterGrid(GridHeader header, std::vector<double> cells, GridKind kind = GridKind::continuous);

  /// Grid of the same lattice filled with `value`.
  static RasterGrid filled(const GridHeader& header, double value,
                           GridKind kind = GridKind::continuous);

  const GridHeader& header() const noexcept { return header_; }
  GridKind kind() const noexcept { return kind_; }
  int nrows() const noexcept { return header_.nrows; }
  int ncols() const noexcept { return header_.ncols; }
  double cellsize() const noexcept { return header_.cellsize; }
  double nodata() const noexcept { return header_.nodata; }
  std::size_t size() const noexcept { return cells_.size(); }

  std::span<const double> cells() const noexcept { return cells_; }
  double operator[](std::size_t i) const noexcept { return cells_[i]; }
  double at(int row, int col) const noexcept { return cells_[index(row, col)]; }

  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(header_.ncols) +
           static_cast<std::size_t>(col);
  }
  bool in_bounds(int row, int col) const noexcept {
    return row >= 0 && col >= 0 && row < header_.nrows && col < header_.ncols;
  }
  bool is_nodata(std::size_t i) const noexcept { return cells_[i] == header_.nodata; }
  bool is_nodata(int row, int col) const noexcept { return is_nodata(index(row, col)); }

  std::size_t valid_count() const noexcept;

  /// Same lattice, new values. Shorthand for derived layers.
  RasterGrid with_cells(std::vector<double> cells, GridKind kind) const {
    return RasterGrid(header_, std::move(cells), kind);
  }

  bool operator==(const RasterGrid& other) const noexcept;

 private:
  GridHeader header_{};
  std::vector<double> cells_{0.0};
  GridKind kind_ = GridKind::continuous;
};

/// True when both grids share ncols, nrows, cellsize and corner coordinates
/// within 1e-6 * cellsize.
bool grids_aligned(const RasterGrid& a, const RasterGrid& b) noexcept;
bool headers_aligned(const GridHeader& a, const GridHeader& b) noexcept;

/// Throws Error{alignment} naming `what` when the grids are not aligned.
void require_aligned(const RasterGrid& a, const RasterGrid& b, const char* what);

/// Reads an ESRI ASCII grid. Header keys are case-insensitive; both the
/// xllcorner/yllcorner and xllcenter/yllcenter conventions are accepted
/// (centers are converted to corners). NODATA_value is optional and
/// defaults to -9999.
RasterGrid read_ascii_grid(const std::filesystem::path& path,
                           GridKind kind = GridKind::continuous);

/// Writes an ESRI ASCII grid using the shortest decimal text that parses
/// back to the same double, so read(write(g)) == g bit for bit.
void write_ascii_grid(const RasterGrid& grid, const std::filesystem::path& path);

}  // namespace floodrisk
