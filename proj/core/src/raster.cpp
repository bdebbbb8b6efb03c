#include "floodrisk/raster.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>

namespace floodrisk {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::alignment: return "alignment";
    case ErrorKind::config: return "config";
    case ErrorKind::argument: return "argument";
    case ErrorKind::domain: return "domain";
    case ErrorKind::classification: return "classification";
    case ErrorKind::routing: return "routing";
    case ErrorKind::delineation: return "delineation";
    case ErrorKind::numeric: return "numeric";
  }
  return "unknown";
}

namespace {

void validate_header(const GridHeader& h) {
  if (h.ncols < 1 || h.nrows < 1) {
    throw Error(ErrorKind::argument, "grid dimensions must be positive, got " +
                                         std::to_string(h.nrows) + "x" + std::to_string(h.ncols));
  }
  if (!(h.cellsize > 0.0) || !std::isfinite(h.cellsize)) {
    throw Error(ErrorKind::argument, "cellsize must be a positive finite number");
  }
}

bool is_integral(double v) { return std::isfinite(v) && std::trunc(v) == v; }

}  // namespace

RasterGrid::RasterGrid(GridHeader header, std::vector<double> cells, GridKind kind)
    : header_(header), cells_(std::move(cells)), kind_(kind) {
  validate_header(header_);
  if (cells_.size() != header_.cell_count()) {
    throw Error(ErrorKind::argument, "cell count mismatch: expected " +
                                         std::to_string(header_.cell_count()) + ", found " +
                                         std::to_string(cells_.size()));
  }
  if (kind_ != GridKind::continuous) {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (!is_nodata(i) && !is_integral(cells_[i])) {
        throw Error(ErrorKind::domain, "non-integer value in categorical grid at cell " +
                                           std::to_string(i));
      }
    }
  }
}

RasterGrid RasterGrid::filled(const GridHeader& header, double value, GridKind kind) {
  return RasterGrid(header, std::vector<double>(header.cell_count(), value), kind);
}

std::size_t RasterGrid::valid_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [this](double v) { return v != header_.nodata; }));
}

bool RasterGrid::operator==(const RasterGrid& other) const noexcept {
  if (kind_ != other.kind_ || cells_.size() != other.cells_.size()) return false;
  auto bits = [](double v) { return std::bit_cast<std::uint64_t>(v); };
  if (bits(header_.xll) != bits(other.header_.xll) || bits(header_.yll) != bits(other.header_.yll) ||
      bits(header_.cellsize) != bits(other.header_.cellsize) ||
      bits(header_.nodata) != bits(other.header_.nodata) || header_.ncols != other.header_.ncols ||
      header_.nrows != other.header_.nrows) {
    return false;
  }
  return std::equal(cells_.begin(), cells_.end(), other.cells_.begin(),
                    [&](double a, double b) { return bits(a) == bits(b); });
}

bool headers_aligned(const GridHeader& a, const GridHeader& b) noexcept {
  if (a.ncols != b.ncols || a.nrows != b.nrows) return false;
  const double tol = 1e-6 * a.cellsize;
  return std::abs(a.cellsize - b.cellsize) <= tol && std::abs(a.xll - b.xll) <= tol &&
         std::abs(a.yll - b.yll) <= tol;
}

bool grids_aligned(const RasterGrid& a, const RasterGrid& b) noexcept {
  return headers_aligned(a.header(), b.header());
}

void require_aligned(const RasterGrid& a, const RasterGrid& b, const char* what) {
  if (!grids_aligned(a, b)) {
    throw Error(ErrorKind::alignment, std::string(what) + ": grids are not aligned");
  }
}

// ---------------------------------------------------------------------------
// ESRI ASCII grid

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Whitespace tokenizer that remembers where it is.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::optional<std::string_view> peek() {
    const std::size_t saved = pos_;
    auto tok = next();
    pos_ = saved;
    return tok;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<double> parse_double(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

RasterGrid read_ascii_grid(const std::filesystem::path& path, GridKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::input, "cannot open grid file '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = "'" + path.string() + "': ";

  Tokenizer tokens(text);
  std::optional<double> ncols, nrows, xcorner, ycorner, xcenter, ycenter, cellsize, nodata;

  // Header lines are "KEY value" pairs; the first numeric token starts the data.
  while (true) {
    auto key_tok = tokens.peek();
    if (!key_tok || !std::isalpha(static_cast<unsigned char>(key_tok->front()))) break;
    // "nan"/"inf" data tokens also start with a letter; only known keys count.
    const std::string key = lower(*key_tok);
    std::optional<double>* slot = nullptr;
    if (key == "ncols") slot = &ncols;
    else if (key == "nrows") slot = &nrows;
    else if (key == "xllcorner") slot = &xcorner;
    else if (key == "yllcorner") slot = &ycorner;
    else if (key == "xllcenter") slot = &xcenter;
    else if (key == "yllcenter") slot = &ycenter;
    else if (key == "cellsize") slot = &cellsize;
    else if (key == "nodata_value") slot = &nodata;
    else if (parse_double(*key_tok)) break;
    else throw Error(ErrorKind::input, where + "unknown header key '" + std::string(*key_tok) + "'");

    tokens.next();
    auto value_tok = tokens.next();
    if (!value_tok) throw Error(ErrorKind::input, where + "header key '" + key + "' has no value");
    auto value = parse_double(*value_tok);
    if (!value) {
      throw Error(ErrorKind::input, where + "header key '" + key + "' has non-numeric value '" +
                                        std::string(*value_tok) + "'");
    }
    if (slot->has_value()) throw Error(ErrorKind::input, where + "duplicate header key '" + key + "'");
    *slot = value;
  }

  auto require = [&](const std::optional<double>& v, const char* key) {
    if (!v) throw Error(ErrorKind::input, where + "missing header key '" + key + "'");
    return *v;
  };
  auto require_count = [&](const std::optional<double>& v, const char* key) {
    const double d = require(v, key);
    if (!is_integral(d) || d < 1 || d > 1e9) {
      throw Error(ErrorKind::input, where + "header key '" + key + "' must be a positive integer");
    }
    return static_cast<int>(d);
  };

  GridHeader header;
  header.ncols = require_count(ncols, "ncols");
  header.nrows = require_count(nrows, "nrows");
  header.cellsize = require(cellsize, "cellsize");
  if (!(header.cellsize > 0.0)) {
    throw Error(ErrorKind::input, where + "header key 'cellsize' must be positive");
  }
  if (xcorner && xcenter) throw Error(ErrorKind::input, where + "both 'xllcorner' and 'xllcenter' given");
  if (ycorner && ycenter) throw Error(ErrorKind::input, where + "both 'yllcorner' and 'yllcenter' given");
  header.xll = xcorner ? *xcorner : require(xcenter, "xllcorner") - 0.5 * header.cellsize;
  header.yll = ycorner ? *ycorner : require(ycenter, "yllcorner") - 0.5 * header.cellsize;
  header.nodata = nodata.value_or(kDefaultNodata);

  const std::size_t expected = header.cell_count();
  std::vector<double> cells;
  cells.reserve(expected);
  while (auto tok = tokens.next()) {
    if (cells.size() < expected) {
      auto value = parse_double(*tok);
      if (!value) {
        const std::size_t i = cells.size();
        throw Error(ErrorKind::input, where + "non-numeric token '" + std::string(*tok) +
                                          "' at row " + std::to_string(i / header.ncols) +
                                          ", col " + std::to_string(i % header.ncols));
      }
      cells.push_back(*value);
    } else {
      std::size_t found = expected + 1;
      while (tokens.next()) ++found;
      throw Error(ErrorKind::input, where + "cell count mismatch: expected " +
                                        std::to_string(expected) + ", found " + std::to_string(found));
    }
  }
  if (cells.size() != expected) {
    throw Error(ErrorKind::input, where + "cell count mismatch: expected " + std::to_string(expected) +
                                      ", found " + std::to_string(cells.size()));
  }
  try {
    return RasterGrid(header, std::move(cells), kind);
  } catch (const Error& e) {
    throw Error(ErrorKind::input, where + e.what());
  }
}

void write_ascii_grid(const RasterGrid& grid, const std::filesystem::path& path) {
  const GridHeader& h = grid.header();
  std::string out;
  out.reserve(grid.size() * 8 + 128);
  auto line = [&](const char* key, const std::string& value) {
    out += key;
    out += value;
    out += '\n';
  };
  line("ncols         ", std::to_string(h.ncols));
  line("nrows         ", std::to_string(h.nrows));
  line("xllcorner     ", format_double(h.xll));
  line("yllcorner     ", format_double(h.yll));
  line("cellsize      ", format_double(h.cellsize));
  line("NODATA_value  ", format_double(h.nodata));

  std::array<char, 64> buf{};
  for (int r = 0; r < h.nrows; ++r) {
    for (int c = 0; c < h.ncols; ++c) {
      if (c > 0) out += ' ';
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), grid.at(r, c));
      out.append(buf.data(), ptr);
    }
    out += '\n';
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::input, "cannot open '" + path.string() + "' for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorKind::input, "write failed for '" + path.string() + "'");
}

}  // namespace floodrisk
