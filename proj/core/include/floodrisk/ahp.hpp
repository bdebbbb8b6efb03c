#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "floodrisk/error.hpp"

namespace floodrisk {

/// Positive reciprocal pairwise-comparison matrix.
class JudgmentMatrix {
 public:
  /// Row-major entries. Throws Error{argument} unless the matrix is square,
  /// positive, has a unit diagonal and a_ji = 1 / a_ij (1e-12 relative).
  JudgmentMatrix(std::size_t order, std::vector<double> entries);

  /// Fills the lower triangle with reciprocals of the given upper triangle
  /// (row-major, strictly above the diagonal).
  static JudgmentMatrix from_upper(std::size_t order, std::span<const double> upper);

  std::size_t order() const noexcept { return order_; }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * order_ + col];
  }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t order_;
  std::vector<double> entries_;
};

/// Saaty's random consistency index for orders 1..10.
inline constexpr std::array<double, 10> kRandomIndex{0.0,  0.0,  0.52, 0.89, 1.11,
                                                     1.25, 1.35, 1.40, 1.45, 1.49};

/// Throws Error{argument} outside 1..10.
double random_index(std::size_t order);

struct EigenResult {
  double lambda_max = 0.0;
  std::vector<double> weights;  // principal eigenvector scaled to sum 1
  double ci = 0.0;              // (lambda_max - n) / (n - 1)
  double cr = 0.0;              // ci / RI(n); 0 for n < 3
  int iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;  // on successive Rayleigh quotients
  int max_iterations = 10000;
};

/// Power iteration from `start` (uniform when empty), normalizing each step.
/// Throws Error{numeric} if the Rayleigh quotient has not settled.
EigenResult principal_eigen(const JudgmentMatrix& matrix, PowerIterationOptions options = {},
                            std::span<const double> start = {});

/// Acceptable when CR < 0.1.
bool consistency_gate(const EigenResult& result) noexcept;

inline constexpr double kConsistencyThreshold = 0.1;

/// One sensitivity project: the three variable comparisons between Slope,
/// Elevation and Distance from streams. Reciprocal entries are stored by
/// their denominators.
struct ProjectDefinition {
  int slope_vs_elevation;      // S/E in {4..9}
  int slope_vs_distance_den;   // S/R = 1/den, den in {2, 3}
  int elevation_vs_distance_den;  // E/R = 1/den, den in {3..6}

  double s_e() const noexcept { return slope_vs_elevation; }
  double s_r() const noexcept { return 1.0 / slope_vs_distance_den; }
  double e_r() const noexcept { return 1.0 / elevation_vs_distance_den; }

  /// 1..48 in sweep order (S/E outermost, E/R innermost).
  int number() const noexcept;
  bool valid() const noexcept;

  bool operator==(const ProjectDefinition&) const = default;
};

inline constexpr std::size_t kProjectCount = 48;

/// Throws Error{argument} outside 1..48.
ProjectDefinition project_from_number(int number);

/// All 48 projects in order.
std::vector<ProjectDefinition> enumerate_projects();

/// 5x5 criteria matrix in indicator order (Slope, Elevation, DistStreams,
/// HydroLith, LandUse) with the project's variable entries.
JudgmentMatrix build_matrix(const ProjectDefinition& project);

/// Round half away from zero to `digits` decimals.
double round_decimals(double value, int digits) noexcept;

/// "4", "1/2", ... for CSV output of Saaty-scale values.
std::string saaty_fraction(int numerator, int denominator);

}  // namespace floodrisk
