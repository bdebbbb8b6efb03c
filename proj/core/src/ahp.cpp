#include "floodrisk/ahp.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace floodrisk {

JudgmentMatrix::JudgmentMatrix(std::size_t order, std::vector<double> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ == 0) throw Error(ErrorKind::argument, "judgment matrix order must be >= 1");
  if (entries_.size() != order_ * order_) {
    throw Error(ErrorKind::argument, "judgment matrix needs " + std::to_string(order_ * order_) +
                                         " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < order_; ++i) {
    if ((*this)(i, i) != 1.0) {
      throw Error(ErrorKind::argument, "judgment matrix diagonal entry " + std::to_string(i) + " is not 1");
    }
    for (std::size_t j = 0; j < order_; ++j) {
      const double a = (*this)(i, j);
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::argument, "judgment matrix entries must be positive and finite");
      }
      if (std::abs(a * (*this)(j, i) - 1.0) > 1e-12) {
        throw Error(ErrorKind::argument, "judgment matrix is not reciprocal at (" + std::to_string(i) +
                                             ", " + std::to_string(j) + ")");
      }
    }
  }
}

JudgmentMatrix JudgmentMatrix::from_upper(std::size_t order, std::span<const double> upper) {
  if (upper.size() != order * (order - 1) / 2) {
    throw Error(ErrorKind::argument, "upper triangle of order " + std::to_string(order) + " needs " +
                                         std::to_string(order * (order - 1) / 2) + " entries");
  }
  std::vector<double> entries(order * order, 1.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j) {
      entries[i * order + j] = upper[k];
      entries[j * order + i] = 1.0 / upper[k];
      ++k;
    }
  }
  return JudgmentMatrix(order, std::move(entries));
}

double random_index(std::size_t order) {
  if (order < 1 || order > kRandomIndex.size()) {
    throw Error(ErrorKind::argument, "no random index for matrix order " + std::to_string(order));
  }
  return kRandomIndex[order - 1];
}

EigenResult principal_eigen(const JudgmentMatrix& matrix, PowerIterationOptions options,
                            std::span<const double> start) {
  const std::size_t n = matrix.order();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  if (!start.empty()) {
    if (start.size() != n) throw Error(ErrorKind::argument, "start vector has the wrong length");
    const double sum = std::accumulate(start.begin(), start.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(start[i] > 0.0)) throw Error(ErrorKind::argument, "start vector must be positive");
      x[i] = start[i] / sum;
    }
  }

  std::vector<double> y(n);
  auto multiply = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += matrix(i, j) * x[j];
      y[i] = acc;
    }
  };

  double previous = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  EigenResult result;
  for (int it = 1; it <= options.max_iterations; ++it) {
    multiply();
    const double xy = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    const double xx = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    const double rayleigh = xy / xx;
    const double sum = std::accumulate(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / sum;
    result.iterations = it;
    if (std::abs(rayleigh - previous) < options.tolerance) {
      converged = true;
      break;
    }
    previous = rayleigh;
  }
  if (!converged) {
    throw Error(ErrorKind::numeric, "power iteration did not converge in " +
                                        std::to_string(options.max_iterations) + " steps");
  }

  // With sum(x) = 1, sum(Jx) is the eigenvalue.
  multiply();
  result.lambda_max = std::accumulate(y.begin(), y.end(), 0.0);
  result.weights = std::move(x);
  if (n >= 3) {
    result.ci = (result.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
    result.cr = result.ci / random_index(n);
  } else if (n == 2) {
    result.ci = result.lambda_max - 2.0;
  }
  return result;
}

bool consistency_gate(const EigenResult& result) noexcept { return result.cr < kConsistencyThreshold; }

// ---------------------------------------------------------------------------
// Sensitivity projects

namespace {
constexpr std::array<int, 6> kSlopeElevation{4, 5, 6, 7, 8, 9};
constexpr std::array<int, 2> kSlopeDistanceDen{2, 3};
constexpr std::array<int, 4> kElevationDistanceDen{3, 4, 5, 6};

template <std::size_t N>
int index_of(const std::array<int, N>& values, int v) noexcept {
  for (std::size_t i = 0; i < N; ++i) {
    if (values[i] == v) return static_cast<int>(i);
  }
  return -1;
}
}  // namespace

bool ProjectDefinition::valid() const noexcept {
  return index_of(kSlopeElevation, slope_vs_elevation) >= 0 &&
         index_of(kSlopeDistanceDen, slope_vs_distance_den) >= 0 &&
         index_of(kElevationDistanceDen, elevation_vs_distance_den) >= 0;
}

int ProjectDefinition::number() const noexcept {
  if (!valid()) return 0;
  return 8 * index_of(kSlopeElevation, slope_vs_elevation) +
         4 * index_of(kSlopeDistanceDen, slope_vs_distance_den) +
         index_of(kElevationDistanceDen, elevation_vs_distance_den) + 1;
}

ProjectDefinition project_from_number(int number) {
  if (number < 1 || number > static_cast<int>(kProjectCount)) {
    throw Error(ErrorKind::argument, "project number must be in 1..48, got " + std::to_string(number));
  }
  const int k = number - 1;
  return {kSlopeElevation[static_cast<std::size_t>(k / 8)],
          kSlopeDistanceDen[static_cast<std::size_t>((k / 4) % 2)],
          kElevationDistanceDen[static_cast<std::size_t>(k % 4)]};
}

std::vector<ProjectDefinition> enumerate_projects() {
  std::vector<ProjectDefinition> out;
  out.reserve(kProjectCount);
  for (int se : kSlopeElevation) {
    for (int sr : kSlopeDistanceDen) {
      for (int er : kElevationDistanceDen) out.push_back({se, sr, er});
    }
  }
  return out;
}

JudgmentMatrix build_matrix(const ProjectDefinition& project) {
  if (!project.valid()) throw Error(ErrorKind::argument, "invalid project definition");
  // Upper triangle, row-major: S-E, S-R, S-H, S-L, E-R, E-H, E-L, R-H, R-L, H-L.
  const std::array<double, 10> upper{
      project.s_e(), project.s_r(), 3.0, 1.0 / 2.0,  //
      project.e_r(), 1.0 / 2.0, 1.0 / 4.0,           //
      3.0, 1.0,                                      //
      1.0 / 3.0,
  };
  return JudgmentMatrix::from_upper(5, upper);
}

double round_decimals(double value, int digits) noexcept {
  const double scale = std::pow(10.0, digits);
  return std::round(value * scale) / scale;
}

std::string saaty_fraction(int numerator, int denominator) {
  if (denominator == 1) return std::to_string(numerator);
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

}  // namespace floodrisk
