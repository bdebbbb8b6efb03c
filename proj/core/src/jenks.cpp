#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>
#include <string>

#include "floodrisk/risk.hpp"

namespace floodrisk {

int class_of(double value, std::span<const double> breaks) noexcept {
  int level = 1;
  for (double b : breaks) {
    if (b < value) ++level;
  }
  return level;
}

double classification_cost(std::span<const double> values, std::span<const double> breaks) {
  const std::size_t k = breaks.size() + 1;
  std::vector<double> sum(k, 0.0);
  std::vector<std::size_t> count(k, 0);
  for (double v : values) {
    const auto c = static_cast<std::size_t>(class_of(v, breaks) - 1);
    sum[c] += v;
    ++count[c];
  }
  double cost = 0.0;
  for (double v : values) {
    const auto c = static_cast<std::size_t>(class_of(v, breaks) - 1);
    const double d = v - sum[c] / static_cast<double>(count[c]);
    cost += d * d;
  }
  return cost;
}

JenksResult jenks_breaks(std::span<const double> values, int k, JenksOptions options) {
  if (k < 2) throw Error(ErrorKind::argument, "natural breaks needs k >= 2, got " + std::to_string(k));

  std::vector<double> data;
  data.reserve(values.size());
  for (double v : values) {
    if (std::isfinite(v)) data.push_back(v);
  }

  JenksResult result;
  if (data.size() > options.max_values) {
    std::vector<double> sample;
    sample.reserve(options.max_values);
    std::mt19937_64 rng(options.seed);
    std::sample(data.begin(), data.end(), std::back_inserter(sample), options.max_values, rng);
    data = std::move(sample);
    result.subsampled = true;
    result.seed = options.seed;
  }
  result.sample_size = data.size();
  std::sort(data.begin(), data.end());

  // Distinct values with multiplicities; classes never split equal values.
  std::vector<double> x;
  std::vector<double> w;
  for (double v : data) {
    if (x.empty() || v != x.back()) {
      x.push_back(v);
      w.push_back(1.0);
    } else {
      w.back() += 1.0;
    }
  }
  const std::size_t u = x.size();
  const auto classes = static_cast<std::size_t>(k);
  if (u < classes) {
    throw Error(ErrorKind::classification, "natural breaks with k=" + std::to_string(k) +
                                               " needs at least " + std::to_string(k) +
                                               " distinct values, found " + std::to_string(u));
  }

  // Prefix sums on mean-centred values.
  double mean = 0.0;
  for (std::size_t i = 0; i < u; ++i) mean += w[i] * x[i];
  mean /= static_cast<double>(data.size());
  std::vector<double> pw(u + 1, 0.0), ps(u + 1, 0.0), pq(u + 1, 0.0);
  for (std::size_t i = 0; i < u; ++i) {
    const double c = x[i] - mean;
    pw[i + 1] = pw[i] + w[i];
    ps[i + 1] = ps[i] + w[i] * c;
    pq[i + 1] = pq[i] + w[i] * c * c;
  }
  // Squared deviation of groups [a, b] inclusive.
  auto ssd = [&](std::size_t a, std::size_t b) {
    const double sw = pw[b + 1] - pw[a];
    const double s = ps[b + 1] - ps[a];
    return std::max(0.0, (pq[b + 1] - pq[a]) - s * s / sw);
  };

  // best[j][i]: optimal cost of splitting groups i..u-1 into j + 1 classes.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(classes, std::vector<double>(u, inf));
  for (std::size_t i = 0; i < u; ++i) best[0][i] = ssd(i, u - 1);
  for (std::size_t j = 1; j < classes; ++j) {
    // Need j more classes after the first, so i <= u - j - 1.
    for (std::size_t i = 0; i + j < u; ++i) {
      double m = inf;
      for (std::size_t e = i; e + j < u; ++e) m = std::min(m, ssd(i, e) + best[j - 1][e + 1]);
      best[j][i] = m;
    }
  }

  // Forward reconstruction taking the earliest break among (near-)equal optima.
  const double tie = 1e-12 * std::max(1.0, best[classes - 1][0]);
  std::size_t start = 0;
  for (std::size_t j = classes - 1; j >= 1; --j) {
    const double target = best[j][start];
    std::size_t chosen = start;
    for (std::size_t e = start; e + j < u; ++e) {
      if (ssd(start, e) + best[j - 1][e + 1] <= target + tie) {
        chosen = e;
        break;
      }
    }
    result.breaks.push_back(x[chosen]);
    start = chosen + 1;
  }
  result.cost = classification_cost(data, result.breaks);
  return result;
}

}  // namespace floodrisk
