#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "catalog.hpp"
#include "grid.hpp"

namespace fracbv {

struct BoxLevel {
  int j = 0;
  double delta = 0.0;  // box side in x-units, (b-a) * 2^-j
  long count = 0;
};

// Box counts of the sampled graph, rescaled to the unit square. Level j
// splits the x-range into 2^j columns of n/2^j sample intervals each
// (column endpoints shared) and counts delta-boxes per column as
// floor(max/delta) - floor(min/delta) + 1 with delta = 2^-j. A flat graph
// rescales to all zeros and counts one box per column.
inline std::vector<BoxLevel> box_counts(const SampledFunction& f, int j_min,
                                        int j_max) {
  if (j_min < 0 || j_max < j_min)
    throw std::invalid_argument("box_counts: need 0 <= j_min <= j_max");
  if (j_max >= 30) throw std::invalid_argument("box_counts: j_max too large");
  const long n = f.grid.n;
  const long cols_max = 1L << j_max;
  if (n % cols_max != 0)
    throw std::invalid_argument(
        "box_counts: grid size must be divisible by 2^j_max");
  if (n < 4 * cols_max)
    throw std::invalid_argument(
        "box_counts: need at least 4 sample intervals per column at the "
        "finest level");

  double ymin = f.values[0], ymax = f.values[0];
  for (double v : f.values) {
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  }
  const double span = ymax - ymin;
  std::vector<double> y(f.values.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = span > 0.0 ? (f.values[i] - ymin) / span : 0.0;

  std::vector<BoxLevel> out;
  for (int j = j_min; j <= j_max; ++j) {
    const long cols = 1L << j;
    const long per = n / cols;
    const double inv_delta = static_cast<double>(cols);
    long total = 0;
    for (long c = 0; c < cols; ++c) {
      const std::size_t lo = static_cast<std::size_t>(c * per);
      const std::size_t hi = static_cast<std::size_t>((c + 1) * per);
      double cmin = y[lo], cmax = y[lo];
      for (std::size_t i = lo + 1; i <= hi; ++i) {
        cmin = std::min(cmin, y[i]);
        cmax = std::max(cmax, y[i]);
      }
      total += static_cast<long>(std::floor(cmax * inv_delta)) -
               static_cast<long>(std::floor(cmin * inv_delta)) + 1;
    }
    out.push_back(BoxLevel{j, (f.grid.b - f.grid.a) * std::ldexp(1.0, -j),
                           total});
  }
  return out;
}

struct BoxDimEstimate {
  std::vector<BoxLevel> levels;  // everything computed, coarsest first
  int dropped = 0;               // coarsest levels excluded from the fit
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Least-squares slope of log(count) against log(1/delta). The coarsest
// levels see too few boxes to be in the scaling regime, so drop_coarsest of
// them are excluded from the fit (but still reported).
inline BoxDimEstimate box_dimension(const SampledFunction& f, int j_min,
                                    int j_max, int drop_coarsest = 2) {
  if (drop_coarsest < 0)
    throw std::invalid_argument("box_dimension: drop_coarsest must be >= 0");
  BoxDimEstimate est;
  est.levels = box_counts(f, j_min, j_max);
  est.dropped = drop_coarsest;
  if (est.levels.size() < static_cast<std::size_t>(drop_coarsest) + 3)
    throw std::invalid_argument(
        "box_dimension: need at least 3 levels after dropping the coarsest");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t first = static_cast<std::size_t>(drop_coarsest);
  const std::size_t m = est.levels.size() - first;
  for (std::size_t i = first; i < est.levels.size(); ++i) {
    const double x = std::log(1.0 / est.levels[i].delta);
    const double y = std::log(static_cast<double>(est.levels[i].count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  est.slope = (m * sxy - sx * sy) / denom;
  est.intercept = (sy - est.slope * sx) / m;

  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / m;
  for (std::size_t i = first; i < est.levels.size(); ++i) {
    const double x = std::log(1.0 / est.levels[i].delta);
    const double y = std::log(static_cast<double>(est.levels[i].count));
    const double fit = est.slope * x + est.intercept;
    ss_res += (y - fit) * (y - fit);
    ss_tot += (y - ybar) * (y - ybar);
  }
  est.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return est;
}

}  // namespace fracbv
