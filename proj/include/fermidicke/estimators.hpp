// estimators.hpp — scalar summaries extracted from trajectories
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fermidicke {

// Least-squares exponential decay rate over the tail half of a series:
// fits log v = a - rate * t on the strictly positive samples with index
// >= size/2 and returns the rate.  NaN when fewer than three usable points
// remain, e.g. because the series already hit zero.
inline double fit_decay_rate(const std::vector<double>& t,
                             const std::vector<double>& v) {
  if (t.size() != v.size())
    throw std::invalid_argument("fit_decay_rate: length mismatch");
  const std::size_t lo = t.size() / 2;
  double st = 0, sy = 0, stt = 0, sty = 0;
  std::size_t m = 0;
  for (std::size_t i = lo; i < t.size(); ++i) {
    if (!(v[i] > 0.0)) continue;
    const double y = std::log(v[i]);
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
    ++m;
  }
  if (m < 3) return std::numeric_limits<double>::quiet_NaN();
  const double denom = double(m) * stt - st * st;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return -(double(m) * sty - st * sy) / denom;
}

// Estimate of the collective coupling g sqrt(N) from the first local minimum
// of the bright-mode population: an undamped start oscillates as
// cos^2(g sqrt(N) t), whose first minimum sits at t = pi / (2 g sqrt(N)).
// The minimum is refined with a parabola through the three bracketing
// samples.  NaN when no interior minimum exists.
inline double estimate_collective_frequency(const std::vector<double>& t,
                                            const std::vector<double>& nc) {
  if (t.size() != nc.size())
    throw std::invalid_argument("estimate_collective_frequency: length mismatch");
  for (std::size_t i = 1; i + 1 < nc.size(); ++i) {
    if (nc[i] < nc[i - 1] && nc[i] <= nc[i + 1]) {
      const double y0 = nc[i - 1], y1 = nc[i], y2 = nc[i + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      double tstar = t[i];
      if (denom > 0.0) {
        const double shift = 0.5 * (y0 - y2) / denom;  // in index units
        const double h = 0.5 * (t[i + 1] - t[i - 1]);
        tstar += shift * h;
      }
      if (!(tstar > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      return 0.5 * std::numbers::pi / tstar;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace fermidicke
