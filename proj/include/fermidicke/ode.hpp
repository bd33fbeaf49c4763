// ode.hpp — adaptive Dormand-Prince 5(4) integration onto a fixed output grid
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermidicke {

struct OdeOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 selects a heuristic first step
  double max_step = 0.0;      // 0 means unbounded
  std::int64_t max_steps = 20'000'000;
};

struct OdeStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  double last_step = 0.0;
};

namespace detail {

// Scaled RMS error norm over the embedded 4th/5th order difference.
template <class Vec>
double error_norm(const Vec& err, const Vec& y_old, const Vec& y_new,
                  double rtol, double atol) {
  double acc = 0.0;
  const std::int64_t n = static_cast<std::int64_t>(err.size());
  for (std::int64_t i = 0; i < n; ++i) {
    const double sc =
        atol + rtol * std::max(std::abs(y_old[i]), std::abs(y_new[i]));
    const double q = std::abs(err[i]) / sc;
    acc += q * q;
  }
  return std::sqrt(acc / double(err.size()));
}

}  // namespace detail

// Integrates y' = rhs(t, y) across a strictly increasing time grid, calling
// on_checkpoint(index, t, y) at every grid point (including the first) with
// the grid time hit exactly by step clamping.  post_step(y) runs after each
// accepted step and returns true when it modified y, which forces a fresh
// derivative instead of the first-same-as-last reuse.
template <class Vec, class Rhs, class Checkpoint, class PostStep>
OdeStats integrate_grid(Rhs&& rhs, Vec y, const std::vector<double>& t_grid,
                        const OdeOptions& opt, Checkpoint&& on_checkpoint,
                        PostStep&& post_step) {
  if (t_grid.size() < 1)
    throw std::invalid_argument("integrate_grid: empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("integrate_grid: grid must strictly increase");
  if (!(opt.rtol > 0.0) || !(opt.atol > 0.0))
    throw std::invalid_argument("integrate_grid: tolerances must be positive");

  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;

  const double eps = std::numeric_limits<double>::epsilon();
  double t = t_grid.front();
  on_checkpoint(std::size_t(0), t, y);

  std::array<Vec, 7> k;
  for (auto& ki : k) ki = Vec(y.size());
  Vec y_new(y.size()), err(y.size());
  rhs(t, y, k[0]);
  bool k0_fresh = true;

  // Heuristic first step from the scaled sizes of the state and derivative.
  double h = opt.initial_step;
  if (!(h > 0.0)) {
    const double d0 = detail::error_norm(y, y, y, opt.rtol, opt.atol);
    const double d1 = detail::error_norm(k[0], y, y, opt.rtol, opt.atol);
    const double span = t_grid.back() - t_grid.front();
    h = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-6 * span;
    h = std::min(h, span);
  }

  OdeStats stats;
  for (std::size_t target_idx = 1; target_idx < t_grid.size(); ++target_idx) {
    const double target = t_grid[target_idx];
    while (t < target) {
      if (stats.accepted + stats.rejected >= opt.max_steps)
        throw std::runtime_error("integrate_grid: exceeded max step count at t=" +
                                 std::to_string(t));
      double h_try = opt.max_step > 0.0 ? std::min(h, opt.max_step) : h;
      bool clamped = false;
      if (t + h_try * 1.0001 >= target) {
        h_try = target - t;
        clamped = true;
      }
      if (!(h_try > 16.0 * eps * std::max(std::abs(t), 1.0))) {
        // The remaining sliver is below time resolution; declare the target
        // reached rather than stepping through denormal step sizes.
        if (clamped) { t = target; break; }
        throw std::runtime_error("integrate_grid: step size underflow at t=" +
                                 std::to_string(t));
      }

      if (!k0_fresh) { rhs(t, y, k[0]); k0_fresh = true; }
      const double hs = h_try;
      y_new = y + hs * a21 * k[0];
      rhs(t + c2 * hs, y_new, k[1]);
      y_new = y + hs * (a31 * k[0] + a32 * k[1]);
      rhs(t + c3 * hs, y_new, k[2]);
      y_new = y + hs * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
      rhs(t + c4 * hs, y_new, k[3]);
      y_new = y + hs * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
      rhs(t + c5 * hs, y_new, k[4]);
      y_new = y + hs * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] +
                        a65 * k[4]);
      rhs(t + hs, y_new, k[5]);
      y_new = y + hs * (b1 * k[0] + b3 * k[2] + b4 * k[3] + b5 * k[4] + b6 * k[5]);
      rhs(t + hs, y_new, k[6]);
      err = hs * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] +
                  e7 * k[6]);

      const double en = detail::error_norm(err, y, y_new, opt.rtol, opt.atol);
      if (en <= 1.0) {
        ++stats.accepted;
        stats.last_step = hs;
        t = clamped ? target : t + hs;
        y.swap(y_new);
        k[0].swap(k[6]);  // first-same-as-last
        k0_fresh = true;
        if (post_step(y)) k0_fresh = false;
        const double fac =
            en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        h = hs * fac;
      } else {
        ++stats.rejected;
        h = hs * std::max(0.2, 0.9 * std::pow(en, -0.2));
      }
    }
    on_checkpoint(target_idx, t, y);
  }
  return stats;
}

// Convenience overload without a post-step hook.
template <class Vec, class Rhs, class Checkpoint>
OdeStats integrate_grid(Rhs&& rhs, Vec y, const std::vector<double>& t_grid,
                        const OdeOptions& opt, Checkpoint&& on_checkpoint) {
  return integrate_grid(std::forward<Rhs>(rhs), std::move(y), t_grid, opt,
                        std::forward<Checkpoint>(on_checkpoint),
                        [](Vec&) { return false; });
}

// Uniform grid helper: points samples from t0 to t1 inclusive.
inline std::vector<double> make_time_grid(double t0, double t1, int points) {
  if (points < 2) throw std::invalid_argument("make_time_grid: points >= 2");
  if (!(t1 > t0)) throw std::invalid_argument("make_time_grid: need t1 > t0");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = t0 + (t1 - t0) * double(i) / double(points - 1);
  g.back() = t1;
  return g;
}

}  // namespace fermidicke
