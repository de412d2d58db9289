#pragma once

// Path simulation of the spectrally positive 3/2-stable Levy process Y
// started at y0, its first hitting time T_0 of 0, and the Lamperti time change
// turning a stopped path of Y into the phi-CSBP X with int X dr = T_0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "snakelaws/errors.hpp"
#include "snakelaws/rng.hpp"
#include "snakelaws/samplers.hpp"

namespace snakelaws::levy {

struct PathConfig {
  double dt = 1e-4;      // Euler step (finest step when adaptive)
  double t_max = 100.0;  // censoring horizon
  double y0 = 1.0;
  /// 0 selects the plain Euler walk. A positive value g lets the step grow to
  /// the largest h with g * scale(h) <= Y, where scale(h) is the stable scale
  /// of an increment over h; such a step has negligible probability
  /// (below e^{-0.074 g^3}) of hiding a crossing. Increments stay exact.
  double adaptive_guard = 0.0;
};

inline void validate(const PathConfig& cfg) {
  if (!(cfg.dt > 0.0 && std::isfinite(cfg.dt))) throw DomainError("PathConfig: dt must be > 0");
  if (!(cfg.t_max >= cfg.dt && std::isfinite(cfg.t_max))) throw DomainError("PathConfig: need dt <= t_max");
  if (!(cfg.y0 > 0.0 && std::isfinite(cfg.y0))) throw DomainError("PathConfig: y0 must be > 0");
  if (!(cfg.adaptive_guard >= 0.0)) throw DomainError("PathConfig: adaptive_guard must be >= 0");
}

struct HittingSample {
  double t0 = 0.0;
  bool censored = false;
};

namespace detail {

inline double step_for(const PathConfig& cfg, double y, double t) {
  double h = cfg.dt;
  if (cfg.adaptive_guard > 0.0) {
    const double ratio = y / cfg.adaptive_guard;
    h = std::max(cfg.dt, std::sqrt(3.0) / 2.0 * ratio * std::sqrt(ratio));
  }
  return std::min(h, cfg.t_max - t);
}

}  // namespace detail

/// First time the walk Y_{k+1} = Y_k + increment(h) reaches (-inf, 0], with
/// linear interpolation inside the crossing step; censored at t_max.
inline HittingSample simulate_hitting_time(const PathConfig& cfg, RngStream& rng) {
  validate(cfg);
  double t = 0.0, y = cfg.y0;
  while (t < cfg.t_max) {
    const double h = detail::step_for(cfg, y, t);
    if (!(h > 0.0)) break;
    const double next = y + samplers::sample_spectrally_positive_increment(h, rng);
    if (next <= 0.0) return {t + h * y / (y - next), false};
    y = next;
    t += h;
  }
  return {cfg.t_max, true};
}

/// A stopped path: times t_k, values Y_k (Y_k > 0 before the last point) and
/// the hitting time.
struct StoppedPath {
  std::vector<double> times;
  std::vector<double> values;
  HittingSample hit;
};

/// Plain Euler path (adaptive_guard is ignored), stopped at the crossing.
inline StoppedPath simulate_path(const PathConfig& cfg, RngStream& rng) {
  validate(cfg);
  StoppedPath p;
  double t = 0.0, y = cfg.y0;
  p.times.push_back(t);
  p.values.push_back(y);
  while (t < cfg.t_max) {
    const double h = std::min(cfg.dt, cfg.t_max - t);
    if (!(h > 0.0)) break;
    const double next = y + samplers::sample_spectrally_positive_increment(h, rng);
    if (next <= 0.0) {
      p.hit = {t + h * y / (y - next), false};
      p.times.push_back(p.hit.t0);
      p.values.push_back(0.0);
      return p;
    }
    y = next;
    t += h;
    p.times.push_back(t);
    p.values.push_back(y);
  }
  p.hit = {cfg.t_max, true};
  return p;
}

/// Hitting times of one fine Euler path monitored on the nested grids
/// dt, dt/2, ..., dt/2^(levels-1); level l sees the sum of 2^(levels-1-l)
/// fine increments, so all levels share one source of randomness.
inline std::vector<HittingSample> simulate_hitting_time_levels(const PathConfig& cfg, std::size_t levels, RngStream& rng) {
  validate(cfg);
  if (levels < 1 || levels > 20) throw DomainError("simulate_hitting_time_levels: levels must be in [1, 20]");
  const double fine = cfg.dt / static_cast<double>(std::size_t{1} << (levels - 1));
  std::vector<HittingSample> out(levels, HittingSample{cfg.t_max, true});
  std::vector<double> y(levels, cfg.y0), t(levels, 0.0);
  std::vector<bool> done(levels, false);
  std::size_t remaining = levels;
  double y_fine = cfg.y0;
  for (std::size_t k = 1; remaining > 0; ++k) {
    const double now = static_cast<double>(k) * fine;
    if (now > cfg.t_max + 0.5 * fine) break;
    y_fine += samplers::sample_spectrally_positive_increment(fine, rng);
    for (std::size_t l = 0; l < levels; ++l) {
      const std::size_t stride = std::size_t{1} << (levels - 1 - l);
      if (done[l] || k % stride != 0) continue;
      const double h = now - t[l];
      if (y_fine <= 0.0) {
        out[l] = {t[l] + h * y[l] / (y[l] - y_fine), false};
        done[l] = true;
        --remaining;
      } else {
        y[l] = y_fine;
        t[l] = now;
      }
    }
  }
  return out;
}

/// Lamperti reconstruction of one path and its integral check.
struct LampertiCheck {
  double t0 = 0.0;
  double integral = 0.0;       // int_0^inf X_r dr on the uniform r-grid
  double extinction_r = 0.0;   // r at which X is absorbed at 0
  double rel_deviation = 0.0;  // |integral - t0| / t0
  bool nonnegative = true;
  bool absorbed = true;
  std::size_t grid_points = 0;
};

/// X_r = Y(theta_r) with d theta / dr = Y(theta): a step of length h at level
/// Y_k lasts h / Y_k in r. X is sampled at the midpoints of a uniform r-grid
/// with `grid_factor` points per Euler step and integrated.
inline LampertiCheck lamperti_check(const StoppedPath& path, double grid_factor = 4.0, std::size_t max_grid = 50'000'000) {
  if (path.hit.censored) throw DomainError("lamperti_check: censored path");
  const std::size_t steps = path.values.size() - 1;
  std::vector<double> r(steps + 1, 0.0);
  for (std::size_t k = 0; k < steps; ++k) r[k + 1] = r[k] + (path.times[k + 1] - path.times[k]) / path.values[k];
  LampertiCheck out;
  out.t0 = path.hit.t0;
  out.extinction_r = r[steps];
  const double want = std::ceil(grid_factor * static_cast<double>(steps));
  if (!(want >= 1.0) || want > static_cast<double>(max_grid)) {
    throw NumericError("lamperti_check: time-change grid exhausted (" + std::to_string(steps) + " steps, extinction r=" +
                       std::to_string(out.extinction_r) + ", grid limit " + std::to_string(max_grid) + ")");
  }
  const auto m = static_cast<std::size_t>(want);
  const double dr = out.extinction_r / static_cast<double>(m);
  std::size_t k = 0;
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double rj = (static_cast<double>(j) + 0.5) * dr;
    while (k + 1 < steps && r[k + 1] <= rj) ++k;
    const double x = path.values[k];
    if (x < 0.0) out.nonnegative = false;
    sum += x;
  }
  // Past extinction the reconstructed process is the absorbing state.
  const double after = path.values[steps];
  out.absorbed = after == 0.0;
  out.integral = sum * dr;
  out.grid_points = m;
  out.rel_deviation = std::abs(out.integral - out.t0) / out.t0;
  return out;
}

/// Rigorous upper bound on P(T > t) for E e^{-lT} = e^{-l^(2/3)}:
/// P(T > t) <= (1 - e^{-l^(2/3)}) / (1 - e^{-l t}) for every l > 0.
inline double stable_two_thirds_tail_bound(double t) {
  if (!(t > 0.0)) throw DomainError("stable_two_thirds_tail_bound: t must be > 0");
  double best = 1.0;
  for (int i = -400; i <= 200; ++i) {
    const double l = std::pow(10.0, i / 40.0) / t;
    best = std::min(best, -std::expm1(-std::pow(l, 2.0 / 3.0)) / -std::expm1(-l * t));
  }
  return best;
}

/// CSV row: t0,censored,seed
inline void write_csv_row(std::ostream& os, const HittingSample& h, const std::string& seed) {
  os.precision(17);
  os << h.t0 << ',' << (h.censored ? 1 : 0) << ',' << seed << '\n';
}

}  // namespace snakelaws::levy
