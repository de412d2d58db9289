#pragma once

// Closed-form Laplace functionals and densities of the local time at 0 and of
// the occupation times above/below 0 for Brownian motion indexed by the
// Brownian tree, plus the root solver for the joint law of
// (L^0, sigma_+, sigma_-).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "snakelaws/errors.hpp"
#include "snakelaws/quadrature.hpp"

namespace snakelaws::laws {

using std::numbers::pi;

/// Laplace-conjugate rates for (L^0, sigma_+, sigma_-).
struct RatePoint {
  double lambda = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
};

/// A Laplace-functional value and the defect of its defining equation
/// (zero for direct closed forms).
struct LawValue {
  double value = 0.0;
  double residual = 0.0;
};

namespace detail {

inline void require_nonneg(double x, const char* what) {
  if (!(std::isfinite(x) && x >= 0.0)) throw DomainError(std::string(what) + " must be finite and >= 0");
}
inline void require_pos(double x, const char* what) {
  if (!(std::isfinite(x) && x > 0.0)) throw DomainError(std::string(what) + " must be finite and > 0");
}

inline const double kCbrt3Half = std::cbrt(3.0) / 2.0;  // 3^(1/3)/2

}  // namespace detail

/// n(1 - exp(-lambda sigma)) = sqrt(lambda / 2).
inline double duration_laplace(double lambda) {
  detail::require_nonneg(lambda, "duration_laplace: lambda");
  return std::sqrt(lambda / 2.0);
}

/// N_0(1 - exp(-lambda L^0)) = 3^(1/3)/2 lambda^(2/3).
inline double local_time_laplace(double lambda) {
  detail::require_nonneg(lambda, "local_time_laplace: lambda");
  return detail::kCbrt3Half * std::cbrt(lambda * lambda);
}

/// Density of L^0 under N_0: 3^(-2/3) / Gamma(1/3) l^(-5/3).
inline double local_time_density(double ell) {
  detail::require_pos(ell, "local_time_density: ell");
  return std::pow(3.0, -2.0 / 3.0) / std::tgamma(1.0 / 3.0) * std::pow(ell, -5.0 / 3.0);
}

/// h(v) = sqrt(sqrt(2 mu1) + v)(2v - sqrt(2 mu1)) + sqrt(sqrt(2 mu2) + v)(2v - sqrt(2 mu2)).
inline double h_mu(double v, double mu1, double mu2) {
  detail::require_nonneg(v, "h_mu: v");
  detail::require_nonneg(mu1, "h_mu: mu1");
  detail::require_nonneg(mu2, "h_mu: mu2");
  const double c1 = std::sqrt(2.0 * mu1), c2 = std::sqrt(2.0 * mu2);
  return std::sqrt(c1 + v) * (2.0 * v - c1) + std::sqrt(c2 + v) * (2.0 * v - c2);
}

/// dh/dv = sum over c in {sqrt(2 mu1), sqrt(2 mu2)} of (6v + 3c) / (2 sqrt(c + v)).
inline double h_mu_derivative(double v, double mu1, double mu2) {
  const double c1 = std::sqrt(2.0 * mu1), c2 = std::sqrt(2.0 * mu2);
  auto term = [v](double c) { return c + v > 0.0 ? (6.0 * v + 3.0 * c) / (2.0 * std::sqrt(c + v)) : 0.0; };
  return term(c1) + term(c2);
}

/// N_0(1 - exp(-mu1 sigma_+ - mu2 sigma_-)) = sqrt2/3 (mu1^(3/2) - mu2^(3/2)) / (mu1 - mu2),
/// with the limit sqrt(mu/2) on the diagonal.
inline double pair_laplace(double mu1, double mu2) {
  detail::require_nonneg(mu1, "pair_laplace: mu1");
  detail::require_nonneg(mu2, "pair_laplace: mu2");
  const double scale = std::max({mu1, mu2, 1.0});
  if (std::abs(mu1 - mu2) <= 1e-9 * scale) {
    // Second-order expansion about the midpoint keeps the near-diagonal error O(d^2).
    const double m = 0.5 * (mu1 + mu2), d = mu1 - mu2;
    if (m == 0.0) return 0.0;
    return std::sqrt(m / 2.0) * (1.0 - d * d / (96.0 * m * m));
  }
  return std::sqrt(2.0) / 3.0 * (mu1 * std::sqrt(mu1) - mu2 * std::sqrt(mu2)) / (mu1 - mu2);
}

/// Unique v >= 0 with h(v) = sqrt6 lambda. Bracketed bisection with Newton
/// steps kept inside the bracket.
inline LawValue solve_triple(const RatePoint& p) {
  detail::require_nonneg(p.lambda, "solve_triple: lambda");
  detail::require_nonneg(p.mu_plus, "solve_triple: mu_plus");
  detail::require_nonneg(p.mu_minus, "solve_triple: mu_minus");
  const double mu1 = p.mu_plus, mu2 = p.mu_minus;
  const double target = std::sqrt(6.0) * p.lambda;
  const double tol = 1e-12 * std::max(1.0, target);
  auto g = [&](double v) { return h_mu(v, mu1, mu2) - target; };

  double lo = 0.0;
  double hi = std::max(1.0, std::pow((target + std::pow(std::sqrt(2.0 * mu1), 1.5) + std::pow(std::sqrt(2.0 * mu2), 1.5)) / 2.0,
                                     2.0 / 3.0));
  for (int grow = 0; g(hi) < 0.0; ++grow) {
    if (grow > 200 || !std::isfinite(hi)) throw NumericError("solve_triple: failed to bracket the root");
    lo = hi;
    hi *= 2.0;
  }
  if (g(lo) >= 0.0) return {lo, std::abs(g(lo))};

  double v = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double gv = g(v);
    if (std::abs(gv) <= tol) return {v, std::abs(gv)};
    if (gv < 0.0) lo = v; else hi = v;
    const double d = h_mu_derivative(v, mu1, mu2);
    double next = d > 0.0 ? v - gv / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == v || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      // Bracket collapsed to adjacent doubles; keep the better endpoint.
      const double glo = std::abs(g(lo)), ghi = std::abs(g(hi));
      const double best = glo < ghi ? lo : hi;
      return {best, std::min(glo, ghi)};
    }
    v = next;
  }
  return {v, std::abs(g(v))};
}

/// Argument a = sqrt3 lambda / (2 (2 mu)^(3/4)) selecting the trigonometric
/// (a <= 1) or hyperbolic (a >= 1) branch.
inline double lt_sigma_branch_argument(double lambda, double mu) {
  return std::sqrt(3.0) * lambda / (2.0 * std::pow(2.0 * mu, 0.75));
}

/// N_0(1 - exp(-lambda L^0 - mu sigma)) in closed form.
inline double lt_sigma_laplace(double lambda, double mu) {
  detail::require_nonneg(lambda, "lt_sigma_laplace: lambda");
  detail::require_pos(mu, "lt_sigma_laplace: mu");
  const double a = lt_sigma_branch_argument(lambda, mu);
  const double s = std::sqrt(2.0 * mu);
  if (std::abs(a - 1.0) <= 1e-10) return s;
  if (a < 1.0) return s * std::cos(2.0 / 3.0 * std::acos(a));
  return s * std::cosh(2.0 / 3.0 * std::acosh(a));
}

/// Density (2 sqrt(2 pi))^(-1) (s1 + s2)^(-5/2) of (sigma_+, sigma_-) under N_0.
inline double pair_density(double s1, double s2) {
  detail::require_pos(s1, "pair_density: s1");
  detail::require_pos(s2, "pair_density: s2");
  return std::pow(s1 + s2, -2.5) / (2.0 * std::sqrt(2.0 * pi));
}

/// Density (3 sqrt(2 pi))^(-1) s^(-3/2) of sigma_+ (or sigma_-) under N_0.
inline double pair_marginal_density(double s) {
  detail::require_pos(s, "pair_marginal_density: s");
  return std::pow(s, -1.5) / (3.0 * std::sqrt(2.0 * pi));
}

/// N_x(1 - exp(-lambda Z_y)) = (lambda^(-1/2) + d sqrt(2/3))^(-2), d = |y - x|.
inline double exit_laplace(double lambda, double d) {
  detail::require_pos(lambda, "exit_laplace: lambda");
  detail::require_nonneg(d, "exit_laplace: d");
  const double t = 1.0 / std::sqrt(lambda) + d * std::sqrt(2.0 / 3.0);
  return 1.0 / (t * t);
}

/// N_x(Z_y > 0) = 3 / (2 d^2).
inline double hitting_prob(double d) {
  detail::require_pos(d, "hitting_prob: d");
  return 1.5 / (d * d);
}

/// N_0(1 - exp(-lambda L^a)) = 3^(1/3)/2 (lambda^(-1/3) + 3^(-1/3) |a|)^(-2).
inline double lt_level_laplace(double lambda, double a) {
  detail::require_pos(lambda, "lt_level_laplace: lambda");
  if (!std::isfinite(a)) throw DomainError("lt_level_laplace: a must be finite");
  const double t = 1.0 / std::cbrt(lambda) + std::abs(a) / std::cbrt(3.0);
  return detail::kCbrt3Half / (t * t);
}

/// E[exp(-lambda L^a)] for super-Brownian motion started at alpha delta_0.
inline double sbm_local_time_laplace(double lambda, double a, double alpha) {
  detail::require_pos(alpha, "sbm_local_time_laplace: alpha");
  return std::exp(-alpha * lt_level_laplace(lambda, a));
}

/// E[exp(-mu1 R_+ - mu2 R_-)] for super-Brownian motion started at alpha delta_0.
inline double sbm_pair_laplace(double mu1, double mu2, double alpha) {
  detail::require_pos(alpha, "sbm_pair_laplace: alpha");
  return std::exp(-alpha * pair_laplace(mu1, mu2));
}

/// coth^-1(y) = log((y + 1)/(y - 1)) / 2 for y > 1.
inline double acoth(double y) {
  if (!(y > 1.0)) throw DomainError("acoth: argument must exceed 1");
  return 0.5 * std::log((y + 1.0) / (y - 1.0));
}

/// N_x(1 - exp(-mu Y_0 - theta Z_0)) for theta >= sqrt(mu/2).
inline double y0_z0_laplace(double x, double mu, double theta) {
  detail::require_nonneg(x, "y0_z0_laplace: x");
  detail::require_pos(mu, "y0_z0_laplace: mu");
  const double base = std::sqrt(mu / 2.0);
  if (!std::isfinite(theta) || theta < base) throw DomainError("y0_z0_laplace: theta must be >= sqrt(mu/2)");
  const double y = std::sqrt(2.0 / 3.0 + std::sqrt(2.0 / mu) * theta / 3.0);
  if (theta == base || !(y > 1.0)) return base;
  if (x == 0.0) return theta;
  const double c = 1.0 / std::tanh(std::pow(2.0 * mu, 0.25) * x + acoth(y));
  return base * (3.0 * c * c - 2.0);
}

/// N_x(1 - exp(-lambda L^0 - mu sigma)), composed from y0_z0_laplace and
/// lt_sigma_laplace.
inline double lt_sigma_laplace_from_x(double x, double lambda, double mu) {
  return y0_z0_laplace(x, mu, lt_sigma_laplace(lambda, mu));
}

/// F(mu1, mu2, x) = [(1 + sqrt(2 mu1 x)) e^{-sqrt(2 mu1 x)} + (1 + sqrt(2 mu2 x)) e^{-sqrt(2 mu2 x)}] / 2.
inline double excursion_sign_kernel(double mu1, double mu2, double x) {
  detail::require_nonneg(mu1, "excursion_sign_kernel: mu1");
  detail::require_nonneg(mu2, "excursion_sign_kernel: mu2");
  detail::require_pos(x, "excursion_sign_kernel: x");
  auto k = [](double b) {
    const double r = std::sqrt(2.0 * b);
    return (1.0 + r) * std::exp(-r);
  };
  return 0.5 * (k(mu1 * x) + k(mu2 * x));
}

/// phi(u) = sqrt(8/3) u^(3/2), the branching mechanism of the exit-measure CSBP.
inline double branching_mechanism(double u) {
  detail::require_nonneg(u, "branching_mechanism: u");
  return std::sqrt(8.0 / 3.0) * u * std::sqrt(u);
}

/// Levy density sqrt(3/(2 pi)) x^(-5/2) of the spectrally positive 3/2-stable process.
inline double kappa_density(double x) { return std::sqrt(3.0 / (2.0 * pi)) * std::pow(x, -2.5); }

/// int kappa(dx) (e^{-vx} - 1 + vx), by quadrature.
inline double phi_by_quadrature(double v) {
  detail::require_pos(v, "phi_by_quadrature: v");
  auto f = [v](double x) {
    const double vx = v * x;
    // e^{-y} - 1 + y loses all digits for small y; use the series there.
    const double g = vx < 1e-3 ? vx * vx * (0.5 - vx / 6.0 + vx * vx / 24.0) : std::expm1(-vx) + vx;
    return kappa_density(x) * g;
  };
  return quadrature::integrate_half_line(f, {2.0, 2.0}).value;
}

/// int kappa(dx) e^{-vx} (F(mu1, mu2, x^2) - 1), by quadrature.
inline double kappa_sign_integral(double v, double mu1, double mu2) {
  auto f = [=](double x) {
    auto km1 = [](double r) {
      // (1 + r) e^{-r} - 1, with its series for small r.
      return r < 1e-3 ? -r * r * (0.5 - r / 3.0 + r * r / 8.0) : (1.0 + r) * std::exp(-r) - 1.0;
    };
    const double r1 = std::sqrt(2.0 * mu1) * x, r2 = std::sqrt(2.0 * mu2) * x;
    return kappa_density(x) * std::exp(-v * x) * 0.5 * (km1(r1) + km1(r2));
  };
  return quadrature::integrate_half_line(f, {2.0, 2.0}).value;
}

/// phi(v) + int kappa(dx) e^{-vx}(F(mu1, mu2, x^2) - 1) - h(v)/sqrt6, with the
/// integral evaluated numerically.
inline double verify_h_integral(double v, double mu1, double mu2) {
  detail::require_pos(v, "verify_h_integral: v");
  detail::require_nonneg(mu1, "verify_h_integral: mu1");
  detail::require_nonneg(mu2, "verify_h_integral: mu2");
  return branching_mechanism(v) + kappa_sign_integral(v, mu1, mu2) - h_mu(v, mu1, mu2) / std::sqrt(6.0);
}

/// int (1 - e^{-lambda l}) local_time_density(l) dl, by quadrature.
inline double local_time_laplace_by_quadrature(double lambda) {
  detail::require_pos(lambda, "local_time_laplace_by_quadrature: lambda");
  auto f = [lambda](double ell) { return -std::expm1(-lambda * ell) * local_time_density(ell); };
  return quadrature::integrate_half_line(f, {3.0, 3.0}).value;
}

/// Double integral of pair_density against (1 - e^{-mu1 s1 - mu2 s2}),
/// nested adaptive quadrature in (s, t) with s1 = s t, s2 = s (1 - t).
inline double pair_laplace_by_quadrature(double mu1, double mu2) {
  detail::require_nonneg(mu1, "pair_laplace_by_quadrature: mu1");
  detail::require_nonneg(mu2, "pair_laplace_by_quadrature: mu2");
  const quadrature::Tolerance inner_tol{1e-15, 1e-12, 20000};
  auto outer = [&](double s) {
    auto inner = [&](double t) {
      const double s1 = s * t, s2 = s * (1.0 - t);
      if (s1 <= 0.0 || s2 <= 0.0) return 0.0;
      return pair_density(s1, s2) * -std::expm1(-mu1 * s1 - mu2 * s2);
    };
    return s * quadrature::integrate(inner, 0.0, 1.0, inner_tol).value;  // Jacobian of (s, t) -> (s1, s2)
  };
  return quadrature::integrate_half_line(outer, {2.0, 2.0}, {1e-13, 1e-10, 20000}).value;
}

}  // namespace snakelaws::laws
