#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "snakelaws/errors.hpp"

namespace snakelaws::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

struct Tolerance {
  double abs = 1e-13;
  double rel = 1e-11;
  int max_intervals = 20000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  return {a, b, value, error};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Integrable endpoint singularities are tolerated because nodes never touch
/// the endpoints, but callers should remove them by substitution when
/// accuracy matters.
template <typename F>
Result integrate(const F& f, double a, double b, Tolerance tol = {}) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate: finite limits required");
  if (a == b) return {};
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod15(f, a, b));
  double value = heap.top().value, error = heap.top().error;
  int count = 1;
  while (error > std::max(tol.abs, tol.rel * std::abs(value))) {
    if (count >= tol.max_intervals) {
      throw NumericError("integrate: no convergence after " + std::to_string(count) +
                         " intervals (estimate " + std::to_string(value) + ", error " + std::to_string(error) + ")");
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Segment left = detail::gauss_kronrod15(f, worst.a, mid);
    const detail::Segment right = detail::gauss_kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
    if (!std::isfinite(value)) throw NumericError("integrate: non-finite integrand");
  }
  // Re-sum to shed accumulated rounding from the running updates.
  double total = 0.0, err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {total, err, count};
}

/// Power substitutions used on [0, inf): x = u^p on [0, 1] and x = u^-q on
/// [1, inf). Pick p to flatten an x^(1/p - 1) singularity at the origin and q
/// to flatten an x^(-1 - 1/q) tail.
struct PowerMap {
  double p = 2.0;
  double q = 2.0;
};

/// Integral of f over (0, inf) with the two substitutions of `map`.
template <typename F>
Result integrate_half_line(const F& f, PowerMap map = {}, Tolerance tol = {}) {
  const double p = map.p, q = map.q;
  auto near = [&](double u) {
    if (u <= 0.0) return 0.0;
    return f(std::pow(u, p)) * p * std::pow(u, p - 1.0);
  };
  auto far = [&](double u) {
    if (u <= 0.0) return 0.0;
    return f(std::pow(u, -q)) * q * std::pow(u, -q - 1.0);
  };
  const Result lo = integrate(near, 0.0, 1.0, tol);
  const Result hi = integrate(far, 0.0, 1.0, tol);
  return {lo.value + hi.value, lo.error + hi.error, lo.intervals + hi.intervals};
}

}  // namespace snakelaws::quadrature
