#pragma once

// Exact samplers for the laws identified for the local time at 0: the
// positive 2/3-stable T, the size-bias factor D, the conditional local-time
// laws, the excursion-duration kernel U and spectrally positive 3/2-stable
// increments.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <numbers>
#include <string>
#include <vector>

#include "snakelaws/errors.hpp"
#include "snakelaws/rng.hpp"

namespace snakelaws::samplers {

using std::numbers::pi;

/// Draws of one law, tagged with the law and the stream that produced them.
struct SampleBatch {
  std::vector<double> values;
  std::string law_tag;
  std::string seed_info;
};

/// One draw of the positive alpha-stable law with E[e^{-lT}] = e^{-l^alpha},
/// alpha in (0, 1), from a uniform angle and a unit exponential:
/// T = sin(alpha U) / sin(U)^(1/alpha) * (sin((1 - alpha) U) / E)^((1 - alpha)/alpha).
inline double sample_positive_stable(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("sample_positive_stable: alpha must lie in (0, 1)");
  const double u = pi * rng.uniform();
  const double e = rng.exponential();
  return std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha) *
         std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
}

namespace detail {
// Draws with T below this are redrawn so that T^(-1/2) stays finite.
inline constexpr double kStableFloor = 1e-300;

inline double stable_two_thirds_guarded(RngStream& rng, std::uint64_t* redraws) {
  for (;;) {
    const double t = sample_positive_stable(2.0 / 3.0, rng);
    if (t >= kStableFloor && std::isfinite(t)) return t;
    if (redraws) ++*redraws;
  }
}
}  // namespace detail

/// T with E[e^{-lambda T}] = e^{-lambda^(2/3)}.
inline double sample_stable_two_thirds(RngStream& rng) { return sample_positive_stable(2.0 / 3.0, rng); }

/// D with density 2x on [0, 1].
inline double sample_D(RngStream& rng) { return std::sqrt(rng.uniform()); }

/// L^0 given sigma = s: (2^(3/4)/3) s^(3/4) T^(-1/2).
/// Redrawn stable values (T < 1e-300) are added to `*redraws` when given.
inline double sample_lt_given_sigma(double s, RngStream& rng, std::uint64_t* redraws = nullptr) {
  if (!(s > 0.0 && std::isfinite(s))) throw DomainError("sample_lt_given_sigma: s must be > 0");
  const double t = detail::stable_two_thirds_guarded(rng, redraws);
  return std::pow(2.0, 0.75) / 3.0 * std::pow(s, 0.75) / std::sqrt(t);
}

/// L^0 given sigma_+ = s: (2^(9/4)/3) s^(3/4) D T^(-1/2), with D drawn from
/// `d_rng` and T from `t_rng`.
inline double sample_lt_given_sigma_plus(double s, RngStream& d_rng, RngStream& t_rng,
                                         std::uint64_t* redraws = nullptr) {
  if (!(s > 0.0 && std::isfinite(s))) throw DomainError("sample_lt_given_sigma_plus: s must be > 0");
  const double d = sample_D(d_rng);
  const double t = detail::stable_two_thirds_guarded(t_rng, redraws);
  return std::pow(2.0, 2.25) / 3.0 * std::pow(s, 0.75) * d / std::sqrt(t);
}

/// Single-stream form; D and T use consecutive draws of `rng`.
inline double sample_lt_given_sigma_plus(double s, RngStream& rng) { return sample_lt_given_sigma_plus(s, rng, rng); }

/// U with density (2 pi u^5)^(-1/2) exp(-1/(2u)): inverse-gamma with shape
/// 3/2 and scale 1/2, i.e. the reciprocal of a chi-square with 3 degrees of freedom.
inline double sample_U(RngStream& rng) {
  const double z1 = rng.normal(), z2 = rng.normal(), z3 = rng.normal();
  return 1.0 / (z1 * z1 + z2 * z2 + z3 * z3);
}

/// Total local time at 0 of super-Brownian motion from alpha delta_0:
/// (alpha 3^(1/3)/2)^(3/2) T.
inline double sample_sbm_total_lt(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && std::isfinite(alpha))) throw DomainError("sample_sbm_total_lt: alpha must be > 0");
  return std::pow(alpha * std::cbrt(3.0) / 2.0, 1.5) * sample_stable_two_thirds(rng);
}

/// Scale gamma of S(3/2, beta = 1, gamma) whose Laplace exponent is
/// dt sqrt(8/3) lambda^(3/2): E e^{-lX} = exp(-gamma^(3/2) l^(3/2) / cos(3 pi/4)).
inline double spectrally_positive_scale(double dt) { return std::pow(2.0 * dt / std::sqrt(3.0), 2.0 / 3.0); }

/// Increment over time dt of the zero-mean spectrally positive 3/2-stable
/// process Y with E[e^{-lambda (Y_t - Y_0)}] = exp(t sqrt(8/3) lambda^(3/2))
/// (Chambers-Mallows-Stuck, beta = 1).
inline double sample_spectrally_positive_increment(double dt, RngStream& rng) {
  if (!(dt > 0.0 && std::isfinite(dt))) throw DomainError("sample_spectrally_positive_increment: dt must be > 0");
  constexpr double alpha = 1.5;
  static const double tan_term = std::tan(pi * alpha / 2.0);  // -1
  static const double b = std::atan(tan_term) / alpha;
  static const double s = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * alpha));
  const double v = pi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double x = s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
  return spectrally_positive_scale(dt) * x;
}

/// n draws of `draw`, where chunk c of `chunk` draws uses the child stream
/// split(c) of a root stream (seed, stream_index). Results do not depend on how
/// chunks are scheduled.
template <typename Draw>
SampleBatch sample_batch(std::string law_tag, std::size_t n, std::uint64_t seed, std::uint64_t stream_index, Draw draw,
                         std::size_t chunk = 1 << 16) {
  SampleBatch batch{std::vector<double>(n), std::move(law_tag), std::to_string(seed) + ":" + std::to_string(stream_index)};
  const RngStream root(seed, stream_index);
  for (std::size_t start = 0, c = 0; start < n; start += chunk, ++c) {
    RngStream rng = root.split(c);
    const std::size_t end = std::min(n, start + chunk);
    for (std::size_t i = start; i < end; ++i) batch.values[i] = draw(rng);
  }
  return batch;
}

}  // namespace snakelaws::samplers
