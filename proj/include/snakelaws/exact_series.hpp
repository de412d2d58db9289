#pragma once

// Exact coefficient identities for the local-time moment generating functions
// F (conditioning on the total duration) and F+ (conditioning on the time
// spent above zero), together with the gamma-ratio, hypergeometric and
// rational-parametrization checks that tie them to closed forms.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "snakelaws/bigrational.hpp"
#include "snakelaws/errors.hpp"
#include "snakelaws/quadext.hpp"
#include "snakelaws/series.hpp"

namespace snakelaws::series {

using RationalSeries = TruncatedSeries<BigRational>;
using QuadSeries = TruncatedSeries<QuadExt>;

inline constexpr std::size_t kDefaultOrder = 40;

/// Exact value c * pi^(half_pi_power/2); products of Gamma at half-integers
/// live in this set.
struct PiMonomial {
  BigRational coef{1};
  int half_pi_power = 0;

  friend PiMonomial operator*(const PiMonomial& a, const PiMonomial& b) {
    return {a.coef * b.coef, a.half_pi_power + b.half_pi_power};
  }
  friend PiMonomial operator/(const PiMonomial& a, const PiMonomial& b) {
    return {a.coef / b.coef, a.half_pi_power - b.half_pi_power};
  }
  friend bool operator==(const PiMonomial& a, const PiMonomial& b) {
    return a.half_pi_power == b.half_pi_power && a.coef == b.coef;
  }
  bool is_rational() const { return half_pi_power == 0; }
};

/// Gamma(p/2) for p >= 1: (p/2 - 1)! for even p, (2k)! sqrt(pi) / (4^k k!)
/// for p = 2k + 1.
inline PiMonomial gamma_half(long p) {
  if (p < 1) throw DomainError("gamma_half: argument p/2 must be positive");
  if (p % 2 == 0) return {factorial(static_cast<unsigned long>(p / 2 - 1)), 0};
  const long k = (p - 1) / 2;
  return {factorial(static_cast<unsigned long>(2 * k)) /
              (pow(BigRational(4), k) * factorial(static_cast<unsigned long>(k))),
          1};
}

/// Gamma(p/2) / Gamma(q/2) as an exact rational; p and q must share parity.
inline BigRational gamma_ratio_half(long p, long q) {
  if (p < 1 || q < 1) throw DomainError("gamma_ratio_half: p and q must be positive");
  if ((p - q) % 2 != 0) throw ParityError("gamma_ratio_half: p and q must have the same parity");
  return (gamma_half(p) / gamma_half(q)).coef;
}

/// [z^n] F(z) = (-1)^(n-1) 3^(1-n) / n! * Gamma(3n/2 - 1) / Gamma(n/2).
inline BigRational coef_F(long n) {
  if (n < 1) throw DomainError("coef_F: n must be >= 1 (F(0) = 0)");
  const BigRational sign = (n % 2 == 1) ? BigRational(1) : BigRational(-1);
  return sign * pow(BigRational(3), 1 - n) / factorial(static_cast<unsigned long>(n)) *
         gamma_ratio_half(3 * n - 2, n);
}

/// N_0((L^0)^n e^{-sigma/2}) = (1/2) 3^(1-n) Gamma(3n/2 - 1) / Gamma(n/2).
inline BigRational weighted_moment_sigma(long n) {
  if (n < 1) throw DomainError("weighted_moment_sigma: n must be >= 1");
  return BigRational(1, 2) * pow(BigRational(3), 1 - n) * gamma_ratio_half(3 * n - 2, n);
}

/// Solves F = z (1 + F/3)^(-1/2) by fixed-point iteration; each pass fixes one
/// more coefficient, so `order` passes are exact to that order.
inline RationalSeries series_solve_F(std::size_t order = kDefaultOrder) {
  if (order < 1) throw DomainError("series_solve_F: order must be >= 1");
  const BigRational third(1, 3), minus_half(-1, 2);
  RationalSeries f(order);
  for (std::size_t it = 0; it < order; ++it) f = (f * third + BigRational(1)).pow(minus_half).shifted();
  return f;
}

/// F^2 (3 + F) - 3 z^2; identically zero to the truncation order.
inline RationalSeries squared_equation_residual(const RationalSeries& f) {
  const RationalSeries z = RationalSeries::variable(f.order());
  return f * f * (f + BigRational(3)) - BigRational(3) * (z * z);
}

/// [lambda^n] F+(lambda) in Q(sqrt 2):
/// (-1)^(n+1)/n! (3 sqrt2)^(-n) 2^(2n+1) / (n+2) * Gamma(3n/2 - 1) / Gamma(n/2).
inline QuadExt coef_Fplus(long n) {
  if (n < 1) throw DomainError("coef_Fplus: n must be >= 1 (F+(0) = 1/3 is separate)");
  const BigRational sign = (n % 2 == 1) ? BigRational(1) : BigRational(-1);
  const BigRational rational = sign / factorial(static_cast<unsigned long>(n)) * pow(BigRational(2), 2 * n + 1) /
                               BigRational(n + 2) * gamma_ratio_half(3 * n - 2, n);
  return pow(QuadExt(BigRational(0), BigRational(3)), -n) * QuadExt(rational);
}

/// N_0((L^0)^n e^{-sigma_+/2}) = (2 sqrt2 / 3)^n * 2/(n+2) * Gamma(3n/2 - 1) / Gamma(n/2).
inline QuadExt weighted_moment_sigma_plus(long n) {
  if (n < 1) throw DomainError("weighted_moment_sigma_plus: n must be >= 1");
  const QuadExt base(BigRational(0), BigRational(2, 3));
  return pow(base, n) * QuadExt(BigRational(2) / BigRational(n + 2) * gamma_ratio_half(3 * n - 2, n));
}

// Rational parametrization of the cubic P(F+, lambda) = 0.

/// P(y, z) = 96 y^3 z^2 - 36 z^4 - 36 y z^2 + 12 z^2 - 9 y^2 + 6 y - 1.
template <typename T>
T cubic_P(const T& y, const T& z) {
  const T z2 = z * z;
  return T(96) * (y * y * y * z2) - T(36) * (z2 * z2) - T(36) * (y * z2) + T(12) * z2 - T(9) * (y * y) + T(6) * y - T(1);
}

inline QuadExt q_poly(const QuadExt& z) { return QuadExt(BigRational(-1, 124416)) * z * z * z + QuadExt(BigRational(1, 48)) * z; }
inline QuadExt q_poly_derivative(const QuadExt& z) { return QuadExt(BigRational(-3, 124416)) * z * z + QuadExt(BigRational(1, 48)); }
inline QuadExt r_rational(const QuadExt& z) {
  return QuadExt(BigRational(1, 3456)) * z * z - QuadExt(BigRational(1, 2)) + QuadExt(BigRational(216)) / (z * z);
}

/// The zeros -36 sqrt2, 0, 36 sqrt2 of Q, in that order.
inline std::array<QuadExt, 3> q_roots() {
  return {QuadExt(BigRational(0), BigRational(-36)), QuadExt(0), QuadExt(BigRational(0), BigRational(36))};
}

/// gamma_i'(0) = 1 / Q'(root_i) for the three local inverses of Q.
inline std::array<QuadExt, 3> branch_derivatives() {
  std::array<QuadExt, 3> d;
  const auto roots = q_roots();
  for (std::size_t i = 0; i < 3; ++i) d[i] = QuadExt(1) / q_poly_derivative(roots[i]);
  return d;
}

/// Verifies z^6 P(R(z), Q(z)) == 0 as a polynomial in z with rational
/// coefficients. `q_linear` is the z-coefficient of Q (1/48 in the identity).
inline bool q_r_identity_check(const BigRational& q_linear = BigRational(1, 48)) {
  constexpr std::size_t kDeg = 24;  // every product below has degree <= 18
  const RationalSeries z = RationalSeries::variable(kDeg);
  const RationalSeries z2 = z * z;
  const RationalSeries z4 = z2 * z2;
  const RationalSeries z6 = z4 * z2;
  const RationalSeries q = BigRational(-1, 124416) * (z2 * z) + q_linear * z;
  // rn = z^2 R(z)
  const RationalSeries rn = BigRational(1, 3456) * z4 - BigRational(1, 2) * z2 + RationalSeries::constant(kDeg, BigRational(216));
  const RationalSeries q2 = q * q;
  const RationalSeries poly = BigRational(96) * (rn * rn * rn * q2) - BigRational(36) * (q2 * q2 * z6) -
                              BigRational(36) * (rn * q2 * z4) + BigRational(12) * (q2 * z6) -
                              BigRational(9) * (rn * rn * z2) + BigRational(6) * (rn * z4) - z6;
  return poly.is_zero();
}

/// F~+(lambda) = F+(lambda) - 1/3 to the given order, via
/// gamma~ = lambda psi~(gamma~) and F~+ = R(gamma~ - 36 sqrt2) - 1/3.
inline QuadSeries series_solve_Fplus(std::size_t order = kDefaultOrder) {
  if (order < 1) throw DomainError("series_solve_Fplus: order must be >= 1");
  const QuadExt c1(BigRational(0), BigRational(36));
  const QuadExt c2(BigRational(0), BigRational(72));
  const QuadExt numerator(BigRational(-124416));
  QuadSeries g(order);
  for (std::size_t it = 0; it < order; ++it) {
    const QuadSeries denom = (-g + c1) * (-g + c2);
    g = (numerator * denom.inverse()).shifted();
  }
  // R(w) - 1/3 at w = gamma~ - 36 sqrt2; w has the nonzero constant -36 sqrt2.
  const QuadSeries w = g - c1;
  const QuadSeries w2 = w * w;
  QuadSeries r = QuadExt(BigRational(1, 3456)) * w2 + QuadExt(216) * w2.inverse();
  r = r - QuadExt(BigRational(5, 6));
  return r;
}

/// P(1/3 + F~+, lambda); identically zero to the truncation order.
inline QuadSeries fplus_cubic_residual(const QuadSeries& ftilde) {
  const QuadSeries y = ftilde + QuadExt(BigRational(1, 3));
  const QuadSeries z = QuadSeries::variable(ftilde.order());
  const QuadSeries z2 = z * z;
  return QuadExt(96) * (y * y * y * z2) - QuadExt(36) * (z2 * z2) - QuadExt(36) * (y * z2) + QuadExt(12) * z2 -
         QuadExt(9) * (y * y) + QuadExt(6) * y - QuadExt(1);
}

// Hypergeometric forms.

/// (1 - 2 lambda)^(-k) (1 - lambda)^(-l) truncated at lambda^order; k = 0 is
/// accepted (the first factor is then 1).
inline RationalSeries rational_product_series(long k, long l, std::size_t order) {
  if (k < 0 || l < 1) throw DomainError("rational_product_series: need k >= 0, l >= 1");
  // Both factors have binomial coefficients in closed form.
  std::vector<BigRational> ca(order + 1), cb(order + 1);
  for (std::size_t j = 0; j <= order; ++j) {
    const auto jj = static_cast<unsigned long>(j);
    ca[j] = k == 0 ? BigRational(j == 0 ? 1 : 0) : pow(BigRational(2), static_cast<long>(j)) * binomial(jj + static_cast<unsigned long>(k) - 1, jj);
    cb[j] = binomial(jj + static_cast<unsigned long>(l) - 1, jj);
  }
  return RationalSeries(order, std::move(ca)) * RationalSeries(order, std::move(cb));
}

/// [lambda^m] (1 - 2 lambda)^(-k) (1 - lambda)^(-l) by series convolution.
/// k = 0 is accepted (the factor is then 1).
inline BigRational coef_rational_product(long m, long k, long l) {
  if (m < 0) throw DomainError("coef_rational_product: need m >= 0");
  return rational_product_series(k, l, static_cast<std::size_t>(m))[static_cast<std::size_t>(m)];
}

/// 2F1(-m, l; -m-k+1; 1/2), a terminating sum.
inline BigRational hypergeom_2f1_half(long m, long l, long k) {
  if (m < 0 || l < 1) throw DomainError("hypergeom_2f1_half: need m >= 0, l >= 1");
  if (k < 1 && m >= 1) throw PoleError("hypergeom_2f1_half: lower parameter hits a pole (k must be >= 1)");
  BigRational term(1), sum(1);
  for (long j = 0; j < m; ++j) {
    // term_{j+1} / term_j = (-m+j)(l+j) / ((-m-k+1+j)(j+1)) * 1/2
    term *= BigRational(-m + j) * BigRational(l + j) / (BigRational(-m - k + 1 + j) * BigRational(j + 1) * BigRational(2));
    sum += term;
  }
  return sum;
}

/// 2^m C(m+k-1, m) 2F1(-m, l; -m-k+1; 1/2).
inline BigRational rational_product_hypergeom_form(long m, long k, long l) {
  return pow(BigRational(2), m) * binomial(static_cast<unsigned long>(m + k - 1), static_cast<unsigned long>(m)) *
         hypergeom_2f1_half(m, l, k);
}

/// Both Bailey evaluations of 2F1(-n+1, n; -2n+3; 1/2) and
/// 2F1(-n+1, n; -2n-1; 1/2), each in its ratio-of-gammas and duplicated form.
inline bool bailey_check(long n) {
  if (n < 2) throw DomainError("bailey_check: n must be >= 2");
  const PiMonomial inv_sqrt_pi{BigRational(1), -1};

  const BigRational lhs1 = hypergeom_2f1_half(n - 1, n, n - 1);
  const PiMonomial num1 = gamma_half(n - 1) * gamma_half(3 * n - 2);
  const PiMonomial ratio1 = num1 / (gamma_half(2 * n - 1) * gamma_half(2 * n - 2));
  const PiMonomial dup1 = PiMonomial{pow(BigRational(2), 2 * n - 3), 0} * inv_sqrt_pi * num1 / gamma_half(4 * n - 4);

  const BigRational lhs2 = hypergeom_2f1_half(n - 1, n, n + 3);
  const PiMonomial num2 = gamma_half(n + 3) * gamma_half(3 * n + 2);
  const PiMonomial ratio2 = num2 / (gamma_half(2 * n + 3) * gamma_half(2 * n + 2));
  const PiMonomial dup2 = PiMonomial{pow(BigRational(2), 2 * n + 1), 0} * inv_sqrt_pi * num2 / gamma_half(4 * n + 4);

  const PiMonomial l1{lhs1, 0}, l2{lhs2, 0};
  return ratio1 == l1 && dup1 == l1 && ratio2 == l2 && dup2 == l2;
}

/// [lambda^n] F+ assembled from the two rational-product coefficients:
/// (-1)^n / n (3 sqrt2)^(-n) (-3 A + B/3) with
/// A = [lambda^(n-1)] (1-2l)^(-n+1)(1-l)^(-n), B = [lambda^(n-1)] (1-2l)^(-n-3)(1-l)^(-n).
inline QuadExt coef_Fplus_from_products(long n) {
  if (n < 1) throw DomainError("coef_Fplus_from_products: n must be >= 1");
  const BigRational a = coef_rational_product(n - 1, n - 1, n);
  const BigRational b = coef_rational_product(n - 1, n + 3, n);
  const BigRational sign = (n % 2 == 0) ? BigRational(1) : BigRational(-1);
  const BigRational inner = sign / BigRational(n) * (BigRational(-3) * a + b / BigRational(3));
  return pow(QuadExt(BigRational(0), BigRational(3)), -n) * QuadExt(inner);
}

enum class Conditioning { sigma, sigma_plus };

/// N_0((L^0)^n | sigma = 1) = 2^(3n/4)/3^n Gamma(3n/4+1)/Gamma(n/2+1), or
/// (2^(9/4)/3)^n 2/(n+2) Gamma(3n/4+1)/Gamma(n/2+1) given sigma_+ = 1.
inline double conditional_moment(long n, Conditioning c) {
  if (n < 1) throw DomainError("conditional_moment: n must be >= 1");
  const double dn = static_cast<double>(n);
  const double log_gamma = std::lgamma(0.75 * dn + 1.0) - std::lgamma(0.5 * dn + 1.0);
  if (c == Conditioning::sigma) return std::exp(dn * (0.75 * std::log(2.0) - std::log(3.0)) + log_gamma);
  return std::exp(dn * (2.25 * std::log(2.0) - std::log(3.0)) + log_gamma) * 2.0 / (dn + 2.0);
}

/// "p/q" with the denominator always printed.
inline std::string exact_string(const BigRational& r) {
  return r.numerator().get_str() + "/" + r.denominator().get_str();
}
/// "p/q" for rational elements, "p/q + r/s*sqrt2" otherwise.
inline std::string exact_string(const QuadExt& x) {
  if (x.sqrt2_part().is_zero()) return exact_string(x.rational_part());
  return exact_string(x.rational_part()) + " + " + exact_string(x.sqrt2_part()) + "*sqrt2";
}

}  // namespace snakelaws::series
