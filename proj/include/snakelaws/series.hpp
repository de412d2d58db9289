#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "snakelaws/bigrational.hpp"
#include "snakelaws/errors.hpp"

namespace snakelaws {

/// Formal power series c_0 + c_1 z + ... + c_N z^N over an exact field, with
/// all arithmetic truncated at the fixed order N.
///
/// Field must provide +, -, *, / and construction from an integer. Two series
/// combined by a binary operation must share the same order.
template <typename Field>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : c_(order + 1, Field(0)) {}
  TruncatedSeries(std::size_t order, std::vector<Field> coeffs) : c_(order + 1, Field(0)) {
    for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) c_[i] = std::move(coeffs[i]);
  }

  static TruncatedSeries constant(std::size_t order, Field v) {
    TruncatedSeries s(order);
    s.c_[0] = std::move(v);
    return s;
  }
  /// The series z.
  static TruncatedSeries variable(std::size_t order) {
    TruncatedSeries s(order);
    if (order >= 1) s.c_[1] = Field(1);
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const Field& operator[](std::size_t n) const { return c_.at(n); }
  const std::vector<Field>& coefficients() const { return c_; }

  /// Index of the first nonzero coefficient, or order()+1 for the zero series.
  std::size_t valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == Field(0))) return i;
    return c_.size();
  }
  bool is_zero() const { return valuation() == c_.size(); }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_order(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_order(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  TruncatedSeries& operator*=(const Field& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const Field& k) { return a *= k; }
  friend TruncatedSeries operator*(const Field& k, TruncatedSeries a) { return a *= k; }
  friend TruncatedSeries operator+(TruncatedSeries a, const Field& k) {
    a.c_[0] += k;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const Field& k) {
    a.c_[0] -= k;
    return a;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_order(b);
    const std::size_t n = a.order();
    TruncatedSeries r(n);
    const std::size_t va = a.valuation(), vb = b.valuation();
    for (std::size_t i = va; i <= n; ++i) {
      if (a.c_[i] == Field(0)) continue;
      for (std::size_t j = vb; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse; requires a nonzero constant term.
  TruncatedSeries inverse() const {
    if (c_[0] == Field(0)) throw DomainError("TruncatedSeries::inverse: zero constant term");
    const std::size_t n = order();
    TruncatedSeries r(n);
    const Field inv0 = Field(1) / c_[0];
    r.c_[0] = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
      Field acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -acc * inv0;
    }
    return r;
  }

  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b.inverse(); }

  /// z * this (the top coefficient falls off).
  TruncatedSeries shifted() const {
    TruncatedSeries r(order());
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) r.c_[i + 1] = c_[i];
    return r;
  }

  /// this^alpha for a rational alpha, defined when the constant term is 1.
  /// Uses the recurrence n g_n = sum_{k=1}^n ((alpha+1)k - n) f_k g_{n-k}.
  TruncatedSeries pow(const BigRational& alpha) const {
    if (!(c_[0] == Field(1))) throw DomainError("TruncatedSeries::pow: constant term must be 1");
    const std::size_t n = order();
    TruncatedSeries g(n);
    g.c_[0] = Field(1);
    const Field a1 = Field(alpha + BigRational(1));
    for (std::size_t m = 1; m <= n; ++m) {
      Field acc(0);
      for (std::size_t k = 1; k <= m; ++k) {
        if (c_[k] == Field(0)) continue;
        acc += (a1 * Field(static_cast<long>(k)) - Field(static_cast<long>(m))) * c_[k] * g.c_[m - k];
      }
      g.c_[m] = acc / Field(static_cast<long>(m));
    }
    return g;
  }

  /// outer(inner(z)) for inner with zero constant term.
  static TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
    outer.check_order(inner);
    if (!(inner.c_[0] == Field(0))) throw DomainError("TruncatedSeries::compose: inner series has nonzero constant term");
    const std::size_t n = outer.order();
    TruncatedSeries r = constant(n, outer.c_[n]);
    for (std::size_t k = n; k-- > 0;) r = r * inner + outer.c_[k];
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

 private:
  void check_order(const TruncatedSeries& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("TruncatedSeries: mismatched truncation orders");
  }

  std::vector<Field> c_;
};

}  // namespace snakelaws
