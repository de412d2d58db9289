#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "snakelaws/bigrational.hpp"

namespace snakelaws {

/// Exact element a + b*sqrt(2) of the field Q(sqrt 2).
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(BigRational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long a) : a_(a) {}                    // NOLINT
  QuadExt(int a) : a_(a) {}                     // NOLINT
  QuadExt(BigRational a, BigRational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadExt sqrt2() { return {BigRational(0), BigRational(1)}; }

  const BigRational& rational_part() const { return a_; }
  const BigRational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadExt conjugate() const { return {a_, -b_}; }
  /// a^2 - 2 b^2; nonzero for every nonzero element since sqrt 2 is irrational.
  BigRational norm() const { return a_ * a_ - BigRational(2) * b_ * b_; }

  double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(2.0); }

  /// "p/q" for rational elements, otherwise "p/q + r/s*sqrt2".
  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    return a_.to_string() + " + " + b_.to_string() + "*sqrt2";
  }

  QuadExt& operator+=(const QuadExt& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QuadExt& operator-=(const QuadExt& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QuadExt& operator*=(const QuadExt& o) {
    BigRational a = a_ * o.a_ + BigRational(2) * b_ * o.b_;
    BigRational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    if (o.is_zero()) throw std::domain_error("QuadExt: division by zero");
    const BigRational n = o.norm();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator-(const QuadExt& x) { return {-x.a_, -x.b_}; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.to_string(); }

 private:
  BigRational a_{0};
  BigRational b_{0};
};

inline QuadExt pow(const QuadExt& base, long exp) {
  if (exp < 0) return QuadExt(1) / pow(base, -exp);
  QuadExt result(1), b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

}  // namespace snakelaws
