#pragma once

#include <stdexcept>
#include <string>

namespace snakelaws {

// Argument outside the domain of a law or operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Root bracketing, quadrature or time-change failures.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gamma ratio whose arguments differ by a half-odd amount (irrational result).
struct ParityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Vanishing Pochhammer denominator in a terminating hypergeometric sum.
struct PoleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Enumeration request above the brute-force limit.
struct SizeError : std::length_error {
  using std::length_error::length_error;
};

// Empty or malformed statistical input.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace snakelaws
