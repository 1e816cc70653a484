#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace milnorkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix sizes that do not match the polynomial dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside an operation's domain (t <= 0, non-unit lambda, c = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Exact minor expansion refused because the matrix is too large.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// m = p: the rank of [D psi; x] can never reach p + 1, so M(psi) is all of R^m.
class DegenerateDimensionError : public Error {
 public:
  using Error::Error;
};

/// The blend x/|x| + b g/|g| cannot make both inner products positive.
class AntiParallelError : public Error {
 public:
  using Error::Error;
};

/// grad ||psi||^2 vanishes where the blow-out field needs it.
class ZeroGradientError : public Error {
 public:
  using Error::Error;
};

/// An iteration (Newton, flow integration) did not converge within its limits.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace milnorkit
