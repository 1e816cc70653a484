#pragma once

// Closed intervals with either exact rational endpoints or double endpoints
// under outward rounding. Double rounding is directed with error-free
// transformations (TwoSum / FMA), so no rounding-mode switches are needed and
// exactly representable results are not widened.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "milnorkit/error.hpp"
#include "milnorkit/polynomial.hpp"

namespace milnorkit {

template <class T>
struct Interval {
  T lo{};
  T hi{};

  bool contains(const T& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  T width() const { return hi - lo; }
};

using IntervalD = Interval<double>;
using IntervalQ = Interval<Rational>;

namespace rounding {

inline double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

/// Rounding error sign of a + b: exact sum = s + err.
inline double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) < 0 ? down(s) : s;
}
inline double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) > 0 ? up(s) : s;
}
inline double mul_down(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p;
  double err = std::fma(a, b, -p);
  // Underflow makes the FMA residual unreliable; step outward unconditionally.
  if (p != 0 && std::fabs(p) < 1e-290) return down(p);
  if (p == 0 && a != 0 && b != 0) return (a > 0) == (b > 0) ? 0.0 : -std::numeric_limits<double>::denorm_min();
  return err < 0 ? down(p) : p;
}
inline double mul_up(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p;
  double err = std::fma(a, b, -p);
  if (p != 0 && std::fabs(p) < 1e-290) return up(p);
  if (p == 0 && a != 0 && b != 0) return (a > 0) == (b > 0) ? std::numeric_limits<double>::denorm_min() : 0.0;
  return err > 0 ? up(p) : p;
}

}  // namespace rounding

// ---- double intervals

inline IntervalD make_interval(double lo, double hi) {
  if (!(lo <= hi)) throw DomainError("interval with lo > hi");
  return {lo, hi};
}

/// Outward enclosure of an exact rational.
inline IntervalD enclose(const Rational& q) { return {round_down(q), round_up(q)}; }

inline IntervalD operator+(const IntervalD& a, const IntervalD& b) {
  return {rounding::add_down(a.lo, b.lo), rounding::add_up(a.hi, b.hi)};
}
inline IntervalD operator-(const IntervalD& a) { return {-a.hi, -a.lo}; }
inline IntervalD operator-(const IntervalD& a, const IntervalD& b) { return a + (-b); }
inline IntervalD operator*(const IntervalD& a, const IntervalD& b) {
  using namespace rounding;
  double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
  double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
  return {lo, hi};
}

namespace detail {
inline double pow_down_nonneg(double a, unsigned e) {
  double r = 1.0;
  for (unsigned i = 0; i < e; ++i) r = rounding::mul_down(r, a);
  return r;
}
inline double pow_up_nonneg(double a, unsigned e) {
  double r = 1.0;
  for (unsigned i = 0; i < e; ++i) r = rounding::mul_up(r, a);
  return r;
}
}  // namespace detail

/// x^e with the monotone-power rule: even powers of a zero-straddling interval start at 0.
inline IntervalD pow(const IntervalD& x, unsigned e) {
  using detail::pow_down_nonneg;
  using detail::pow_up_nonneg;
  if (e == 0) return {1.0, 1.0};
  if (x.lo >= 0) return {pow_down_nonneg(x.lo, e), pow_up_nonneg(x.hi, e)};
  if (x.hi <= 0) {
    if (e % 2 == 0) return {pow_down_nonneg(-x.hi, e), pow_up_nonneg(-x.lo, e)};
    return {-pow_up_nonneg(-x.lo, e), -pow_down_nonneg(-x.hi, e)};
  }
  if (e % 2 == 0) return {0.0, pow_up_nonneg(std::max(-x.lo, x.hi), e)};
  return {-pow_up_nonneg(-x.lo, e), pow_up_nonneg(x.hi, e)};
}

inline IntervalD sqr(const IntervalD& x) { return pow(x, 2); }

// ---- rational intervals

inline IntervalQ operator+(const IntervalQ& a, const IntervalQ& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline IntervalQ operator-(const IntervalQ& a) { return {-a.hi, -a.lo}; }
inline IntervalQ operator-(const IntervalQ& a, const IntervalQ& b) { return a + (-b); }
IntervalQ operator*(const IntervalQ& a, const IntervalQ& b);
IntervalQ pow(const IntervalQ& x, unsigned e);
inline IntervalQ sqr(const IntervalQ& x) { return pow(x, 2); }

/// Per-coordinate closed intervals with exact rational endpoints.
class IntervalBox {
 public:
  IntervalBox() = default;
  explicit IntervalBox(std::vector<IntervalQ> sides);
  /// [-r, r]^dim
  static IntervalBox cube(std::size_t dim, const Rational& r);

  std::size_t dim() const { return sides_.size(); }
  const IntervalQ& operator[](std::size_t i) const { return sides_[i]; }
  const std::vector<IntervalQ>& sides() const { return sides_; }
  bool contains(std::span<const double> x) const;
  /// Outward double enclosure of the box.
  std::vector<IntervalD> to_double() const;

 private:
  std::vector<IntervalQ> sides_;
};

/// A polynomial prepared for repeated interval evaluation.
/// Coefficients are stored as outward-rounded double intervals.
class IntervalPolynomial {
 public:
  IntervalPolynomial() = default;
  explicit IntervalPolynomial(const RealPolynomial& p);

  std::size_t n_vars() const { return n_; }
  IntervalD eval(std::span<const IntervalD> box) const;

 private:
  std::size_t n_ = 0;
  Exponents max_exp_;
  std::vector<IntervalD> coeffs_;
  std::vector<std::uint32_t> exps_;  // row-major, n_ per term
};

/// Exact enclosure with rational endpoints (rigorous mode).
IntervalQ interval_eval(const RealPolynomial& q, const IntervalBox& box);

/// Enclosure with double endpoints under outward rounding (float mode).
IntervalD interval_eval_float(const RealPolynomial& q, std::span<const IntervalD> box);

}  // namespace milnorkit
