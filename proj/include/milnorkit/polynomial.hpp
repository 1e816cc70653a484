#pragma once

// Sparse polynomials with exact coefficients.
//
// RealPolynomial: sum of c_a x^a, c_a rational, a in N^m.
// MixedPolynomial: sum of c_{nu,mu} z^nu zbar^mu, c complex rational; the
// exponent key stores nu followed by mu (length 2n).
//
// Terms are kept in a std::map keyed by exponent vector, so two terms with the
// same exponents are always merged and zero coefficients are never stored.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "milnorkit/rational.hpp"

namespace milnorkit {

using Exponents = std::vector<std::uint32_t>;

class RealPolynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit RealPolynomial(std::size_t n_vars = 1);

  static RealPolynomial constant(std::size_t n_vars, const Rational& c);
  /// x_{index+1}, index is zero-based.
  static RealPolynomial variable(std::size_t n_vars, std::size_t index);
  static RealPolynomial monomial(Exponents exps, const Rational& c);

  std::size_t n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  /// Largest exponent of each variable.
  Exponents max_exponents() const;

  void add_term(const Exponents& exps, const Rational& c);

  RealPolynomial derivative(std::size_t index) const;
  RealPolynomial pow(unsigned e) const;
  /// Same polynomial viewed in `new_n_vars` variables, x_j renamed x_{j+offset}.
  RealPolynomial embed(std::size_t new_n_vars, std::size_t offset) const;
  /// Sets the listed variables to zero and drops them from the variable list.
  RealPolynomial restrict_to_zero(const std::vector<std::size_t>& vanishing) const;

  double eval(std::span<const double> x) const;
  Rational eval_exact(std::span<const Rational> x) const;

  /// Normalized text form, e.g. "x2^4 - x1^2*x3^2 - x1^4". Terms by degree, then lexicographic.
  std::string to_string(const std::string& var = "x") const;

  RealPolynomial& operator+=(const RealPolynomial& o);
  RealPolynomial& operator-=(const RealPolynomial& o);
  RealPolynomial& operator*=(const Rational& c);
  friend RealPolynomial operator+(RealPolynomial a, const RealPolynomial& b) { return a += b; }
  friend RealPolynomial operator-(RealPolynomial a, const RealPolynomial& b) { return a -= b; }
  friend RealPolynomial operator-(RealPolynomial a) { return a *= Rational(-1); }
  friend RealPolynomial operator*(RealPolynomial a, const Rational& c) { return a *= c; }
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
  friend bool operator==(const RealPolynomial& a, const RealPolynomial& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_dim(const RealPolynomial& o) const;

  std::size_t n_vars_;
  TermMap terms_;
};

/// psi = (psi_1, ..., psi_p): R^m -> R^p with p >= 2.
class RealPolyMap {
 public:
  RealPolyMap() = default;
  /// Throws DimensionError when p < 2 or the components disagree on m.
  explicit RealPolyMap(std::vector<RealPolynomial> components);

  std::size_t source_dim() const { return m_; }
  std::size_t target_dim() const { return components_.size(); }
  const std::vector<RealPolynomial>& components() const { return components_; }
  const RealPolynomial& operator[](std::size_t i) const { return components_[i]; }

  bool is_zero() const;
  /// Sum of squares of the components, i.e. ||psi||^2 as a polynomial.
  RealPolynomial norm_squared() const;
  std::string to_string() const;

  friend bool operator==(const RealPolyMap& a, const RealPolyMap& b) {
    return a.m_ == b.m_ && a.components_ == b.components_;
  }

 private:
  std::size_t m_ = 0;
  std::vector<RealPolynomial> components_;
};

struct MixedTerm {
  ComplexRational coeff;
  Exponents nu;  // holomorphic exponents
  Exponents mu;  // antiholomorphic exponents
};

class MixedPolynomial {
 public:
  using TermMap = std::map<Exponents, ComplexRational>;

  explicit MixedPolynomial(std::size_t n_vars = 1);

  static MixedPolynomial constant(std::size_t n_vars, const ComplexRational& c);
  /// z_{index+1} (conjugate = false) or conj(z_{index+1}).
  static MixedPolynomial variable(std::size_t n_vars, std::size_t index, bool conjugate = false);

  std::size_t n_vars() const { return n_vars_; }
  const TermMap& raw_terms() const { return terms_; }
  std::vector<MixedTerm> terms() const;
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_holomorphic() const;

  void add_term(const Exponents& nu, const Exponents& mu, const ComplexRational& c);

  /// Formal derivative in z_i (index zero-based), z and zbar independent.
  MixedPolynomial wirtinger_dz(std::size_t index) const;
  MixedPolynomial wirtinger_dzbar(std::size_t index) const;
  /// The mixed polynomial conj(f).
  MixedPolynomial conjugate() const;
  MixedPolynomial pow(unsigned e) const;

  std::complex<double> eval(std::span<const std::complex<double>> z) const;
  ComplexRational eval_exact(std::span<const ComplexRational> z) const;

  std::string to_string() const;

  MixedPolynomial& operator+=(const MixedPolynomial& o);
  MixedPolynomial& operator-=(const MixedPolynomial& o);
  friend MixedPolynomial operator+(MixedPolynomial a, const MixedPolynomial& b) { return a += b; }
  friend MixedPolynomial operator-(MixedPolynomial a, const MixedPolynomial& b) { return a -= b; }
  friend MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b);
  friend MixedPolynomial operator*(MixedPolynomial a, const ComplexRational& c);
  friend bool operator==(const MixedPolynomial& a, const MixedPolynomial& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_dim(const MixedPolynomial& o) const;

  std::size_t n_vars_;
  TermMap terms_;
};

/// (Re f, Im f) as a map R^{2n} -> R^2 under z_j = x_{2j-1} + i x_{2j}.
RealPolyMap realify(const MixedPolynomial& f);

/// Interleaved realification of a complex point: (Re z1, Im z1, Re z2, ...).
std::vector<double> realify_point(std::span<const std::complex<double>> z);
std::vector<std::complex<double>> complexify_point(std::span<const double> x);

}  // namespace milnorkit
