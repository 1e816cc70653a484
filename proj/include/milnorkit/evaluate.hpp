#pragma once

// Floating-point evaluation of polynomial maps: values, Jacobians (from exact
// symbolic derivatives) and the gradient of ||psi||^2.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "milnorkit/polynomial.hpp"

namespace milnorkit {

/// A RealPolynomial flattened to double coefficients for fast point evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const RealPolynomial& p);

  std::size_t n_vars() const { return n_; }
  double eval(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  Exponents max_exp_;
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> exps_;
};

/// Prepared evaluator for psi and its first derivatives.
class MapEvaluator {
 public:
  explicit MapEvaluator(const RealPolyMap& psi);

  std::size_t source_dim() const { return m_; }
  std::size_t target_dim() const { return p_; }

  Eigen::VectorXd value(std::span<const double> x) const;
  /// p x m, row i = grad psi_i(x).
  Eigen::MatrixXd jacobian(std::span<const double> x) const;
  /// 2 * sum_i psi_i(x) grad psi_i(x).
  Eigen::VectorXd grad_norm_sq(std::span<const double> x) const;

 private:
  void check(std::span<const double> x) const;

  std::size_t m_, p_;
  std::vector<CompiledPolynomial> comps_;
  std::vector<CompiledPolynomial> partials_;  // p * m, row-major
};

std::vector<double> eval_map(const RealPolyMap& psi, std::span<const double> x);
Eigen::MatrixXd jacobian(const RealPolyMap& psi, std::span<const double> x);
Eigen::VectorXd grad_norm_sq(const RealPolyMap& psi, std::span<const double> x);

std::complex<double> eval_mixed(const MixedPolynomial& f, std::span<const std::complex<double>> z);

/// Prepared evaluator for a mixed polynomial and its Wirtinger derivatives.
class MixedEvaluator {
 public:
  explicit MixedEvaluator(const MixedPolynomial& f);

  std::size_t n_vars() const { return n_; }
  std::complex<double> value(std::span<const std::complex<double>> z) const;
  /// (df/dz_i, df/dzbar_i) for all i.
  void wirtinger(std::span<const std::complex<double>> z, std::vector<std::complex<double>>& dz,
                 std::vector<std::complex<double>>& dzbar) const;

 private:
  std::size_t n_;
  MixedPolynomial f_;
  std::vector<MixedPolynomial> dz_, dzbar_;
};

inline std::span<const double> as_span(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace milnorkit
