#include "milnorkit/evaluate.hpp"

#include "milnorkit/error.hpp"

namespace milnorkit {

CompiledPolynomial::CompiledPolynomial(const RealPolynomial& p) : n_(p.n_vars()), max_exp_(p.max_exponents()) {
  coeffs_.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(to_double(c));
    exps_.insert(exps_.end(), e.begin(), e.end());
  }
}

double CompiledPolynomial::eval(std::span<const double> x) const {
  if (x.size() != n_) throw DimensionError("point dimension does not match polynomial");
  thread_local std::vector<std::vector<double>> powers;
  powers.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    auto& row = powers[j];
    row.resize(max_exp_[j] + 1);
    row[0] = 1.0;
    for (std::uint32_t e = 1; e <= max_exp_[j]; ++e) row[e] = row[e - 1] * x[j];
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double term = coeffs_[t];
    const std::uint32_t* e = exps_.data() + t * n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (e[j]) term *= powers[j][e[j]];
    sum += term;
  }
  return sum;
}

MapEvaluator::MapEvaluator(const RealPolyMap& psi) : m_(psi.source_dim()), p_(psi.target_dim()) {
  for (const auto& c : psi.components()) {
    comps_.emplace_back(c);
    for (std::size_t j = 0; j < m_; ++j) partials_.emplace_back(c.derivative(j));
  }
}

void MapEvaluator::check(std::span<const double> x) const {
  if (x.size() != m_) throw DimensionError("point has dimension " + std::to_string(x.size()) +
                                           ", map expects " + std::to_string(m_));
}

Eigen::VectorXd MapEvaluator::value(std::span<const double> x) const {
  check(x);
  Eigen::VectorXd v(static_cast<Eigen::Index>(p_));
  for (std::size_t i = 0; i < p_; ++i) v(static_cast<Eigen::Index>(i)) = comps_[i].eval(x);
  return v;
}

Eigen::MatrixXd MapEvaluator::jacobian(std::span<const double> x) const {
  check(x);
  Eigen::MatrixXd J(static_cast<Eigen::Index>(p_), static_cast<Eigen::Index>(m_));
  for (std::size_t i = 0; i < p_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = partials_[i * m_ + j].eval(x);
  return J;
}

Eigen::VectorXd MapEvaluator::grad_norm_sq(std::span<const double> x) const {
  return 2.0 * jacobian(x).transpose() * value(x);
}

std::vector<double> eval_map(const RealPolyMap& psi, std::span<const double> x) {
  if (x.size() != psi.source_dim()) throw DimensionError("point dimension does not match map");
  std::vector<double> out;
  for (const auto& c : psi.components()) out.push_back(c.eval(x));
  return out;
}

Eigen::MatrixXd jacobian(const RealPolyMap& psi, std::span<const double> x) { return MapEvaluator(psi).jacobian(x); }

Eigen::VectorXd grad_norm_sq(const RealPolyMap& psi, std::span<const double> x) {
  return MapEvaluator(psi).grad_norm_sq(x);
}

std::complex<double> eval_mixed(const MixedPolynomial& f, std::span<const std::complex<double>> z) {
  return f.eval(z);
}

MixedEvaluator::MixedEvaluator(const MixedPolynomial& f) : n_(f.n_vars()), f_(f) {
  for (std::size_t i = 0; i < n_; ++i) {
    dz_.push_back(f.wirtinger_dz(i));
    dzbar_.push_back(f.wirtinger_dzbar(i));
  }
}

std::complex<double> MixedEvaluator::value(std::span<const std::complex<double>> z) const { return f_.eval(z); }

void MixedEvaluator::wirtinger(std::span<const std::complex<double>> z, std::vector<std::complex<double>>& dz,
                               std::vector<std::complex<double>>& dzbar) const {
  dz.resize(n_);
  dzbar.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    dz[i] = dz_[i].eval(z);
    dzbar[i] = dzbar_[i].eval(z);
  }
}

}  // namespace milnorkit
