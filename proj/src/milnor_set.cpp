#include "milnorkit/milnor_set.hpp"

#include <algorithm>
#include <functional>

#include "milnorkit/error.hpp"
#include "milnorkit/linalg.hpp"

namespace milnorkit {

std::string to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::Sing: return "sing";
    case DefectKind::Milnor: return "milnor";
    case DefectKind::Omega: return "omega";
  }
  return "?";
}

DefectKind parse_defect_kind(std::string_view text) {
  if (text == "sing") return DefectKind::Sing;
  if (text == "milnor") return DefectKind::Milnor;
  if (text == "omega") return DefectKind::Omega;
  throw DomainError("unknown defect kind '" + std::string(text) + "'");
}

DefectEvaluator::DefectEvaluator(const RealPolyMap& psi) : eval_(psi) {}

double DefectEvaluator::sing(std::span<const double> x) const {
  return kth_singular_value(eval_.jacobian(x), eval_.target_dim());
}

Eigen::MatrixXd DefectEvaluator::milnor_matrix(std::span<const double> x) const {
  const auto m = eval_.source_dim(), p = eval_.target_dim();
  Eigen::MatrixXd a(p + 1, m);
  a.topRows(p) = eval_.jacobian(x);
  for (std::size_t j = 0; j < m; ++j) a(p, j) = x[j];
  return a;
}

double DefectEvaluator::milnor(std::span<const double> x) const {
  if (eval_.source_dim() == eval_.target_dim())
    throw DegenerateDimensionError("m = p: [D psi; x] never has rank p + 1, so M(psi) = R^m");
  return kth_singular_value(milnor_matrix(x), eval_.target_dim() + 1);
}

OmegaMatrix DefectEvaluator::omega_matrix(std::span<const double> x) const {
  const auto m = eval_.source_dim(), p = eval_.target_dim();
  auto v = eval_.value(x);
  auto jac = eval_.jacobian(x);
  OmegaMatrix out;
  out.rows.resize(p * (p - 1) / 2 + 1, m);
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      out.rows.row(r++) = v[i] * jac.row(j) - v[j] * jac.row(i);
      out.pairs.emplace_back(i, j);
    }
  for (std::size_t j = 0; j < m; ++j) out.rows(r, j) = x[j];
  return out;
}

double DefectEvaluator::omega(std::span<const double> x) const {
  return kth_singular_value(omega_matrix(x).rows, eval_.target_dim());
}

double DefectEvaluator::operator()(DefectKind kind, std::span<const double> x) const {
  switch (kind) {
    case DefectKind::Sing: return sing(x);
    case DefectKind::Milnor: return milnor(x);
    case DefectKind::Omega: return omega(x);
  }
  return 0.0;
}

OmegaMatrix omega_matrix(const RealPolyMap& psi, std::span<const double> x) {
  return DefectEvaluator(psi).omega_matrix(x);
}

double sing_defect(const RealPolyMap& psi, std::span<const double> x) { return DefectEvaluator(psi).sing(x); }
double milnor_defect(const RealPolyMap& psi, std::span<const double> x) { return DefectEvaluator(psi).milnor(x); }
double omega_defect(const RealPolyMap& psi, std::span<const double> x) { return DefectEvaluator(psi).omega(x); }

RhoDefect mixed_rho_defect(const MixedEvaluator& f, std::span<const std::complex<double>> z) {
  const std::size_t n = f.n_vars();
  if (z.size() != n) throw DimensionError("point has " + std::to_string(z.size()) + " coordinates, expected " +
                                          std::to_string(n));
  std::vector<std::complex<double>> dz, dzbar;
  f.wirtinger(z, dz, dzbar);
  Eigen::MatrixXd a(2 * n, 3);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> grad_re = dzbar[j] + std::conj(dz[j]);
    std::complex<double> grad_im = std::complex<double>(0, 1) * (std::conj(dz[j]) - dzbar[j]);
    a(2 * j, 0) = z[j].real();
    a(2 * j + 1, 0) = z[j].imag();
    a(2 * j, 1) = grad_re.real();
    a(2 * j + 1, 1) = grad_re.imag();
    a(2 * j, 2) = grad_im.real();
    a(2 * j + 1, 2) = grad_im.imag();
  }
  RhoDefect out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  out.sigma_max = s[0];
  // With n = 1 the matrix is 2 x 3 and always has a kernel vector.
  out.value = s.size() > 2 ? s[2] : 0.0;
  Eigen::Vector3d v = svd.matrixV().col(2);
  if (v[0] < 0) v = -v;
  out.gamma = v[0];
  out.mu = {-v[1], -v[2]};
  return out;
}

RhoDefect mixed_rho_defect(const MixedPolynomial& f, std::span<const std::complex<double>> z) {
  return mixed_rho_defect(MixedEvaluator(f), z);
}

namespace {

using PolyMatrix = std::vector<std::vector<RealPolynomial>>;

RealPolynomial determinant(const PolyMatrix& a, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  const std::size_t r = rows.size();
  const std::size_t n_vars = a[0][0].n_vars();
  if (r == 1) return a[rows[0]][cols[0]];
  if (r == 2)
    return a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]];
  // Laplace expansion along the first row.
  RealPolynomial det(n_vars);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < r; ++k) {
    const auto& entry = a[rows[0]][cols[k]];
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t c = 0; c < r; ++c)
      if (c != k) sub_cols.push_back(cols[c]);
    RealPolynomial term = entry * determinant(a, sub_rows, sub_cols);
    if (k % 2) det -= term;
    else det += term;
  }
  return det;
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

DefectFunction minor_sos_poly(const RealPolyMap& psi, DefectKind kind) {
  const std::size_t m = psi.source_dim(), p = psi.target_dim();
  if (m > kMaxMinorSourceDim || p > kMaxMinorTargetDim)
    throw SizeLimitError("exact minor expansion limited to m <= 8 and p <= 3 (got m = " + std::to_string(m) +
                         ", p = " + std::to_string(p) + ")");
  if (m < p) throw DimensionError("source dimension must be at least the target dimension");
  if (kind == DefectKind::Milnor && m == p)
    throw DegenerateDimensionError("m = p: [D psi; x] never has rank p + 1, so M(psi) = R^m");

  PolyMatrix jac(p, std::vector<RealPolynomial>(m, RealPolynomial(m)));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < m; ++j) jac[i][j] = psi[i].derivative(j);
  std::vector<RealPolynomial> position;
  for (std::size_t j = 0; j < m; ++j) position.push_back(RealPolynomial::variable(m, j));

  PolyMatrix a;
  std::size_t r = p;
  DefectFunction out;
  out.kind = kind;
  switch (kind) {
    case DefectKind::Sing:
      a = jac;
      out.scale = "sum of squared p x p minors of D psi";
      break;
    case DefectKind::Milnor:
      a = jac;
      a.push_back(position);
      r = p + 1;
      out.scale = "sum of squared (p+1) x (p+1) minors of [D psi; x], x unnormalized";
      break;
    case DefectKind::Omega:
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
          std::vector<RealPolynomial> row;
          for (std::size_t c = 0; c < m; ++c) row.push_back(psi[i] * jac[j][c] - psi[j] * jac[i][c]);
          a.push_back(std::move(row));
        }
      a.push_back(position);
      out.scale = "sum of squared p x p minors of Omega_psi(x), x unnormalized";
      break;
  }
  out.minor_size = r;
  out.poly = RealPolynomial(m);
  for_each_combination(a.size(), r, [&](const std::vector<std::size_t>& rows) {
    for_each_combination(m, r, [&](const std::vector<std::size_t>& cols) {
      RealPolynomial d = determinant(a, rows, cols);
      if (d.is_zero()) return;
      out.poly += d * d;
      out.minors.push_back(std::move(d));
    });
  });
  return out;
}

DefectFunction restrict_to_zero(const DefectFunction& q, const std::vector<std::size_t>& vanishing) {
  DefectFunction out;
  out.kind = q.kind;
  out.minor_size = q.minor_size;
  out.scale = q.scale;
  out.poly = q.poly.restrict_to_zero(vanishing);
  for (const auto& mnr : q.minors) {
    auto r = mnr.restrict_to_zero(vanishing);
    if (!r.is_zero()) out.minors.push_back(std::move(r));
  }
  return out;
}

}  // namespace milnorkit
