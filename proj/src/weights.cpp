#include "milnorkit/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "milnorkit/error.hpp"

namespace milnorkit {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

// Integer kernel of A (rows x cols) by unimodular column operations: A U becomes
// column echelon; the columns of U past the last pivot span ker A over Z.
IntMatrix integer_kernel(IntMatrix a, std::size_t cols) {
  IntMatrix u(cols, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
  auto col_op = [&](std::size_t ca, std::size_t cb, const Integer& s, const Integer& t, const Integer& x,
                    const Integer& y) {
    // new_a = s*a + t*b ; new_b = x*a + y*b
    auto apply = [&](IntMatrix& m) {
      for (auto& row : m) {
        Integer va = row[ca], vb = row[cb];
        row[ca] = s * va + t * vb;
        row[cb] = x * va + y * vb;
      }
    };
    apply(a);
    apply(u);
  };

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < a.size() && pivot < cols; ++i) {
    for (std::size_t j = pivot + 1; j < cols; ++j) {
      if (a[i][j] == 0) continue;
      if (a[i][pivot] == 0) {
        col_op(pivot, j, 0, 1, 1, 0);  // swap
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][pivot].get_mpz_t(), a[i][j].get_mpz_t());
      Integer x = -a[i][j] / g, y = a[i][pivot] / g;
      col_op(pivot, j, s, t, x, y);
    }
    if (a[i][pivot] != 0) ++pivot;
  }
  IntMatrix basis;
  for (std::size_t j = pivot; j < cols; ++j) {
    std::vector<Integer> v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational dot(const std::vector<Integer>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

// Textbook LLL (delta = 3/4) with exact rational Gram-Schmidt.
void lll_reduce(IntMatrix& b) {
  const std::size_t k_max = b.size();
  if (k_max < 2) return;
  const std::size_t n = b[0].size();
  auto gram_schmidt = [&](std::vector<std::vector<Rational>>& bs, std::vector<std::vector<Rational>>& mu,
                          std::vector<Rational>& norms) {
    bs.assign(k_max, std::vector<Rational>(n));
    mu.assign(k_max, std::vector<Rational>(k_max, 0));
    norms.assign(k_max, 0);
    for (std::size_t i = 0; i < k_max; ++i) {
      for (std::size_t c = 0; c < n; ++c) bs[i][c] = b[i][c];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], bs[j]) / norms[j];
        for (std::size_t c = 0; c < n; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
      }
      for (std::size_t c = 0; c < n; ++c) norms[i] += bs[i][c] * bs[i][c];
    }
  };
  std::vector<std::vector<Rational>> bs, mu;
  std::vector<Rational> norms;
  gram_schmidt(bs, mu, norms);
  std::size_t k = 1;
  const Rational delta(3, 4);
  int guard = 0;
  while (k < k_max && guard++ < 10000) {
    for (std::size_t jj = k; jj-- > 0;) {
      Rational m = mu[k][jj];
      if (abs(m) > Rational(1, 2)) {
        Integer r;
        Rational shifted = m + Rational(1, 2);
        mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        for (std::size_t c = 0; c < n; ++c) b[k][c] -= r * b[jj][c];
        gram_schmidt(bs, mu, norms);
      }
    }
    if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt(bs, mu, norms);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error("weight lattice entry does not fit in 64 bits");
  return z.get_si();
}

std::vector<std::vector<std::int64_t>> to_i64(const IntMatrix& m) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : m) {
    std::vector<std::int64_t> r;
    for (const auto& v : row) r.push_back(to_i64(v));
    out.push_back(std::move(r));
  }
  return out;
}

// Rows: one per exponent vector e, equation sum_j w_j e_j - degree = 0.
IntMatrix system_matrix(const std::vector<std::vector<std::int64_t>>& rows, std::size_t n) {
  IntMatrix a;
  for (const auto& e : rows) {
    std::vector<Integer> r(n + 1);
    for (std::size_t j = 0; j < n; ++j) r[j] = static_cast<long>(e[j]);
    r[n] = -1;
    a.push_back(std::move(r));
  }
  return a;
}

IntMatrix reduced_lattice(const std::vector<std::vector<std::int64_t>>& rows, std::size_t n) {
  IntMatrix basis = integer_kernel(system_matrix(rows, n), n + 1);
  lll_reduce(basis);
  // Deterministic orientation: first nonzero entry positive.
  for (auto& v : basis) {
    auto it = std::find_if(v.begin(), v.end(), [](const Integer& z) { return z != 0; });
    if (it != v.end() && *it < 0)
      for (auto& z : v) z = -z;
  }
  return basis;
}

std::int64_t gcd_abs(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

// Enumerates integer combinations of the basis with coefficients in [-B, B].
template <class Visit>
void enumerate_lattice(const std::vector<std::vector<std::int64_t>>& basis, Visit&& visit) {
  const std::size_t r = basis.size();
  if (r == 0) return;
  const std::size_t n = basis[0].size();
  static constexpr int kBounds[] = {0, 1, 40, 12, 5, 3};
  const int bound = r < 6 ? kBounds[r] : 2;
  std::vector<int> c(r, -bound);
  std::vector<std::int64_t> v(n);
  while (true) {
    std::fill(v.begin(), v.end(), 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) v[j] += c[i] * basis[i][j];
    visit(v);
    std::size_t i = 0;
    while (i < r && ++c[i] > bound) c[i++] = -bound;
    if (i == r) break;
  }
}

std::optional<RadialWeights> canonical_radial(const std::vector<std::vector<std::int64_t>>& basis, std::size_t n) {
  std::optional<RadialWeights> best;
  enumerate_lattice(basis, [&](std::vector<std::int64_t> v) {
    if (v[n] < 0)
      for (auto& x : v) x = -x;
    if (v[n] <= 0) return;
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] <= 0) return;
    std::int64_t g = gcd_abs(std::span<const std::int64_t>(v.data(), n));
    RadialWeights w;
    for (std::size_t j = 0; j < n; ++j) w.q.push_back(v[j] / g);
    w.d = v[n] / g;
    if (!best || std::tie(w.d, w.q) < std::tie(best->d, best->q)) best = w;
  });
  return best;
}

auto polar_key(const PolarWeights& w) {
  std::int64_t negatives = 0, l1 = 0;
  for (auto x : w.p) {
    negatives += x < 0;
    l1 += x < 0 ? -x : x;
  }
  return std::make_tuple(w.k < 0 ? -w.k : w.k, negatives, l1, w.p);
}

std::optional<PolarWeights> canonical_polar(const std::vector<std::vector<std::int64_t>>& basis, std::size_t n) {
  std::optional<PolarWeights> best;
  enumerate_lattice(basis, [&](std::vector<std::int64_t> v) {
    if (v[n] == 0) return;
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] == 0) return;
    if (v[n] < 0)
      for (auto& x : v) x = -x;
    std::int64_t g = gcd_abs(std::span<const std::int64_t>(v.data(), n));
    PolarWeights w;
    for (std::size_t j = 0; j < n; ++j) w.p.push_back(v[j] / g);
    w.k = v[n] / g;
    if (!best || polar_key(w) < polar_key(*best)) best = w;
  });
  return best;
}

RadialDetection finish_radial(const std::vector<std::vector<std::int64_t>>& rows, std::size_t n) {
  RadialDetection out;
  auto basis = to_i64(reduced_lattice(rows, n));
  out.lattice.basis = basis;
  out.weights = canonical_radial(basis, n);
  if (out.weights) {
    auto c = out.weights->q;
    c.push_back(out.weights->d);
    out.lattice.canonical = c;
    out.lattice.canonical_is_choice = basis.size() > 1;
  }
  return out;
}

}  // namespace

bool WeightLattice::contains(std::span<const std::int64_t> v) const {
  const std::size_t r = basis.size();
  if (r == 0) return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
  const std::size_t n = basis[0].size();
  if (v.size() != n) throw DimensionError("vector length does not match lattice");
  // Solve sum_i c_i basis_i = v over Q by elimination on the n x (r+1) system.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(r + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < r; ++i) m[j][i] = static_cast<long>(basis[i][j]);
    m[j][r] = static_cast<long>(v[j]);
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < r && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[row], m[piv]);
    for (std::size_t rr = 0; rr < n; ++rr) {
      if (rr == row || m[rr][col] == 0) continue;
      Rational f = m[rr][col] / m[row][col];
      for (std::size_t cc = col; cc <= r; ++cc) m[rr][cc] -= f * m[row][cc];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t rr = row; rr < n; ++rr)
    if (m[rr][r] != 0) return false;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    Rational c = m[k][r] / m[k][pivots[k]];
    if (c.get_den() != 1) return false;
  }
  return true;
}

RadialDetection detect_radial(const MixedPolynomial& f) {
  if (f.is_zero()) throw DomainError("weight detection needs a nonzero polynomial");
  const std::size_t n = f.n_vars();
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& t : f.terms()) {
    std::vector<std::int64_t> e(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = t.nu[j] + t.mu[j];
    rows.push_back(std::move(e));
  }
  return finish_radial(rows, n);
}

RadialDetection detect_radial(const RealPolyMap& psi) {
  if (psi.is_zero()) throw DomainError("weight detection needs a nonzero map");
  const std::size_t m = psi.source_dim();
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& c : psi.components())
    for (const auto& [e, coeff] : c.terms()) rows.emplace_back(e.begin(), e.end());
  return finish_radial(rows, m);
}

PolarDetection detect_polar(const MixedPolynomial& f) {
  if (f.is_zero()) throw DomainError("weight detection needs a nonzero polynomial");
  const std::size_t n = f.n_vars();
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& t : f.terms()) {
    std::vector<std::int64_t> e(n);
    for (std::size_t j = 0; j < n; ++j)
      e[j] = static_cast<std::int64_t>(t.nu[j]) - static_cast<std::int64_t>(t.mu[j]);
    rows.push_back(std::move(e));
  }
  PolarDetection out;
  auto basis = to_i64(reduced_lattice(rows, n));
  out.lattice.basis = basis;
  out.weights = canonical_polar(basis, n);
  if (out.weights) {
    auto c = out.weights->p;
    c.push_back(out.weights->k);
    out.lattice.canonical = c;
    out.lattice.canonical_is_choice = basis.size() > 1;
  }
  return out;
}

RadialWeights realified(const RadialWeights& w) {
  RadialWeights r;
  for (auto q : w.q) {
    r.q.push_back(q);
    r.q.push_back(q);
  }
  r.d = w.d;
  return r;
}

std::vector<std::complex<double>> radial_action(const RadialWeights& w, double t,
                                                std::span<const std::complex<double>> z) {
  if (!(t > 0)) throw DomainError("radial action needs t > 0");
  if (z.size() != w.q.size()) throw DimensionError("point dimension does not match weights");
  std::vector<std::complex<double>> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = std::pow(t, static_cast<double>(w.q[j])) * z[j];
  return out;
}

std::vector<double> radial_action(const RadialWeights& w, double t, std::span<const double> x) {
  if (!(t > 0)) throw DomainError("radial action needs t > 0");
  if (x.size() != w.q.size()) throw DimensionError("point dimension does not match weights");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = std::pow(t, static_cast<double>(w.q[j])) * x[j];
  return out;
}

std::vector<std::complex<double>> polar_action(const PolarWeights& w, std::complex<double> lambda,
                                               std::span<const std::complex<double>> z) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw DomainError("polar action needs |lambda| = 1");
  if (z.size() != w.p.size()) throw DimensionError("point dimension does not match weights");
  std::vector<std::complex<double>> out(z.size());
  const double theta = std::arg(lambda);
  for (std::size_t j = 0; j < z.size(); ++j)
    out[j] = std::polar(1.0, theta * static_cast<double>(w.p[j])) * z[j];
  return out;
}

std::vector<double> euler_field(const RadialWeights& w, std::span<const double> x) {
  if (x.size() != w.q.size()) throw DimensionError("point dimension does not match weights");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = static_cast<double>(w.q[j]) * x[j];
  return out;
}

namespace {

double term_magnitude(const MixedPolynomial& f, std::span<const std::complex<double>> z) {
  double s = 0;
  for (const auto& t : f.terms()) {
    double v = std::hypot(to_double(t.coeff.re), to_double(t.coeff.im));
    for (std::size_t j = 0; j < z.size(); ++j) v *= std::pow(std::abs(z[j]), t.nu[j] + t.mu[j]);
    s += v;
  }
  return s;
}

double relative_gap(std::complex<double> lhs, std::complex<double> rhs, double scale) {
  double denom = std::max({std::abs(lhs), std::abs(rhs), scale});
  return denom == 0 ? 0.0 : std::abs(lhs - rhs) / denom;
}

std::vector<std::complex<double>> random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> z(n);
  for (auto& c : z) c = {u(rng), u(rng)};
  return z;
}

double random_scale(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(0.25), std::log(4.0));
  return std::exp(u(rng));
}

}  // namespace

HomogeneityReport verify_homogeneity(const MixedPolynomial& f, const RadialWeights& w, std::size_t n_samples,
                                     std::uint64_t seed, double tolerance) {
  if (w.q.size() != f.n_vars()) throw DimensionError("weights do not match variable count");
  std::mt19937_64 rng(seed);
  HomogeneityReport rep{0.0, n_samples, tolerance};
  for (std::size_t s = 0; s < n_samples; ++s) {
    auto z = random_point(rng, f.n_vars());
    double t = random_scale(rng);
    auto tz = radial_action(w, t, z);
    double td = std::pow(t, static_cast<double>(w.d));
    double scale = std::max(term_magnitude(f, tz), td * term_magnitude(f, z));
    rep.max_residual = std::max(rep.max_residual, relative_gap(f.eval(tz), td * f.eval(z), scale));
  }
  return rep;
}

HomogeneityReport verify_homogeneity(const MixedPolynomial& f, const PolarWeights& w, std::size_t n_samples,
                                     std::uint64_t seed, double tolerance) {
  if (w.p.size() != f.n_vars()) throw DimensionError("weights do not match variable count");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  HomogeneityReport rep{0.0, n_samples, tolerance};
  for (std::size_t s = 0; s < n_samples; ++s) {
    auto z = random_point(rng, f.n_vars());
    double theta = angle(rng);
    auto lz = polar_action(w, std::polar(1.0, theta), z);
    auto rhs = std::polar(1.0, theta * static_cast<double>(w.k)) * f.eval(z);
    rep.max_residual = std::max(rep.max_residual, relative_gap(f.eval(lz), rhs, term_magnitude(f, z)));
  }
  return rep;
}

HomogeneityReport verify_homogeneity(const RealPolyMap& psi, const RadialWeights& w, std::size_t n_samples,
                                     std::uint64_t seed, double tolerance) {
  const std::size_t m = psi.source_dim();
  if (w.q.size() != m) throw DimensionError("weights do not match variable count");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HomogeneityReport rep{0.0, n_samples, tolerance};
  for (std::size_t s = 0; s < n_samples; ++s) {
    std::vector<double> x(m);
    for (auto& v : x) v = u(rng);
    double t = random_scale(rng);
    auto tx = radial_action(w, t, x);
    double td = std::pow(t, static_cast<double>(w.d));
    for (const auto& c : psi.components()) {
      double lhs = c.eval(tx), rhs = td * c.eval(x);
      double scale = 0;
      for (const auto& [e, coeff] : c.terms()) {
        double v = std::fabs(to_double(coeff));
        for (std::size_t j = 0; j < m; ++j) v *= std::pow(std::fabs(tx[j]), e[j]);
        scale += v;
      }
      rep.max_residual = std::max(rep.max_residual, relative_gap(lhs, rhs, scale));
    }
  }
  return rep;
}

std::string to_string(const RadialWeights& w) {
  std::ostringstream out;
  out << "q=(";
  for (std::size_t i = 0; i < w.q.size(); ++i) out << (i ? "," : "") << w.q[i];
  out << "), d=" << w.d;
  return out.str();
}

std::string to_string(const PolarWeights& w) {
  std::ostringstream out;
  out << "p=(";
  for (std::size_t i = 0; i < w.p.size(); ++i) out << (i ? "," : "") << w.p[i];
  out << "), k=" << w.k;
  return out.str();
}

}  // namespace milnorkit
