#include "milnorkit/polynomial.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <utility>

#include "milnorkit/error.hpp"

namespace milnorkit {

namespace {

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

// Print order: higher total degree first, then lexicographically larger exponent first.
bool print_before(const Exponents& a, const Exponents& b) {
  auto da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

template <class T>
T ipow(T base, std::uint32_t e) {
  T r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

Rational ipow_q(const Rational& base, std::uint32_t e) {
  Rational r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::string factor_text(const std::string& var, std::size_t index, std::uint32_t e) {
  std::string s = var + std::to_string(index + 1);
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

// Emits " + ", " - " or a leading "-" and the coefficient text in front of a monomial.
void append_signed(std::ostringstream& out, bool first, bool negative, const std::string& magnitude,
                   const std::string& monomial) {
  if (first)
    out << (negative ? "-" : "");
  else
    out << (negative ? " - " : " + ");
  if (monomial.empty())
    out << magnitude;
  else if (magnitude == "1")
    out << monomial;
  else
    out << magnitude << "*" << monomial;
}

}  // namespace

// ---------------------------------------------------------------- RealPolynomial

RealPolynomial::RealPolynomial(std::size_t n_vars) : n_vars_(n_vars) {}

RealPolynomial RealPolynomial::constant(std::size_t n_vars, const Rational& c) {
  RealPolynomial p(n_vars);
  p.add_term(Exponents(n_vars, 0), c);
  return p;
}

RealPolynomial RealPolynomial::variable(std::size_t n_vars, std::size_t index) {
  if (index >= n_vars) throw DimensionError("variable index out of range");
  Exponents e(n_vars, 0);
  e[index] = 1;
  RealPolynomial p(n_vars);
  p.add_term(e, 1);
  return p;
}

RealPolynomial RealPolynomial::monomial(Exponents exps, const Rational& c) {
  RealPolynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

unsigned RealPolynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

Exponents RealPolynomial::max_exponents() const {
  Exponents m(n_vars_, 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t j = 0; j < n_vars_; ++j) m[j] = std::max(m[j], e[j]);
  return m;
}

void RealPolynomial::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != n_vars_) throw DimensionError("exponent vector has wrong length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

RealPolynomial RealPolynomial::derivative(std::size_t index) const {
  if (index >= n_vars_) throw DimensionError("derivative index out of range");
  RealPolynomial d(n_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents f = e;
    f[index] -= 1;
    d.add_term(f, c * e[index]);
  }
  return d;
}

RealPolynomial RealPolynomial::pow(unsigned e) const {
  RealPolynomial r = constant(n_vars_, 1), base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

RealPolynomial RealPolynomial::embed(std::size_t new_n_vars, std::size_t offset) const {
  if (offset + n_vars_ > new_n_vars) throw DimensionError("embedding does not fit");
  RealPolynomial r(new_n_vars);
  for (const auto& [e, c] : terms_) {
    Exponents f(new_n_vars, 0);
    std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(offset));
    r.add_term(f, c);
  }
  return r;
}

RealPolynomial RealPolynomial::restrict_to_zero(const std::vector<std::size_t>& vanishing) const {
  std::vector<bool> drop(n_vars_, false);
  for (auto v : vanishing) {
    if (v >= n_vars_) throw DimensionError("restriction index out of range");
    drop[v] = true;
  }
  std::size_t kept = static_cast<std::size_t>(std::count(drop.begin(), drop.end(), false));
  RealPolynomial r(kept);
  for (const auto& [e, c] : terms_) {
    bool vanishes = false;
    Exponents f;
    f.reserve(kept);
    for (std::size_t j = 0; j < n_vars_; ++j) {
      if (drop[j]) {
        if (e[j] > 0) vanishes = true;
      } else {
        f.push_back(e[j]);
      }
    }
    if (!vanishes) r.add_term(f, c);
  }
  return r;
}

double RealPolynomial::eval(std::span<const double> x) const {
  if (x.size() != n_vars_) throw DimensionError("point dimension does not match polynomial");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (std::size_t j = 0; j < n_vars_; ++j)
      if (e[j]) t *= ipow(x[j], e[j]);
    sum += t;
  }
  return sum;
}

Rational RealPolynomial::eval_exact(std::span<const Rational> x) const {
  if (x.size() != n_vars_) throw DimensionError("point dimension does not match polynomial");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t j = 0; j < n_vars_; ++j)
      if (e[j]) t *= ipow_q(x[j], e[j]);
    sum += t;
  }
  return sum;
}

std::string RealPolynomial::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return print_before(a->first, b->first); });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    std::string mono;
    for (std::size_t j = 0; j < n_vars_; ++j) {
      if (t->first[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += factor_text(var, j, t->first[j]);
    }
    append_signed(out, first, sgn(t->second) < 0, milnorkit::to_string(Rational(abs(t->second))),
                  mono);
    first = false;
  }
  return out.str();
}

void RealPolynomial::check_same_dim(const RealPolynomial& o) const {
  if (o.n_vars_ != n_vars_) throw DimensionError("polynomials live in different variable counts");
}

RealPolynomial& RealPolynomial::operator+=(const RealPolynomial& o) {
  check_same_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

RealPolynomial& RealPolynomial::operator-=(const RealPolynomial& o) {
  check_same_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

RealPolynomial& RealPolynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  a.check_same_dim(b);
  RealPolynomial r(a.n_vars_);
  Exponents e(a.n_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      r.add_term(e, ca * cb);
    }
  return r;
}

// ---------------------------------------------------------------- RealPolyMap

RealPolyMap::RealPolyMap(std::vector<RealPolynomial> components) : components_(std::move(components)) {
  if (components_.size() < 2) throw DimensionError("target dimension p must be at least 2");
  m_ = components_.front().n_vars();
  for (const auto& c : components_)
    if (c.n_vars() != m_) throw DimensionError("components disagree on the source dimension");
}

bool RealPolyMap::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
}

RealPolynomial RealPolyMap::norm_squared() const {
  RealPolynomial s(m_);
  for (const auto& c : components_) s += c * c;
  return s;
}

std::string RealPolyMap::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += ", ";
    s += components_[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------- MixedPolynomial

MixedPolynomial::MixedPolynomial(std::size_t n_vars) : n_vars_(n_vars) {}

MixedPolynomial MixedPolynomial::constant(std::size_t n_vars, const ComplexRational& c) {
  MixedPolynomial f(n_vars);
  f.add_term(Exponents(n_vars, 0), Exponents(n_vars, 0), c);
  return f;
}

MixedPolynomial MixedPolynomial::variable(std::size_t n_vars, std::size_t index, bool conjugate) {
  if (index >= n_vars) throw DimensionError("variable index out of range");
  Exponents nu(n_vars, 0), mu(n_vars, 0);
  (conjugate ? mu : nu)[index] = 1;
  MixedPolynomial f(n_vars);
  f.add_term(nu, mu, ComplexRational(1));
  return f;
}

std::vector<MixedTerm> MixedPolynomial::terms() const {
  std::vector<MixedTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    MixedTerm t;
    t.coeff = c;
    t.nu.assign(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(n_vars_));
    t.mu.assign(key.begin() + static_cast<std::ptrdiff_t>(n_vars_), key.end());
    out.push_back(std::move(t));
  }
  return out;
}

bool MixedPolynomial::is_holomorphic() const {
  for (const auto& [key, c] : terms_)
    for (std::size_t j = n_vars_; j < 2 * n_vars_; ++j)
      if (key[j]) return false;
  return true;
}

void MixedPolynomial::add_term(const Exponents& nu, const Exponents& mu, const ComplexRational& c) {
  if (nu.size() != n_vars_ || mu.size() != n_vars_)
    throw DimensionError("exponent vectors have wrong length");
  if (c.is_zero()) return;
  Exponents key = nu;
  key.insert(key.end(), mu.begin(), mu.end());
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MixedPolynomial MixedPolynomial::wirtinger_dz(std::size_t index) const {
  if (index >= n_vars_) throw DimensionError("derivative index out of range");
  MixedPolynomial d(n_vars_);
  for (const auto& [key, c] : terms_) {
    if (key[index] == 0) continue;
    Exponents k = key;
    k[index] -= 1;
    auto t = c * ComplexRational(Rational(key[index]));
    auto [it, inserted] = d.terms_.try_emplace(std::move(k), t);
    if (!inserted) it->second += t;
  }
  return d;
}

MixedPolynomial MixedPolynomial::wirtinger_dzbar(std::size_t index) const {
  if (index >= n_vars_) throw DimensionError("derivative index out of range");
  MixedPolynomial d(n_vars_);
  const std::size_t slot = n_vars_ + index;
  for (const auto& [key, c] : terms_) {
    if (key[slot] == 0) continue;
    Exponents k = key;
    k[slot] -= 1;
    auto t = c * ComplexRational(Rational(key[slot]));
    auto [it, inserted] = d.terms_.try_emplace(std::move(k), t);
    if (!inserted) it->second += t;
  }
  return d;
}

MixedPolynomial MixedPolynomial::conjugate() const {
  MixedPolynomial g(n_vars_);
  for (const auto& [key, c] : terms_) {
    Exponents nu(key.begin() + static_cast<std::ptrdiff_t>(n_vars_), key.end());
    Exponents mu(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(n_vars_));
    g.add_term(nu, mu, c.conj());
  }
  return g;
}

MixedPolynomial MixedPolynomial::pow(unsigned e) const {
  MixedPolynomial r = constant(n_vars_, ComplexRational(1)), base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

std::complex<double> MixedPolynomial::eval(std::span<const std::complex<double>> z) const {
  if (z.size() != n_vars_) throw DimensionError("point dimension does not match polynomial");
  std::complex<double> sum = 0.0;
  for (const auto& [key, c] : terms_) {
    std::complex<double> t(to_double(c.re), to_double(c.im));
    for (std::size_t j = 0; j < n_vars_; ++j) {
      if (key[j]) t *= ipow(z[j], key[j]);
      if (key[n_vars_ + j]) t *= ipow(std::conj(z[j]), key[n_vars_ + j]);
    }
    sum += t;
  }
  return sum;
}

ComplexRational MixedPolynomial::eval_exact(std::span<const ComplexRational> z) const {
  if (z.size() != n_vars_) throw DimensionError("point dimension does not match polynomial");
  ComplexRational sum;
  for (const auto& [key, c] : terms_) {
    ComplexRational t = c;
    for (std::size_t j = 0; j < n_vars_; ++j) {
      for (std::uint32_t k = 0; k < key[j]; ++k) t = t * z[j];
      for (std::uint32_t k = 0; k < key[n_vars_ + j]; ++k) t = t * z[j].conj();
    }
    sum += t;
  }
  return sum;
}

std::string MixedPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return print_before(a->first, b->first); });
  std::ostringstream out;
  bool first = true;
  for (const auto* t : order) {
    const auto& key = t->first;
    std::string mono;
    for (std::size_t j = 0; j < n_vars_; ++j) {
      if (key[j]) {
        if (!mono.empty()) mono += "*";
        mono += factor_text("z", j, key[j]);
      }
      if (key[n_vars_ + j]) {
        if (!mono.empty()) mono += "*";
        mono += "conj(z" + std::to_string(j + 1) + ")";
        if (key[n_vars_ + j] > 1) mono += "^" + std::to_string(key[n_vars_ + j]);
      }
    }
    const auto& c = t->second;
    bool negative;
    std::string magnitude;
    if (sgn(c.im) == 0) {
      negative = sgn(c.re) < 0;
      magnitude = milnorkit::to_string(Rational(abs(c.re)));
    } else if (sgn(c.re) == 0) {
      negative = sgn(c.im) < 0;
      magnitude = milnorkit::to_string(Rational(abs(c.im))) + "i";
    } else {
      negative = false;
      magnitude = "(" + milnorkit::to_string(c) + ")";
    }
    append_signed(out, first, negative, magnitude, mono);
    first = false;
  }
  return out.str();
}

void MixedPolynomial::check_same_dim(const MixedPolynomial& o) const {
  if (o.n_vars_ != n_vars_) throw DimensionError("polynomials live in different variable counts");
}

MixedPolynomial& MixedPolynomial::operator+=(const MixedPolynomial& o) {
  check_same_dim(o);
  for (const auto& [key, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MixedPolynomial& MixedPolynomial::operator-=(const MixedPolynomial& o) {
  check_same_dim(o);
  for (const auto& [key, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(key, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b) {
  a.check_same_dim(b);
  MixedPolynomial r(a.n_vars_);
  Exponents k(2 * a.n_vars_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      for (std::size_t j = 0; j < k.size(); ++j) k[j] = ka[j] + kb[j];
      auto t = ca * cb;
      auto [it, inserted] = r.terms_.try_emplace(k, t);
      if (!inserted) {
        it->second += t;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  return r;
}

MixedPolynomial operator*(MixedPolynomial a, const ComplexRational& c) {
  if (c.is_zero()) return MixedPolynomial(a.n_vars_);
  for (auto& [k, v] : a.terms_) v = v * c;
  return a;
}

// ---------------------------------------------------------------- realification

namespace {

struct ComplexPoly {
  RealPolynomial re, im;

  ComplexPoly operator*(const ComplexPoly& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

}  // namespace

RealPolyMap realify(const MixedPolynomial& f) {
  const std::size_t n = f.n_vars(), m = 2 * n;
  RealPolynomial zero(m);
  RealPolynomial one = RealPolynomial::constant(m, 1);

  // powers[j][conj][e]
  std::vector<std::array<std::vector<ComplexPoly>, 2>> powers(n);
  auto power = [&](std::size_t j, int conj, std::uint32_t e) -> const ComplexPoly& {
    auto& cache = powers[j][static_cast<std::size_t>(conj)];
    if (cache.empty()) cache.push_back({one, zero});
    while (cache.size() <= e) {
      RealPolynomial x = RealPolynomial::variable(m, 2 * j);
      RealPolynomial y = RealPolynomial::variable(m, 2 * j + 1);
      ComplexPoly base{x, conj ? -y : y};
      cache.push_back(cache.back() * base);
    }
    return cache[e];
  };

  ComplexPoly sum{zero, zero};
  for (const auto& t : f.terms()) {
    ComplexPoly term{RealPolynomial::constant(m, t.coeff.re), RealPolynomial::constant(m, t.coeff.im)};
    for (std::size_t j = 0; j < n; ++j) {
      if (t.nu[j]) term = term * power(j, 0, t.nu[j]);
      if (t.mu[j]) term = term * power(j, 1, t.mu[j]);
    }
    sum.re += term.re;
    sum.im += term.im;
  }
  return RealPolyMap({sum.re, sum.im});
}

std::vector<double> realify_point(std::span<const std::complex<double>> z) {
  std::vector<double> x;
  x.reserve(2 * z.size());
  for (auto c : z) {
    x.push_back(c.real());
    x.push_back(c.imag());
  }
  return x;
}

std::vector<std::complex<double>> complexify_point(std::span<const double> x) {
  if (x.size() % 2) throw DimensionError("realified point must have even length");
  std::vector<std::complex<double>> z(x.size() / 2);
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = {x[2 * j], x[2 * j + 1]};
  return z;
}

}  // namespace milnorkit
