#include "milnorkit/interval.hpp"

namespace milnorkit {

IntervalQ operator*(const IntervalQ& a, const IntervalQ& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  IntervalQ r{p[0], p[0]};
  for (const auto& v : p) {
    if (v < r.lo) r.lo = v;
    if (v > r.hi) r.hi = v;
  }
  return r;
}

namespace {
Rational qpow(const Rational& a, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}
}  // namespace

IntervalQ pow(const IntervalQ& x, unsigned e) {
  if (e == 0) return {1, 1};
  if (sgn(x.lo) >= 0) return {qpow(x.lo, e), qpow(x.hi, e)};
  if (sgn(x.hi) <= 0) {
    if (e % 2 == 0) return {qpow(x.hi, e), qpow(x.lo, e)};
    return {qpow(x.lo, e), qpow(x.hi, e)};
  }
  if (e % 2 == 0) {
    Rational m = -x.lo > x.hi ? Rational(-x.lo) : x.hi;
    return {0, qpow(m, e)};
  }
  return {qpow(x.lo, e), qpow(x.hi, e)};
}

IntervalBox::IntervalBox(std::vector<IntervalQ> sides) : sides_(std::move(sides)) {
  for (const auto& s : sides_)
    if (s.lo > s.hi) throw DomainError("interval box side with lo > hi");
}

IntervalBox IntervalBox::cube(std::size_t dim, const Rational& r) {
  return IntervalBox(std::vector<IntervalQ>(dim, IntervalQ{Rational(-r), r}));
}

bool IntervalBox::contains(std::span<const double> x) const {
  if (x.size() != sides_.size()) throw DimensionError("point dimension does not match box");
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational v = from_double(x[i]);
    if (v < sides_[i].lo || v > sides_[i].hi) return false;
  }
  return true;
}

std::vector<IntervalD> IntervalBox::to_double() const {
  std::vector<IntervalD> out;
  out.reserve(sides_.size());
  for (const auto& s : sides_) out.push_back({round_down(s.lo), round_up(s.hi)});
  return out;
}

IntervalPolynomial::IntervalPolynomial(const RealPolynomial& p)
    : n_(p.n_vars()), max_exp_(p.max_exponents()) {
  coeffs_.reserve(p.size());
  exps_.reserve(p.size() * n_);
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(enclose(c));
    exps_.insert(exps_.end(), e.begin(), e.end());
  }
}

IntervalD IntervalPolynomial::eval(std::span<const IntervalD> box) const {
  if (box.size() != n_) throw DimensionError("box dimension does not match polynomial");
  // powers[j][e] = x_j^e, each the tight single-variable enclosure
  thread_local std::vector<std::vector<IntervalD>> powers;
  powers.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    powers[j].resize(max_exp_[j] + 1);
    for (std::uint32_t e = 0; e <= max_exp_[j]; ++e) powers[j][e] = pow(box[j], e);
  }
  IntervalD sum{0.0, 0.0};
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    IntervalD term = coeffs_[t];
    const std::uint32_t* e = exps_.data() + t * n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (e[j]) term = term * powers[j][e[j]];
    sum = sum + term;
  }
  return sum;
}

IntervalQ interval_eval(const RealPolynomial& q, const IntervalBox& box) {
  if (box.dim() != q.n_vars()) throw DimensionError("box dimension does not match polynomial");
  const auto max_exp = q.max_exponents();
  std::vector<std::vector<IntervalQ>> powers(q.n_vars());
  for (std::size_t j = 0; j < q.n_vars(); ++j)
    for (std::uint32_t e = 0; e <= max_exp[j]; ++e) powers[j].push_back(pow(box[j], e));
  IntervalQ sum{0, 0};
  for (const auto& [e, c] : q.terms()) {
    IntervalQ term{c, c};
    for (std::size_t j = 0; j < q.n_vars(); ++j)
      if (e[j]) term = term * powers[j][e[j]];
    sum = sum + term;
  }
  return sum;
}

IntervalD interval_eval_float(const RealPolynomial& q, std::span<const IntervalD> box) {
  return IntervalPolynomial(q).eval(box);
}

}  // namespace milnorkit
