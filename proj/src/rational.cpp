#include "milnorkit/rational.hpp"

#include <cmath>
#include <limits>

#include "milnorkit/error.hpp"

namespace milnorkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational pow10(long e) {
  Integer ten = 10, p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("empty number", 0);

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational", 0);
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator", slash + 1);
    value = Rational(Integer(std::string(num)), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_neg = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_neg = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) throw ParseError("malformed exponent", e);
      exponent = std::stol(std::string(exp_text));
      if (exp_neg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto int_part = s.substr(0, dot), frac = s.substr(dot + 1);
      if ((int_part.empty() && frac.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
          (!frac.empty() && !all_digits(frac)))
        throw ParseError("malformed decimal", 0);
      digits = std::string(int_part) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!all_digits(s)) throw ParseError("malformed number", 0);
      digits = std::string(s);
    }
    value = Rational(Integer(digits)) * pow10(exponent);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ComplexRational& c) {
  if (sgn(c.im) == 0) return to_string(c.re);
  std::string im = to_string(abs(c.im));
  if (sgn(c.re) == 0) return (sgn(c.im) < 0 ? "-" : "") + im + "i";
  return to_string(c.re) + (sgn(c.im) < 0 ? "-" : "+") + im + "i";
}

double to_double(const Rational& q) {
  // mpq_get_d truncates; good enough for display and float evaluation.
  return q.get_d();
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational representation");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

double round_down(const Rational& q) {
  double d = q.get_d();
  while (from_double(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double round_up(const Rational& q) {
  double d = q.get_d();
  while (from_double(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace milnorkit
