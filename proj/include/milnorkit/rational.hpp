#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace milnorkit {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact complex number with rational real and imaginary parts.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  ComplexRational conj() const { return {re, -im}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Parses "3", "-7/2", "0.125", "1.5e-3". Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& q);

/// Human-readable complex literal: "3", "-1/2i", "1+2i".
std::string to_string(const ComplexRational& c);

double to_double(const Rational& q);

/// Exact rational value of a finite double.
Rational from_double(double x);

/// Largest double <= q and smallest double >= q.
double round_down(const Rational& q);
double round_up(const Rational& q);

}  // namespace milnorkit
