#pragma once

#include <complex>
#include <random>
#include <vector>

#include "milnorkit/polynomial.hpp"

namespace testutil {

inline std::vector<double> uniform_point(std::mt19937_64& rng, std::size_t m, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(m);
  for (auto& v : x) v = u(rng);
  return x;
}

inline std::vector<std::complex<double>> complex_point(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> z(n);
  for (auto& v : z) v = {g(rng), g(rng)};
  return z;
}

// Small random polynomial with integer coefficients in [-5, 5].
inline milnorkit::RealPolynomial random_poly(std::mt19937_64& rng, std::size_t n, std::size_t terms, unsigned max_exp) {
  std::uniform_int_distribution<int> c(-5, 5), e(0, static_cast<int>(max_exp));
  milnorkit::RealPolynomial p(n);
  for (std::size_t t = 0; t < terms; ++t) {
    milnorkit::Exponents a(n);
    for (auto& v : a) v = static_cast<std::uint32_t>(e(rng));
    p.add_term(a, c(rng));
  }
  return p;
}

}  // namespace testutil
