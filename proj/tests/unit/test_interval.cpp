#include <doctest.h>

#include "helpers.hpp"
#include "milnorkit/interval.hpp"
#include "milnorkit/parse.hpp"

using namespace milnorkit;

TEST_CASE("outward rounded arithmetic encloses the exact result") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    IntervalD x{std::min(a, b), std::max(a, b)}, y{std::min(c, d), std::max(c, d)};
    Rational xl = from_double(x.lo), yl = from_double(y.lo), yh = from_double(y.hi);
    auto s = x + y;
    CHECK(from_double(s.lo) <= xl + yl);
    CHECK(from_double(s.hi) >= from_double(x.hi) + yh);
    auto p = x * y;
    for (const Rational& xv : {xl, from_double(x.hi)})
      for (const Rational& yv : {yl, yh}) {
        Rational prod = xv * yv;
        CHECK(from_double(p.lo) <= prod);
        CHECK(from_double(p.hi) >= prod);
      }
  }
}

TEST_CASE("exact results are not widened") {
  IntervalD a{1.0, 2.0}, b{0.5, 0.25 + 0.5};
  auto s = a + b;
  CHECK(s.lo == 1.5);
  CHECK(s.hi == 2.75);
  auto p = a * IntervalD{2.0, 4.0};
  CHECK(p.lo == 2.0);
  CHECK(p.hi == 8.0);
}

TEST_CASE("even powers of a straddling interval start at zero") {
  auto sq = pow(IntervalD{-1.0, 2.0}, 2);
  CHECK(sq.lo == 0.0);
  CHECK(sq.hi == 4.0);
  auto cube = pow(IntervalD{-1.0, 2.0}, 3);
  CHECK(cube.lo == -1.0);
  CHECK(cube.hi == 8.0);
  auto q = pow(IntervalQ{Rational(-1, 2), Rational(1, 3)}, 2);
  CHECK(q.lo == 0);
  CHECK(q.hi == Rational(1, 4));
  // x*x with interval multiplication is wider than x^2
  IntervalD x{-1.0, 1.0};
  CHECK((x * x).lo == -1.0);
}

TEST_CASE("polynomial enclosures contain sampled values (property)") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = testutil::random_poly(rng, 3, 8, 4);
    std::vector<IntervalQ> sides;
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 3; ++i) {
      double a = u(rng), b = u(rng);
      sides.push_back({from_double(std::min(a, b)), from_double(std::max(a, b))});
    }
    IntervalBox box(sides);
    auto exact = interval_eval(p, box);
    auto fl = interval_eval_float(p, box.to_double());
    IntervalPolynomial ip(p);
    auto fl2 = ip.eval(box.to_double());
    CHECK(from_double(fl.lo) <= exact.lo);
    CHECK(from_double(fl.hi) >= exact.hi);
    CHECK(fl2.lo <= fl.hi);
    for (int s = 0; s < 50; ++s) {
      std::vector<Rational> x;
      for (int i = 0; i < 3; ++i) {
        double t = std::uniform_real_distribution<double>(0, 1)(rng);
        x.push_back(sides[i].lo + from_double(t) * (sides[i].hi - sides[i].lo));
      }
      Rational v = p.eval_exact(x);
      CHECK(exact.contains(v));
      CHECK(from_double(fl2.lo) <= v);
      CHECK(from_double(fl2.hi) >= v);
    }
  }
}

TEST_CASE("box helpers") {
  auto cube = IntervalBox::cube(3, Rational(1, 2));
  CHECK(cube.dim() == 3);
  std::vector<double> in{0.5, -0.5, 0.0}, out{0.5, 0.51, 0.0};
  CHECK(cube.contains(in));
  CHECK_FALSE(cube.contains(out));
  CHECK_THROWS_AS(make_interval(1.0, 0.0), DomainError);
}
