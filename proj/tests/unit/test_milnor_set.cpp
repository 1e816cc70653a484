#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "milnorkit/corpus.hpp"
#include "milnorkit/error.hpp"
#include "milnorkit/evaluate.hpp"
#include "milnorkit/linalg.hpp"
#include "milnorkit/milnor_set.hpp"
#include "milnorkit/parse.hpp"

using namespace milnorkit;

namespace {

// Sum over row subsets R of size r of det(M_R M_R^T): by Cauchy-Binet this is the
// sum of squares of all r x r minors.
double sos_minors_oracle(const Eigen::MatrixXd& m, std::size_t r) {
  const auto rows = static_cast<std::size_t>(m.rows());
  double total = 0.0;
  std::vector<bool> pick(rows, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(r), true);
  do {
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(r), m.cols());
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < rows; ++i)
      if (pick[i]) sub.row(k++) = m.row(static_cast<Eigen::Index>(i));
    total += (sub * sub.transpose()).determinant();
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return total;
}

}  // namespace

TEST_CASE("sing defect vanishes on the z-axis of the Thom example") {
  auto psi = corpus_get("e_thom").map();
  DefectEvaluator ev(psi);
  for (int i = 0; i < 100; ++i) {
    double z = -1.0 + 2.0 * i / 99.0;
    std::vector<double> x{0.0, 0.0, z};
    CHECK(ev.sing(x) <= 1e-10);
  }
  std::vector<double> off{0.3, 0.2, 0.5};
  CHECK(ev.sing(off) > 1e-3);
}

TEST_CASE("Milnor set of realify(z1) is the plane x3 = x4 = 0") {
  auto psi = realify(parse_mixed("z1", 2));
  REQUIRE(psi.source_dim() == 4);
  std::mt19937_64 rng(2);
  DefectEvaluator ev(psi);
  for (int i = 0; i < 500; ++i) {
    auto x = testutil::uniform_point(rng, 4);
    // rows e1, e2, x: the Gram determinant is x3^2 + x4^2, so the product of the
    // singular values is |(x3, x4)| and the smallest is at most that
    auto sv = singular_values(ev.milnor_matrix(x));
    CHECK(sv(0) * sv(1) * sv(2) == doctest::Approx(std::hypot(x[2], x[3])).epsilon(1e-10));
    CHECK(ev.milnor(x) == doctest::Approx(sv(2)));
    CHECK(ev.milnor(x) <= std::hypot(x[2], x[3]) * (1 + 1e-12));
    x[2] = x[3] = 0.0;
    CHECK(ev.milnor(x) <= 1e-12);
  }
}

TEST_CASE("degenerate and oversized inputs") {
  auto id = parse_real_map("(x1, x2)");
  CHECK_THROWS_AS(milnor_defect(id, std::vector<double>{0.1, 0.2}), DegenerateDimensionError);
  CHECK_THROWS_AS(minor_sos_poly(id, DefectKind::Milnor), DegenerateDimensionError);
  auto big = parse_real_map("(x1 + x9, x2)");
  CHECK_THROWS_AS(minor_sos_poly(big, DefectKind::Sing), SizeLimitError);
  CHECK(parse_defect_kind("omega") == DefectKind::Omega);
  CHECK_THROWS_AS(parse_defect_kind("nope"), DomainError);
}

TEST_CASE("sum of squared minors matches Cauchy-Binet (property)") {
  std::mt19937_64 rng(4);
  std::vector<RealPolyMap> maps{corpus_get("e_thom").map(), corpus_get("ex_nisol").map(),
                                parse_real_map("(x1^2 + x2 x3, x3^2 - x1, x1 x2 x3 + x4)")};
  for (const auto& psi : maps) {
    DefectEvaluator ev(psi);
    const std::size_t p = psi.target_dim();
    for (DefectKind kind : {DefectKind::Sing, DefectKind::Milnor, DefectKind::Omega}) {
      auto q = minor_sos_poly(psi, kind);
      CompiledPolynomial cq(q.poly);
      for (int i = 0; i < 30; ++i) {
        auto x = testutil::uniform_point(rng, psi.source_dim());
        Eigen::MatrixXd m;
        std::size_t r = p;
        if (kind == DefectKind::Sing)
          m = ev.map().jacobian(x);
        else if (kind == DefectKind::Milnor) {
          m = ev.milnor_matrix(x);
          r = p + 1;
        } else
          m = ev.omega_matrix(x).rows;
        double want = sos_minors_oracle(m, r);
        CHECK(cq.eval(x) == doctest::Approx(want).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("numeric and symbolic defects share zero sets") {
  auto psi = corpus_get("e_thom").map();
  auto q = minor_sos_poly(psi, DefectKind::Sing);
  std::vector<double> axis{0.0, 0.0, 0.7};
  CHECK(q.poly.eval(axis) == 0.0);
  CHECK(sing_defect(psi, axis) <= 1e-12);
  auto restricted = restrict_to_zero(q, {0});
  CHECK(restricted.poly.n_vars() == 2);
  std::vector<double> full{0.0, 0.4, -0.3}, cut{0.4, -0.3};
  CHECK(restricted.poly.eval(cut) == doctest::Approx(q.poly.eval(full)));
}

TEST_CASE("Omega matrix rows and hand rank") {
  auto psi = realify(parse_mixed("z1", 2));
  std::vector<double> x{0.3, -0.2, 0.5, 0.1};
  auto om = omega_matrix(psi, x);
  REQUIRE(om.rows.rows() == 2);
  CHECK(om.pairs.size() == 1);
  // omega_12 = x1 e2 - x2 e1
  CHECK(om.rows(0, 0) == doctest::Approx(0.2));
  CHECK(om.rows(0, 1) == doctest::Approx(0.3));
  CHECK(om.rows(1, 2) == doctest::Approx(0.5));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    auto y = testutil::uniform_point(rng, 4);
    if (std::hypot(y[0], y[1]) < 1e-3) continue;
    CHECK(numeric_rank(omega_matrix(psi, y).rows) == 2);
  }
}

TEST_CASE("mixed rho defect agrees with the realified Milnor defect") {
  std::mt19937_64 rng(12);
  for (const char* text : {"z1*conj(z2)", "conj(z1)*z2^2 + z1*conj(z3)^2", "z1^2 + z2^2", "z1"}) {
    CAPTURE(text);
    auto f = parse_mixed(text, std::string(text) == "z1" ? std::optional<std::size_t>(2) : std::nullopt);
    auto psi = realify(f);
    MixedEvaluator mf(f);
    DefectEvaluator ev(psi);
    for (int i = 0; i < 300; ++i) {
      auto z = testutil::complex_point(rng, f.n_vars());
      auto x = realify_point(z);
      auto rho = mixed_rho_defect(mf, z);
      auto mat = ev.milnor_matrix(x);
      auto s = singular_values(mat);
      const bool rho_zero = rho.value <= rank_tolerance(rho.sigma_max);
      const bool mil_zero = ev.milnor(x) <= rank_tolerance(s(0));
      CHECK(rho_zero == mil_zero);
      CHECK(rho.gamma >= 0.0);
    }
  }
  // on M(z1) = {z2 = 0}: gamma z = mu conj(df/dz) + ... has a solution
  auto f = parse_mixed("z1", 2);
  std::vector<std::complex<double>> z{{0.4, -0.3}, {0.0, 0.0}};
  auto rho = mixed_rho_defect(f, z);
  CHECK(rho.value <= 1e-12);
  CHECK(std::abs(rho.mu) > 0.1);
}
