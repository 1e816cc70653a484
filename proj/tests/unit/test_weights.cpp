#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "milnorkit/certify.hpp"
#include "milnorkit/corpus.hpp"
#include "milnorkit/error.hpp"
#include "milnorkit/milnor_set.hpp"
#include "milnorkit/parse.hpp"
#include "milnorkit/weights.hpp"

using namespace milnorkit;

namespace {

// Brute force: every (w..., degree) with entries in the given ranges solving the term system.
std::vector<std::vector<std::int64_t>> brute_force(const MixedPolynomial& f, bool polar) {
  const std::size_t n = f.n_vars();
  std::vector<std::vector<std::int64_t>> hits;
  std::vector<std::int64_t> w(n, 0);
  std::vector<std::int64_t> values;
  for (int v = polar ? -6 : 1; v <= 6; ++v)
    if (v != 0) values.push_back(v);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= values.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = values[r % values.size()];
      r /= values.size();
    }
    std::optional<std::int64_t> deg;
    bool ok = true;
    for (const auto& t : f.terms()) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (polar ? static_cast<std::int64_t>(t.nu[i]) - static_cast<std::int64_t>(t.mu[i])
                           : static_cast<std::int64_t>(t.nu[i] + t.mu[i]));
      if (deg && *deg != s) ok = false;
      deg = s;
    }
    if (!ok || !deg || *deg == 0 || std::abs(*deg) > 36 || (!polar && *deg < 0)) continue;
    auto v = w;
    v.push_back(*deg);
    hits.push_back(v);
  }
  return hits;
}

}  // namespace

TEST_CASE("nonisolated example weights") {
  auto f = corpus_get("ex_nisol").mixed();
  auto r = detect_radial(f);
  REQUIRE(r.weights);
  CHECK(r.weights->q == std::vector<std::int64_t>{1, 1, 1});
  CHECK(r.weights->d == 3);
  auto p = detect_polar(f);
  REQUIRE(p.weights);
  CHECK(p.weights->p == std::vector<std::int64_t>{3, 2, 1});
  CHECK(p.weights->k == 1);
  CHECK(p.lattice.rank() == 2);
  CHECK(p.lattice.canonical_is_choice);
  CHECK(to_string(*p.weights) == "p=(3,2,1), k=1");
  CHECK(to_string(*r.weights) == "q=(1,1,1), d=3");
}

TEST_CASE("corpus weights are re-derived") {
  for (const auto& e : corpus()) {
    CAPTURE(e.id);
    if (e.kind == CorpusKind::Mixed) {
      auto f = e.mixed();
      CHECK(detect_radial(f).weights == e.radial);
      CHECK(detect_polar(f).weights == e.polar);
    } else {
      CHECK(detect_radial(e.map()).weights == e.radial);
      CHECK_FALSE(e.polar);
    }
  }
}

TEST_CASE("lattice completeness against brute force") {
  for (const auto& e : corpus()) {
    if (e.kind != CorpusKind::Mixed) continue;
    CAPTURE(e.id);
    auto f = e.mixed();
    auto radial = detect_radial(f);
    for (const auto& v : brute_force(f, false)) CHECK(radial.lattice.contains(v));
    auto polar = detect_polar(f);
    for (const auto& v : brute_force(f, true)) CHECK(polar.lattice.contains(v));
  }
  // a vector off the lattice
  auto lat = detect_polar(corpus_get("ex_nisol").mixed()).lattice;
  std::vector<std::int64_t> off{1, 1, 1, 1};
  CHECK_FALSE(lat.contains(off));
}

TEST_CASE("detection soundness: every term equation holds exactly") {
  std::vector<std::string> inputs{"z1^3 + z2^2", "z1^2 conj(z2) + z2^3 conj(z1)^0", "z1 conj(z1) + z2 conj(z2)",
                                  "z1^2*z2 + conj(z3)^3"};
  for (const auto& text : inputs) {
    CAPTURE(text);
    auto f = parse_mixed(text);
    auto r = detect_radial(f);
    if (r.weights)
      for (const auto& t : f.terms()) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < f.n_vars(); ++i) s += r.weights->q[i] * (t.nu[i] + t.mu[i]);
        CHECK(s == r.weights->d);
      }
    auto p = detect_polar(f);
    if (p.weights)
      for (const auto& t : f.terms()) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < f.n_vars(); ++i)
          s += p.weights->p[i] * (static_cast<std::int64_t>(t.nu[i]) - static_cast<std::int64_t>(t.mu[i]));
        CHECK(s == p.weights->k);
      }
  }
  // |z|^2 has polar degree 0: no polar weights
  CHECK_FALSE(detect_polar(parse_mixed("z1 conj(z1) + z2 conj(z2)")).weights);
  // Brieskorn-Pham z1^3 + z2^2: q = (2, 3), d = 6
  auto bp = detect_radial(parse_mixed("z1^3 + z2^2"));
  REQUIRE(bp.weights);
  CHECK(bp.weights->q == std::vector<std::int64_t>{2, 3});
  CHECK(bp.weights->d == 6);
}

TEST_CASE("real maps need one common degree") {
  CHECK_FALSE(detect_radial(corpus_get("e_thom").map()).weights);
  CHECK_FALSE(detect_radial(corpus_get("e_ex2").map()).weights);
  auto r = detect_radial(parse_real_map("(x1^2 - x2^2, x1*x2)"));
  REQUIRE(r.weights);
  CHECK(r.weights->d == 2);
  // separate variables can always be balanced
  auto sep = detect_radial(parse_real_map("(x1^2, x2^3)"));
  REQUIRE(sep.weights);
  CHECK(sep.weights->q == std::vector<std::int64_t>{3, 2});
  CHECK(sep.weights->d == 6);
  // x1^2 and x1^3 cannot share a degree
  CHECK_FALSE(detect_radial(parse_real_map("(x1^2, x1^3)")).weights);
}

TEST_CASE("actions: homogeneity identities") {
  for (const auto& e : corpus()) {
    if (e.kind != CorpusKind::Mixed) continue;
    CAPTURE(e.id);
    auto f = e.mixed();
    CHECK(verify_homogeneity(f, *e.radial, 200, 3).passed());
    CHECK(verify_homogeneity(f, *e.polar, 200, 4).passed());
    CHECK(verify_homogeneity(e.map(), realified(*e.radial), 200, 5).passed());
  }
  // wrong weights are rejected
  auto f = corpus_get("ex_nisol").mixed();
  CHECK_FALSE(verify_homogeneity(f, PolarWeights{{1, 1, 1}, 1}, 50, 1).passed());
}

TEST_CASE("polar action preserves the norm, radial scales it") {
  std::mt19937_64 rng(8);
  PolarWeights pw{{3, 2, 1}, 1};
  RadialWeights ones{{1, 1, 1}, 3};
  for (int i = 0; i < 200; ++i) {
    auto z = testutil::complex_point(rng, 3);
    double th = std::uniform_real_distribution<double>(0, 6.3)(rng);
    auto w = polar_action(pw, std::polar(1.0, th), z);
    double n0 = 0, n1 = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      n0 += std::norm(z[j]);
      n1 += std::norm(w[j]);
    }
    CHECK(std::abs(std::sqrt(n1) - std::sqrt(n0)) <= 1e-12 * std::sqrt(n0));
    auto r = radial_action(ones, 2.5, z);
    double n2 = 0;
    for (auto& v : r) n2 += std::norm(v);
    CHECK(std::sqrt(n2) == doctest::Approx(2.5 * std::sqrt(n0)).epsilon(1e-13));
  }
  std::vector<std::complex<double>> z{{1, 0}, {0, 1}, {1, 1}};
  CHECK_THROWS_AS(polar_action(pw, {2.0, 0.0}, z), DomainError);
  CHECK_THROWS_AS(radial_action(ones, 0.0, z), DomainError);
}

TEST_CASE("Euler field is tangent to the Omega rows") {
  std::mt19937_64 rng(21);
  for (const char* id : {"ex_nisol", "holo_a1", "fgbar_min"}) {
    const auto& e = corpus_get(id);
    auto psi = e.map();
    auto q = realified(*e.radial);
    for (int i = 0; i < 100; ++i) {
      auto x = testutil::uniform_point(rng, psi.source_dim());
      auto om = omega_matrix(psi, x);
      auto g = euler_field(q, x);
      Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(g.size()));
      for (Eigen::Index r = 0; r + 1 < om.rows.rows(); ++r) {
        double scale = om.rows.row(r).norm() * gv.norm() + 1.0;
        CHECK(std::abs(om.rows.row(r).dot(gv)) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("combined weights of a separate-variable sum") {
  auto w = combine_weights(RadialWeights{{1, 1}, 2}, RadialWeights{{1, 1}, 3});
  REQUIRE(w);
  CHECK(w->q == std::vector<std::int64_t>{3, 3, 2, 2});
  CHECK(w->d == 6);
  auto same = combine_weights(RadialWeights{{2, 3}, 6}, RadialWeights{{1}, 2});
  REQUIRE(same);
  CHECK(same->q == std::vector<std::int64_t>{2, 3, 3});
  CHECK(same->d == 6);
}
