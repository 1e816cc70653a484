#include "milnorkit/corpus.hpp"

#include <algorithm>

#include "milnorkit/error.hpp"
#include "milnorkit/parse.hpp"

namespace milnorkit {

MixedPolynomial CorpusEntry::mixed() const {
  if (kind != CorpusKind::Mixed) throw DomainError("corpus entry '" + id + "' is a real map");
  return parse_mixed(source);
}

RealPolyMap CorpusEntry::map() const { return kind == CorpusKind::Mixed ? realify(mixed()) : parse_real_map(source); }

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"ex_nisol", CorpusKind::Mixed, "conj(z1)*z2^2 + z1*conj(z3)^2",
       "f = conj(x) y^2 + x conj(z)^2 on C^3: nonisolated singular locus, radial homogeneous and polar "
       "weighted-homogeneous",
       RadialWeights{{1, 1, 1}, 3}, PolarWeights{{3, 2, 1}, 1},
       "{y = z = 0} union {x = 0, y = lambda z, |lambda| = 1}, contained in V", "Thm1.7"},
      {"e_thom", CorpusKind::Real, "(x2^4 - x3^2*x1^2 - x1^4, x1*x2)",
       "f(x,y,z) = (y^4 - z^2 x^2 - x^4, xy) on R^3: Sing f = V(f), not radial weighted-homogeneous", std::nullopt,
       std::nullopt, "{x = y = 0} = V", "Thm1.2"},
      {"e_ex2", CorpusKind::Real, "(x2^4 - x3^2*x1^2 - x1^4 + x4^2 - x5^2, x1*x2 + 2*x4*x5)",
       "Thom-Sebastiani sum of e_thom with w^2 in separate variables", std::nullopt, std::nullopt,
       "{x = y = 0, u = v = 0}, contained in V", "Thm1.2"},
      {"holo_a1", CorpusKind::Mixed, "z1^2 + z2^2", "holomorphic A1 singularity on C^2", RadialWeights{{1, 1}, 2},
       PolarWeights{{1, 1}, 2}, "{0}", "Thm1.7"},
      {"fgbar_min", CorpusKind::Mixed, "z1*conj(z2)", "f conj(g) with f = z1, g = z2: the smallest germ of that type",
       RadialWeights{{1, 1}, 2}, PolarWeights{{2, 1}, 1}, "{0}", "Thm1.7"},
  };
  return entries;
}

std::vector<std::string> corpus_list() {
  std::vector<std::string> ids;
  for (const auto& e : corpus()) ids.push_back(e.id);
  return ids;
}

bool corpus_has(std::string_view id) {
  const auto& c = corpus();
  return std::any_of(c.begin(), c.end(), [&](const CorpusEntry& e) { return e.id == id; });
}

const CorpusEntry& corpus_get(std::string_view id) {
  for (const auto& e : corpus())
    if (e.id == id) return e;
  throw DomainError("unknown corpus id '" + std::string(id) + "'");
}

}  // namespace milnorkit
