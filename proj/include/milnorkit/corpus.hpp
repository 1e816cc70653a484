#pragma once

// Built-in example germs with the facts the test suite re-derives.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "milnorkit/polynomial.hpp"
#include "milnorkit/weights.hpp"

namespace milnorkit {

enum class CorpusKind { Mixed, Real };

struct CorpusEntry {
  std::string id;
  CorpusKind kind = CorpusKind::Mixed;
  std::string source;
  std::string provenance;
  std::optional<RadialWeights> radial;
  std::optional<PolarWeights> polar;
  std::string sing_locus;
  std::string expected_path;

  MixedPolynomial mixed() const;  // throws DomainError for real entries
  RealPolyMap map() const;        // realified for mixed entries
};

const std::vector<CorpusEntry>& corpus();
std::vector<std::string> corpus_list();
/// Throws DomainError for an unknown id.
const CorpusEntry& corpus_get(std::string_view id);
bool corpus_has(std::string_view id);

}  // namespace milnorkit
