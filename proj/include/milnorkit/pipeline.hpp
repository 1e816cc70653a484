#pragma once

// Theorem-path selection: weight detection plus region certification of the
// hypotheses, with every gap between region and germ recorded as a caveat.

#include <optional>
#include <string>
#include <vector>

#include "milnorkit/certify.hpp"
#include "milnorkit/weights.hpp"

namespace milnorkit {

enum class TheoremPath { None, Thm1_2, Thm1_5, Thm1_7 };

/// "Thm1.2", "Thm1.5", "Thm1.7" or "none".
std::string to_string(TheoremPath path);

struct ConditionResult {
  std::string name;
  std::string region;
  /// Region checks carry a verdict; weight conditions are decided exactly and carry none.
  std::optional<Verdict> verdict;
  bool holds = false;
  std::string mode;
  std::string note;
};

struct PipelineOptions {
  Rational eps = 1;
  Rational tau_sing{1, 10000};
  /// Milnor-condition shells: |x| >= shell_inner, delta2 <= |psi|^2 <= eta2, first certified level wins.
  Rational shell_inner{1, 2};
  std::vector<ShellLevel> shell_ladder{{Rational(1, 10000), Rational(1, 1000)},
                                       {Rational(1, 1000000), Rational(1, 100000)}};
  std::vector<Rational> omega_ladder{Rational(1, 100), Rational(1, 1000)};
  CheckOptions check;
  std::size_t homogeneity_samples = 100;
  std::uint64_t seed = 1;
};

struct PipelineReport {
  std::string input;
  std::string kind;  // "mixed" or "real"
  std::size_t m = 0, p = 0;
  std::optional<RadialDetection> radial;
  std::optional<PolarDetection> polar;
  std::vector<ConditionResult> conditions;
  TheoremPath path = TheoremPath::None;
  std::vector<std::string> caveats;
  bool degenerate = false;

  const ConditionResult* find(const std::string& name) const;
};

PipelineReport run_pipeline(const MixedPolynomial& f, const PipelineOptions& opts = {});
PipelineReport run_pipeline(const RealPolyMap& psi, const PipelineOptions& opts = {});

/// 0 when a path is certified, 2 when some check found a counterexample, 3 otherwise.
int exit_code(const PipelineReport& report);

}  // namespace milnorkit
