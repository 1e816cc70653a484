#pragma once

// Region certification of positivity of defect polynomials by interval
// branch-and-bound, and the hypothesis checks built on it.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "milnorkit/interval.hpp"
#include "milnorkit/milnor_set.hpp"
#include "milnorkit/polynomial.hpp"
#include "milnorkit/weights.hpp"

namespace milnorkit {

/// Side condition g(x) >= tau. When g is a sum of squares, listing the squared
/// parts gives a tighter enclosure.
struct Constraint {
  RealPolynomial g;
  Rational tau;
  std::vector<RealPolynomial> sos_parts;
  std::string label;

  bool holds(std::span<const double> x) const;
  bool holds_exact(std::span<const Rational> x) const;
};

Constraint at_least(RealPolynomial g, Rational tau, std::string label = {});
/// g <= tau, stored as -g >= -tau.
Constraint at_most(const RealPolynomial& g, const Rational& tau, std::string label = {});
/// ||psi||^2 >= tau
Constraint norm_sq_at_least(const RealPolyMap& psi, Rational tau);
/// ||psi||^2 <= tau
Constraint norm_sq_at_most(const RealPolyMap& psi, const Rational& tau);
/// ||x||^2 over the listed coordinates (all when empty) compared with r2.
Constraint radius_sq_at_least(std::size_t m, Rational r2, const std::vector<std::size_t>& coords = {});
Constraint radius_sq_at_most(std::size_t m, const Rational& r2, const std::vector<std::size_t>& coords = {});

struct Region {
  IntervalBox box;
  std::vector<Constraint> constraints;

  std::size_t dim() const { return box.dim(); }
  bool contains(std::span<const double> x) const;
  bool contains_exact(std::span<const Rational> x) const;
  std::string to_string() const;
};

/// Parses "box:[a,b]x[c,d]x...; g >= tau; g <= tau" with g a polynomial in x1..xm.
Region parse_region(std::string_view text, std::size_t m);

enum class Status { Certified, CounterexampleFound, Inconclusive };
/// Rigorous: interval branch-and-bound. Sampled: random evaluation only, a heuristic.
enum class Mode { Rigorous, Sampled };

std::string to_string(Status s);
std::string to_string(Mode m);

struct Verdict {
  Status status = Status::Inconclusive;
  Mode mode = Mode::Rigorous;
  /// Certified: exact lower bound of the defect over the region (> 0). In sampled
  /// mode this is the smallest sampled value.
  Rational bound;
  /// CounterexampleFound: point (full coordinates) and defect value there.
  std::vector<double> point;
  double value = 0.0;
  std::size_t boxes_explored = 0;
  std::size_t boxes_remaining = 0;
  std::size_t boxes_discarded = 0;
  /// Inconclusive: lower bound over the unresolved boxes.
  double best_bound = 0.0;
  double tol = 0.0;
  std::size_t samples = 0;
  std::string region;
  std::string note;
};

struct BBOptions {
  std::size_t budget = 1'000'000;
  /// A point with defect <= tol counts as a counterexample.
  double tol = 1e-12;
  /// Rational interval endpoints throughout instead of outward-rounded doubles.
  bool exact = false;
  /// 0 means hardware concurrency, further capped by MILNORKIT_THREADS.
  unsigned threads = 0;
  /// Boxes narrower than this are not split further.
  double min_width = 1e-9;
};

Verdict bb_positivity(const DefectFunction& q, const Region& region, const BBOptions& opts = {});
Verdict bb_positivity(const RealPolynomial& q, const Region& region, const BBOptions& opts = {});

/// Called with every Certified rigorous verdict. Used by audits and tests; one
/// observer at a time. MILNORKIT_CERT_LOG=<path> additionally appends each
/// certificate as one JSON line.
using CertificateObserver = std::function<void(const DefectFunction&, const Region&, const Verdict&)>;
void set_certificate_observer(CertificateObserver observer);

/// Random-sample version of a positivity check with the numeric defect (heuristic).
Verdict sample_positivity(const RealPolyMap& psi, DefectKind kind, const Region& region, std::size_t n,
                          std::uint64_t seed);

struct CheckOptions {
  BBOptions bb;
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
};

/// Sing psi avoids {x in [-eps, eps]^m : ||psi||^2 >= tau}.
Verdict check_sing_in_V(const RealPolyMap& psi, const Rational& eps, const Rational& tau,
                        const CheckOptions& opts = {});

/// M(psi) does not meet the shell. The shell should keep away from V.
Verdict check_milnor_condition(const RealPolyMap& psi, const Region& shell, const CheckOptions& opts = {});

/// {x in [-eps, eps]^m : ||x||^2 >= r_in^2, delta2 <= ||psi||^2 <= eta2}: points near V, off V, away from 0.
Region milnor_shell(const RealPolyMap& psi, const Rational& eps, const Rational& r_in, const Rational& delta2,
                    const Rational& eta2);

struct ShellLevel {
  Rational delta2;
  Rational eta2;
};

/// Milnor shells with shrinking eta, tried in order until one certifies. The germ
/// condition only asks for some eta at each inner radius, so a counterexample at a
/// larger eta is not final. Returns the last verdict tried; earlier outcomes go in its note.
Verdict check_milnor_ladder(const RealPolyMap& psi, const Rational& eps, const Rational& r_in,
                            const std::vector<ShellLevel>& ladder, const CheckOptions& opts = {});

/// For each tau: the Omega defect is positive on {x in B_eps : ||psi||^2 >= tau}.
std::vector<Verdict> check_omega_empty(const RealPolyMap& psi, const Rational& eps,
                                       const std::vector<Rational>& ladder, const CheckOptions& opts = {});

/// Mixed version. Uses the polar torus symmetry of f (when the polar lattice is
/// nontrivial) to restrict to a slice where some coordinates are real and
/// nonnegative; the defect and ||psi|| are invariant, so the slice certificate
/// covers the whole ball.
std::vector<Verdict> check_omega_empty(const MixedPolynomial& f, const Rational& eps,
                                       const std::vector<Rational>& ladder, const CheckOptions& opts = {});

struct SebastianiResult {
  RealPolyMap map;
  /// Combined radial weights (l/d_psi q_psi, l/d_phi q_phi), degree l = lcm(d_psi, d_phi).
  std::optional<RadialWeights> weights;
  /// Set only when both inputs were asserted Thom regular by the caller.
  bool thom_regular = false;
};

/// (psi + phi)(x, w) = psi(x) + phi(w). Throws DimensionError on target mismatch and
/// DomainError when either summand is the zero map.
SebastianiResult sebastiani_sum(const RealPolyMap& psi, const RealPolyMap& phi, bool psi_thom = false,
                                bool phi_thom = false);
/// f(z) + g(w) in separate variables.
MixedPolynomial sebastiani_sum(const MixedPolynomial& f, const MixedPolynomial& g);
std::optional<RadialWeights> combine_weights(const RadialWeights& a, const RadialWeights& b);

/// Approach curve data for the Thom sampler. Curves and the stratum are
/// polynomial in t; a curve starts on the stratum at t = 0.
struct ThomCurveReport {
  std::string curve;
  std::vector<double> t;
  /// sin of the angle between the stratum tangent and its projection onto the
  /// fiber tangent space (the orthogonal complement of span grad psi_i).
  std::vector<double> sin_angle;
  double limit_estimate = 0.0;
  std::string trend;
};

struct ThomReport {
  std::vector<ThomCurveReport> curves;
  std::string label = "heuristic";
};

/// stratum: parameterization s(t) of a piece of Sing psi; tangent taken at t = base.
ThomReport thom_defect_sampler(const RealPolyMap& psi, const std::vector<RealPolynomial>& stratum, double base,
                               const std::vector<std::vector<RealPolynomial>>& curves, double t0 = 0.5,
                               std::size_t steps = 24);

}  // namespace milnorkit
