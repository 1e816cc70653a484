#pragma once

// Radial and polar weight systems, their solution lattices, and the R+ / S^1
// actions they induce.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "milnorkit/polynomial.hpp"

namespace milnorkit {

struct RadialWeights {
  std::vector<std::int64_t> q;  // positive, gcd 1
  std::int64_t d = 0;           // positive degree

  friend bool operator==(const RadialWeights&, const RadialWeights&) = default;
};

struct PolarWeights {
  std::vector<std::int64_t> p;  // nonzero, gcd of |p| is 1
  std::int64_t k = 0;           // nonzero degree

  friend bool operator==(const PolarWeights&, const PolarWeights&) = default;
};

/// Integer basis of all (weights..., degree) solving the exponent system.
/// Each basis vector has n + 1 entries, the degree last.
struct WeightLattice {
  std::vector<std::vector<std::int64_t>> basis;
  std::optional<std::vector<std::int64_t>> canonical;
  /// Set when the canonical representative was picked among several independent solutions.
  bool canonical_is_choice = false;

  std::size_t rank() const { return basis.size(); }
  /// True when v (weights..., degree) is an integer combination of the basis.
  bool contains(std::span<const std::int64_t> v) const;
};

struct RadialDetection {
  std::optional<RadialWeights> weights;
  WeightLattice lattice;
};

struct PolarDetection {
  std::optional<PolarWeights> weights;
  WeightLattice lattice;
};

/// Mixed case: sum_j q_j (nu_j + mu_j) = d for every term.
RadialDetection detect_radial(const MixedPolynomial& f);
/// Real case: sum_j q_j a_j = d for every monomial of every component, one common d.
RadialDetection detect_radial(const RealPolyMap& psi);
/// sum_j p_j (nu_j - mu_j) = k for every term.
PolarDetection detect_polar(const MixedPolynomial& f);

/// Weights of the realified coordinates (each q_j repeated for Re z_j and Im z_j).
RadialWeights realified(const RadialWeights& w);

/// z_j -> t^{q_j} z_j. Throws DomainError for t <= 0.
std::vector<std::complex<double>> radial_action(const RadialWeights& w, double t,
                                                std::span<const std::complex<double>> z);
std::vector<double> radial_action(const RadialWeights& w, double t, std::span<const double> x);

/// z_j -> lambda^{p_j} z_j. Throws DomainError unless |lambda| = 1 within 1e-12.
std::vector<std::complex<double>> polar_action(const PolarWeights& w, std::complex<double> lambda,
                                               std::span<const std::complex<double>> z);

/// gamma(x)_j = q_j x_j
std::vector<double> euler_field(const RadialWeights& w, std::span<const double> x);

struct HomogeneityReport {
  double max_residual = 0.0;
  std::size_t samples = 0;
  double tolerance = 1e-10;
  bool passed() const { return max_residual <= tolerance; }
};

HomogeneityReport verify_homogeneity(const MixedPolynomial& f, const RadialWeights& w, std::size_t n_samples,
                                     std::uint64_t seed, double tolerance = 1e-10);
HomogeneityReport verify_homogeneity(const MixedPolynomial& f, const PolarWeights& w, std::size_t n_samples,
                                     std::uint64_t seed, double tolerance = 1e-10);
HomogeneityReport verify_homogeneity(const RealPolyMap& psi, const RadialWeights& w, std::size_t n_samples,
                                     std::uint64_t seed, double tolerance = 1e-10);

std::string to_string(const RadialWeights& w);
std::string to_string(const PolarWeights& w);

}  // namespace milnorkit
