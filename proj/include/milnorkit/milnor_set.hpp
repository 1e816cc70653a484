#pragma once

// Defect functions for the non-regularity loci of psi: Sing psi, the Milnor
// set M(psi) and M(psi/||psi||) through the Omega matrix. Numeric defects are
// singular values; symbolic defects are sums of squared minors.

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "milnorkit/evaluate.hpp"
#include "milnorkit/polynomial.hpp"

namespace milnorkit {

enum class DefectKind { Sing, Milnor, Omega };

std::string to_string(DefectKind kind);
DefectKind parse_defect_kind(std::string_view text);

/// Rows omega_{ij} = psi_i grad psi_j - psi_j grad psi_i for i < j (lexicographic), then the row x.
struct OmegaMatrix {
  Eigen::MatrixXd rows;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

OmegaMatrix omega_matrix(const RealPolyMap& psi, std::span<const double> x);

/// Batch-friendly evaluation of the three numeric defects for one map.
class DefectEvaluator {
 public:
  explicit DefectEvaluator(const RealPolyMap& psi);
  const MapEvaluator& map() const { return eval_; }

  /// p-th singular value of D psi(x).
  double sing(std::span<const double> x) const;
  /// (p+1)-th singular value of [D psi(x); x]. Throws DegenerateDimensionError when m = p.
  double milnor(std::span<const double> x) const;
  /// p-th singular value of Omega_psi(x).
  double omega(std::span<const double> x) const;
  double operator()(DefectKind kind, std::span<const double> x) const;

  Eigen::MatrixXd milnor_matrix(std::span<const double> x) const;
  OmegaMatrix omega_matrix(std::span<const double> x) const;

 private:
  MapEvaluator eval_;
};

double sing_defect(const RealPolyMap& psi, std::span<const double> x);
double milnor_defect(const RealPolyMap& psi, std::span<const double> x);
double omega_defect(const RealPolyMap& psi, std::span<const double> x);

/// Smallest singular value of the 2n x 3 real matrix [x | grad Re f | grad Im f]
/// (x realified). Zero exactly when gamma z = mu conj(df/dz) + conj(mu) df/dzbar has a
/// nontrivial solution. gamma and mu are read off the minimizing unit direction,
/// with the sign chosen so gamma >= 0.
struct RhoDefect {
  double value = 0.0;
  double gamma = 0.0;
  std::complex<double> mu;
  /// Largest singular value of the same matrix, for scale-aware thresholds.
  double sigma_max = 0.0;
};

RhoDefect mixed_rho_defect(const MixedPolynomial& f, std::span<const std::complex<double>> z);
RhoDefect mixed_rho_defect(const MixedEvaluator& f, std::span<const std::complex<double>> z);

inline constexpr std::size_t kMaxMinorSourceDim = 8;
inline constexpr std::size_t kMaxMinorTargetDim = 3;

/// Sum of squares of all r x r minors of the kind's matrix, kept exact.
struct DefectFunction {
  DefectKind kind = DefectKind::Sing;
  std::size_t minor_size = 0;
  RealPolynomial poly;
  std::vector<RealPolynomial> minors;
  std::string scale;
};

/// Throws SizeLimitError beyond m <= 8, p <= 3 and DegenerateDimensionError for the
/// milnor kind when m = p.
DefectFunction minor_sos_poly(const RealPolyMap& psi, DefectKind kind);

/// The same defect with some variables pinned to zero (the variables are dropped).
DefectFunction restrict_to_zero(const DefectFunction& q, const std::vector<std::size_t>& vanishing);

}  // namespace milnorkit
