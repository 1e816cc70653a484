#pragma once

// Samplers for the link, the pages of psi/|psi| on a sphere, tube fibers,
// the polar and radial transports, and the blow-out flow.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "milnorkit/polynomial.hpp"
#include "milnorkit/weights.hpp"

namespace milnorkit {

class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<std::string> label_names);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<double>& point(std::size_t i) const { return points_[i]; }
  const std::vector<std::string>& label_names() const { return label_names_; }
  /// Throws DimensionError unless sizes match the cloud.
  void add(std::vector<double> x, std::vector<double> labels);
  double label(std::size_t i, const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
  bool has_label(const std::string& name) const;

 private:
  std::size_t label_index(const std::string& name) const;

  std::size_t dim_ = 0;
  std::vector<std::string> label_names_;
  std::vector<std::vector<double>> points_;
  std::vector<std::vector<double>> labels_;
};

/// Uniform points on the sphere of radius eps (normalized Gaussians). Label: radius.
PointCloud sample_sphere(std::size_t m, double eps, std::size_t n, std::uint64_t seed);

/// Points of V on the sphere of radius eps: Gauss-Newton on (psi, |x|^2 - eps^2)
/// from random sphere points, projected back to the sphere after every step.
/// Labels: radius, norm_psi. Empty when no start reaches tol.
PointCloud link_samples(const RealPolyMap& psi, double eps, std::size_t n, double tol, std::uint64_t seed);

/// Page index of the angle theta in (0, 2pi]; a boundary angle goes to the lower bin.
std::size_t page_of_angle(double theta, std::size_t bins);
/// atan2(v2, v1) moved to (0, 2pi].
double page_angle(double v1, double v2);

struct PageDecomposition {
  std::vector<PointCloud> pages;
  /// Sphere samples with |psi| <= tol, assigned to no page.
  PointCloud link_shell;
  /// For p > 2: base points on S^{p-1}; pages are nearest-base-point cells.
  std::vector<std::vector<double>> base_points;
  double tol = 0.0;
};

/// Labels: page, theta (p = 2; -1 otherwise), norm_psi, radius.
PageDecomposition page_decompose(const RealPolyMap& psi, double eps, std::size_t n, std::size_t bins,
                                 std::uint64_t seed, double tol = 1e-8);
/// Page of a point for the decomposition's base points (p > 2) or angle bins (p = 2).
std::size_t page_of_value(std::span<const double> value, std::size_t bins,
                          const std::vector<std::vector<double>>& base_points);

struct TubeFiberSamples {
  PointCloud cloud;  // labels: residual, radius
  std::size_t failures = 0;
};

/// Points of psi^{-1}(a) inside the ball of radius eps by Newton refinement from
/// random starts. Requires 0 < |a| <= eta.
TubeFiberSamples tube_fiber_samples(const RealPolyMap& psi, double eps, double eta, std::span<const double> a,
                                    std::size_t n, std::uint64_t seed);

struct FieldValue {
  Eigen::VectorXd v;
  double blend = 0.0;
};

/// v = x/|x| + b g/|g| with g = grad |psi|^2 and b the largest dyadic <= blend
/// keeping <x, v> and <g, v> (normalized) at least 1e-6.
/// Throws AntiParallelError or ZeroGradientError.
FieldValue milnor_field(const RealPolyMap& psi, std::span<const double> x, double blend = 1.0);

struct FlowTrajectory {
  std::vector<std::vector<double>> states;
  std::vector<double> radii;
  std::vector<double> tube_values;
  std::size_t step_halvings = 0;
};

/// RK4 integration of milnor_field from x0 until |x| = eps (bisection on the last step).
/// A step that breaks monotonicity of |x| or |psi| is retried with half the step.
/// Throws ConvergenceError when max_steps is exceeded.
FlowTrajectory blow_out_flow(const RealPolyMap& psi, std::span<const double> x0, double eps, double step = 0.02,
                             std::size_t max_steps = 20000, double blend = 1.0);

/// Points with |psi(x)| = eta and |x| < eps, for starting blow-out trajectories.
std::vector<std::vector<double>> tube_boundary_points(const RealPolyMap& psi, double eps, double eta, std::size_t n,
                                                      std::uint64_t seed);

/// z_j -> lambda^{p_j} z_j with lambda = exp(i dtheta / k), on realified points. Throws DomainError for k = 0.
PointCloud monodromy_transport(const MixedPolynomial& f, const PolarWeights& pw, const PointCloud& cloud,
                               double dtheta);

/// z_j -> t^{q_j} z_j on realified points. Throws DomainError for t <= 0.
PointCloud radial_transport(const MixedPolynomial& f, const RadialWeights& rw, const PointCloud& cloud, double t);

struct TransversalityRadius {
  std::optional<double> radius;
  std::size_t samples = 0;
  std::size_t bad_samples = 0;
  /// Largest norm of a fiber sample where the sphere is not transverse (0 if none).
  double max_bad_norm = 0.0;
  /// Defect stays positive on f^{-1}(c/2) at norms >= radius.
  bool lemma_consistent = false;
  std::size_t lemma_samples = 0;
};

/// Smallest sampled R with the mixed rho defect above tolerance at every sample of
/// f^{-1}(c) with norm in [R, R_max]. Throws DomainError for c = 0.
TransversalityRadius find_transversality_radius(const MixedPolynomial& f, std::complex<double> c, double r_max,
                                                std::size_t samples, std::uint64_t seed);

enum class CloudFormat { Csv, Ply };

/// CSV: x1..xm then the labels, %.17g. PLY: ascii 1.0, x y z (first three coordinates) and an int page property.
void export_cloud(const PointCloud& cloud, std::ostream& out, CloudFormat format);
void export_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format);

}  // namespace milnorkit
