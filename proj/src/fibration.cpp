#include "milnorkit/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "milnorkit/error.hpp"
#include "milnorkit/evaluate.hpp"
#include "milnorkit/linalg.hpp"
#include "milnorkit/milnor_set.hpp"

namespace milnorkit {

PointCloud::PointCloud(std::size_t dim, std::vector<std::string> label_names)
    : dim_(dim), label_names_(std::move(label_names)) {}

void PointCloud::add(std::vector<double> x, std::vector<double> labels) {
  if (x.size() != dim_) throw DimensionError("point dimension does not match the cloud");
  if (labels.size() != label_names_.size()) throw DimensionError("label count does not match the cloud");
  points_.push_back(std::move(x));
  labels_.push_back(std::move(labels));
}

std::size_t PointCloud::label_index(const std::string& name) const {
  auto it = std::find(label_names_.begin(), label_names_.end(), name);
  if (it == label_names_.end()) throw DomainError("cloud has no label '" + name + "'");
  return static_cast<std::size_t>(it - label_names_.begin());
}

bool PointCloud::has_label(const std::string& name) const {
  return std::find(label_names_.begin(), label_names_.end(), name) != label_names_.end();
}

double PointCloud::label(std::size_t i, const std::string& name) const { return labels_.at(i)[label_index(name)]; }

std::vector<double> PointCloud::column(const std::string& name) const {
  auto k = label_index(name);
  std::vector<double> out;
  out.reserve(labels_.size());
  for (const auto& l : labels_) out.push_back(l[k]);
  return out;
}

namespace {

Eigen::VectorXd to_eigen(std::span<const double> x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd gaussian_direction(std::mt19937_64& rng, std::size_t m) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(m));
  do {
    for (auto& c : v) c = g(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

Eigen::VectorXd ball_point(std::mt19937_64& rng, std::size_t m, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto d = gaussian_direction(rng, m);
  return d * radius * std::pow(u(rng), 1.0 / static_cast<double>(m));
}

double radical_inverse(std::size_t i, unsigned base) {
  double r = 0.0, f = 1.0 / base;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return r;
}

std::vector<std::vector<double>> halton_sphere_points(std::size_t dim, std::size_t count) {
  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (dim > std::size(kPrimes)) throw DimensionError("too many target dimensions for page base points");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 1; out.size() < count; ++i) {
    std::vector<double> v(dim);
    double norm2 = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      v[j] = 2.0 * radical_inverse(i, kPrimes[j]) - 1.0;
      norm2 += v[j] * v[j];
    }
    if (norm2 > 1.0 || norm2 < 1e-6) continue;
    for (auto& c : v) c /= std::sqrt(norm2);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

PointCloud sample_sphere(std::size_t m, double eps, std::size_t n, std::uint64_t seed) {
  if (m == 0) throw DimensionError("sphere dimension must be positive");
  if (!(eps > 0)) throw DomainError("sphere radius must be positive");
  std::mt19937_64 rng(seed);
  PointCloud cloud(m, {"radius"});
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd x = gaussian_direction(rng, m) * eps;
    cloud.add(to_std(x), {x.norm()});
  }
  return cloud;
}

PointCloud link_samples(const RealPolyMap& psi, double eps, std::size_t n, double tol, std::uint64_t seed) {
  const std::size_t m = psi.source_dim(), p = psi.target_dim();
  if (!(eps > 0)) throw DomainError("sphere radius must be positive");
  MapEvaluator ev(psi);
  std::mt19937_64 rng(seed);
  PointCloud cloud(m, {"radius", "norm_psi"});
  for (std::size_t attempt = 0; cloud.size() < n && attempt < 20 * n; ++attempt) {
    Eigen::VectorXd x = gaussian_direction(rng, m) * eps;
    for (int it = 0; it < 300; ++it) {
      auto xs = as_span(x);
      Eigen::VectorXd v = ev.value(xs);
      if (v.norm() <= tol) break;
      Eigen::MatrixXd a(p + 1, m);
      a.topRows(p) = ev.jacobian(xs);
      a.row(static_cast<Eigen::Index>(p)) = x.transpose();
      Eigen::VectorXd rhs(p + 1);
      rhs.head(p) = -v;
      rhs[static_cast<Eigen::Index>(p)] = -(x.squaredNorm() - eps * eps) / 2;
      Eigen::VectorXd step = a.completeOrthogonalDecomposition().solve(rhs);
      if (!step.allFinite()) break;
      x += step;
      if (x.norm() == 0) break;
      x *= eps / x.norm();
    }
    double r = ev.value(as_span(x)).norm();
    if (r <= tol && x.allFinite()) cloud.add(to_std(x), {x.norm(), r});
  }
  return cloud;
}

double page_angle(double v1, double v2) {
  double theta = std::atan2(v2, v1);
  if (theta <= 0) theta += 2 * M_PI;
  return theta;
}

std::size_t page_of_angle(double theta, std::size_t bins) {
  if (bins == 0) throw DomainError("page count must be positive");
  double w = 2 * M_PI / static_cast<double>(bins);
  double k = std::ceil(theta / w) - 1;
  return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(bins - 1)));
}

std::size_t page_of_value(std::span<const double> value, std::size_t bins,
                          const std::vector<std::vector<double>>& base_points) {
  if (value.size() == 2) return page_of_angle(page_angle(value[0], value[1]), bins);
  std::size_t best = 0;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < base_points.size(); ++b) {
    double d = std::inner_product(value.begin(), value.end(), base_points[b].begin(), 0.0);
    if (d > best_dot) {
      best_dot = d;
      best = b;
    }
  }
  return best;
}

PageDecomposition page_decompose(const RealPolyMap& psi, double eps, std::size_t n, std::size_t bins,
                                 std::uint64_t seed, double tol) {
  if (bins == 0) throw DomainError("page count must be positive");
  const std::size_t m = psi.source_dim(), p = psi.target_dim();
  PageDecomposition out;
  out.tol = tol;
  std::vector<std::string> names{"page", "theta", "norm_psi", "radius"};
  out.pages.assign(bins, PointCloud(m, names));
  out.link_shell = PointCloud(m, names);
  if (p > 2) out.base_points = halton_sphere_points(p, bins);
  MapEvaluator ev(psi);
  auto sphere = sample_sphere(m, eps, n, seed);
  for (const auto& x : sphere.points()) {
    Eigen::VectorXd v = ev.value(x);
    double r = to_eigen(x).norm(), nv = v.norm();
    if (nv <= tol) {
      out.link_shell.add(x, {-1.0, -1.0, nv, r});
      continue;
    }
    double theta = p == 2 ? page_angle(v[0], v[1]) : -1.0;
    std::size_t page = page_of_value(as_span(v), bins, out.base_points);
    out.pages[page].add(x, {static_cast<double>(page), theta, nv, r});
  }
  return out;
}

namespace {

// Min-norm Gauss-Newton for psi(x) = a.
bool newton_to_value(const MapEvaluator& ev, Eigen::VectorXd& x, const Eigen::VectorXd& a, double tol,
                     int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd r = ev.value(as_span(x)) - a;
    if (r.norm() <= tol) return true;
    Eigen::VectorXd step = ev.jacobian(as_span(x)).completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) return false;
    x += step;
  }
  return (ev.value(as_span(x)) - a).norm() <= tol;
}

}  // namespace

TubeFiberSamples tube_fiber_samples(const RealPolyMap& psi, double eps, double eta, std::span<const double> a,
                                    std::size_t n, std::uint64_t seed) {
  const std::size_t m = psi.source_dim();
  if (a.size() != psi.target_dim()) throw DimensionError("target value has the wrong dimension");
  Eigen::VectorXd av = to_eigen(a);
  if (av.norm() == 0) throw DomainError("tube fibers are taken over a != 0");
  if (av.norm() > eta) throw DomainError("|a| must not exceed eta");
  MapEvaluator ev(psi);
  std::mt19937_64 rng(seed);
  TubeFiberSamples out{PointCloud(m, {"residual", "radius"}), 0};
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd x = ball_point(rng, m, eps);
    bool ok = newton_to_value(ev, x, av, 1e-12, 60);
    double res = (ev.value(as_span(x)) - av).norm();
    if (ok && res <= 1e-10 && x.norm() <= eps) out.cloud.add(to_std(x), {res, x.norm()});
    else ++out.failures;
  }
  return out;
}

namespace {

FieldValue field_at(const MapEvaluator& ev, std::span<const double> x, double blend) {
  Eigen::VectorXd xv = to_eigen(x);
  double nx = xv.norm();
  if (nx == 0) throw DomainError("the blow-out field is undefined at 0");
  Eigen::VectorXd g = ev.grad_norm_sq(x);
  double ng = g.norm();
  if (ng == 0) throw ZeroGradientError("grad |psi|^2 vanishes at the point");
  Eigen::VectorXd xh = xv / nx, gh = g / ng;
  double c = xh.dot(gh);
  constexpr double kMargin = 1e-6;
  for (double b = blend; b >= 0x1p-60; b *= 0.5) {
    if (1.0 + b * c >= kMargin && c + b >= kMargin) return {xh + b * gh, b};
  }
  throw AntiParallelError("x and grad |psi|^2 are anti-parallel; no blend keeps both products positive");
}

}  // namespace

FieldValue milnor_field(const RealPolyMap& psi, std::span<const double> x, double blend) {
  if (x.size() != psi.source_dim()) throw DimensionError("point dimension does not match the map");
  if (!(blend > 0 && blend <= 1)) throw DomainError("blend must lie in (0, 1]");
  return field_at(MapEvaluator(psi), x, blend);
}

namespace {

Eigen::VectorXd rk4(const MapEvaluator& ev, const Eigen::VectorXd& x, double h, double blend) {
  auto f = [&](const Eigen::VectorXd& y) { return field_at(ev, as_span(y), blend).v; };
  Eigen::VectorXd k1 = f(x);
  Eigen::VectorXd k2 = f(x + 0.5 * h * k1);
  Eigen::VectorXd k3 = f(x + 0.5 * h * k2);
  Eigen::VectorXd k4 = f(x + h * k3);
  return x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
}

}  // namespace

FlowTrajectory blow_out_flow(const RealPolyMap& psi, std::span<const double> x0, double eps, double step,
                             std::size_t max_steps, double blend) {
  if (x0.size() != psi.source_dim()) throw DimensionError("start point dimension does not match the map");
  if (!(step > 0)) throw DomainError("step must be positive");
  MapEvaluator ev(psi);
  Eigen::VectorXd x = to_eigen(x0);
  if (!(x.norm() < eps)) throw DomainError("the start point must lie inside the sphere of radius eps");
  FlowTrajectory traj;
  auto record = [&](const Eigen::VectorXd& y) {
    traj.states.push_back(to_std(y));
    traj.radii.push_back(y.norm());
    traj.tube_values.push_back(ev.value(as_span(y)).norm());
  };
  record(x);
  double h = step;
  for (std::size_t n = 0; n < max_steps; ++n) {
    Eigen::VectorXd y = rk4(ev, x, h, blend);
    double ry = y.norm(), ty = ev.value(as_span(y)).norm();
    if (!(ry > traj.radii.back() && ty > traj.tube_values.back())) {
      h *= 0.5;
      ++traj.step_halvings;
      if (h < 1e-14) throw ConvergenceError("blow-out flow step underflow");
      continue;
    }
    if (ry >= eps) {
      // Land on the sphere: bisect the step length.
      double lo = 0.0, hi = h;
      Eigen::VectorXd best = y;
      for (int it = 0; it < 200 && std::fabs(best.norm() - eps) > 1e-13 * eps; ++it) {
        double mid = 0.5 * (lo + hi);
        Eigen::VectorXd z = rk4(ev, x, mid, blend);
        if (z.norm() < eps) lo = mid;
        else hi = mid;
        best = z;
      }
      if (best.norm() > traj.radii.back() && ev.value(as_span(best)).norm() > traj.tube_values.back()) {
        record(best);
      } else {
        record(y);
      }
      return traj;
    }
    x = y;
    record(x);
    h = std::min(step, 2 * h);
  }
  throw ConvergenceError("blow-out flow did not reach the sphere within max_steps");
}

std::vector<std::vector<double>> tube_boundary_points(const RealPolyMap& psi, double eps, double eta, std::size_t n,
                                                      std::uint64_t seed) {
  if (!(eta > 0)) throw DomainError("eta must be positive");
  const std::size_t m = psi.source_dim();
  MapEvaluator ev(psi);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out;
  for (std::size_t attempt = 0; out.size() < n && attempt < 50 * n; ++attempt) {
    Eigen::VectorXd x = ball_point(rng, m, 0.5 * eps);
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
      double h = ev.value(as_span(x)).squaredNorm() - eta * eta;
      if (std::fabs(std::sqrt(h + eta * eta) - eta) <= 1e-12 * eta) {
        ok = true;
        break;
      }
      Eigen::VectorXd g = ev.grad_norm_sq(as_span(x));
      double g2 = g.squaredNorm();
      if (g2 == 0) break;
      x -= h / g2 * g;
    }
    if (ok && x.norm() < 0.9 * eps && x.norm() > 0) out.push_back(to_std(x));
  }
  return out;
}

PointCloud monodromy_transport(const MixedPolynomial& f, const PolarWeights& pw, const PointCloud& cloud,
                               double dtheta) {
  if (pw.k == 0) throw DomainError("polar degree k = 0");
  if (cloud.dim() != 2 * f.n_vars()) throw DimensionError("cloud dimension does not match 2n");
  std::complex<double> lambda = std::polar(1.0, dtheta / static_cast<double>(pw.k));
  PointCloud out(cloud.dim(), cloud.label_names());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto z = complexify_point(cloud.point(i));
    auto moved = realify_point(polar_action(pw, lambda, z));
    std::vector<double> labels;
    for (const auto& name : cloud.label_names()) labels.push_back(cloud.label(i, name));
    out.add(std::move(moved), std::move(labels));
  }
  return out;
}

PointCloud radial_transport(const MixedPolynomial& f, const RadialWeights& rw, const PointCloud& cloud, double t) {
  if (!(t > 0)) throw DomainError("radial transport needs t > 0");
  if (cloud.dim() != 2 * f.n_vars()) throw DimensionError("cloud dimension does not match 2n");
  PointCloud out(cloud.dim(), cloud.label_names());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto z = complexify_point(cloud.point(i));
    auto moved = realify_point(radial_action(rw, t, z));
    std::vector<double> labels;
    for (const auto& name : cloud.label_names()) labels.push_back(cloud.label(i, name));
    out.add(std::move(moved), std::move(labels));
  }
  return out;
}

namespace {

struct FiberSample {
  double norm;
  bool transverse;
};

std::vector<FiberSample> fiber_defects(const MixedPolynomial& f, const MapEvaluator& ev, const MixedEvaluator& mev,
                                       std::complex<double> c, double r_max, std::size_t samples,
                                       std::uint64_t seed) {
  const std::size_t m = 2 * f.n_vars();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Vector2d target(c.real(), c.imag());
  std::vector<FiberSample> out;
  for (std::size_t i = 0; i < samples; ++i) {
    Eigen::VectorXd x = gaussian_direction(rng, m) * (r_max * u(rng));
    if (!newton_to_value(ev, x, target, 1e-11 * (1 + std::abs(c)), 80)) continue;
    if (x.norm() > r_max) continue;
    auto z = complexify_point(as_span(x));
    auto d = mixed_rho_defect(mev, z);
    out.push_back({x.norm(), d.value > rank_tolerance(d.sigma_max)});
  }
  std::sort(out.begin(), out.end(), [](const FiberSample& a, const FiberSample& b) { return a.norm < b.norm; });
  return out;
}

}  // namespace

TransversalityRadius find_transversality_radius(const MixedPolynomial& f, std::complex<double> c, double r_max,
                                                std::size_t samples, std::uint64_t seed) {
  if (c == 0.0) throw DomainError("the fiber value c must be nonzero");
  if (!(r_max > 0)) throw DomainError("R_max must be positive");
  RealPolyMap psi = realify(f);
  MapEvaluator ev(psi);
  MixedEvaluator mev(f);
  TransversalityRadius out;
  auto fiber = fiber_defects(f, ev, mev, c, r_max, samples, seed);
  out.samples = fiber.size();
  if (fiber.empty()) return out;
  std::size_t last_bad = fiber.size();
  for (std::size_t i = 0; i < fiber.size(); ++i)
    if (!fiber[i].transverse) {
      last_bad = i;
      ++out.bad_samples;
      out.max_bad_norm = fiber[i].norm;
    }
  if (last_bad == fiber.size()) out.radius = fiber.front().norm;
  else if (last_bad + 1 < fiber.size()) out.radius = fiber[last_bad + 1].norm;
  if (!out.radius) return out;

  auto half = fiber_defects(f, ev, mev, c / 2.0, r_max, samples, seed + 1);
  out.lemma_consistent = true;
  for (const auto& s : half) {
    if (s.norm < *out.radius) continue;
    ++out.lemma_samples;
    if (!s.transverse) out.lemma_consistent = false;
  }
  if (out.lemma_samples == 0) out.lemma_consistent = false;
  return out;
}

void export_cloud(const PointCloud& cloud, std::ostream& out, CloudFormat format) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (format == CloudFormat::Csv) {
    for (std::size_t j = 0; j < cloud.dim(); ++j) out << (j ? "," : "") << "x" << j + 1;
    for (const auto& name : cloud.label_names()) out << "," << name;
    out << "\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const auto& x = cloud.point(i);
      for (std::size_t j = 0; j < x.size(); ++j) out << (j ? "," : "") << num(x[j]);
      for (const auto& name : cloud.label_names()) out << "," << num(cloud.label(i, name));
      out << "\n";
    }
  } else {
    bool has_page = cloud.has_label("page");
    out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size()
        << "\nproperty double x\nproperty double y\nproperty double z\nproperty int page\nend_header\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const auto& x = cloud.point(i);
      for (std::size_t j = 0; j < 3; ++j) out << (j ? " " : "") << num(j < x.size() ? x[j] : 0.0);
      long page = has_page ? std::lround(cloud.label(i, "page")) : -1;
      out << " " << page << "\n";
    }
  }
  if (!out) throw Error("failed to write point cloud");
}

void export_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  export_cloud(cloud, out, format);
}

}  // namespace milnorkit
