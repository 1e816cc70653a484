#include "milnorkit/certify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "milnorkit/error.hpp"
#include "milnorkit/evaluate.hpp"
#include "milnorkit/linalg.hpp"
#include "milnorkit/parse.hpp"

namespace milnorkit {

// ---------------------------------------------------------------- constraints

bool Constraint::holds(std::span<const double> x) const { return g.eval(x) >= to_double(tau); }

bool Constraint::holds_exact(std::span<const Rational> x) const { return g.eval_exact(x) >= tau; }

Constraint at_least(RealPolynomial g, Rational tau, std::string label) {
  return {std::move(g), std::move(tau), {}, std::move(label)};
}

Constraint at_most(const RealPolynomial& g, const Rational& tau, std::string label) {
  return {-g, Rational(-tau), {}, std::move(label)};
}

Constraint norm_sq_at_least(const RealPolyMap& psi, Rational tau) {
  Constraint c{psi.norm_squared(), tau, psi.components(), {}};
  c.label = "|psi|^2 >= " + to_string(c.tau);
  return c;
}

Constraint norm_sq_at_most(const RealPolyMap& psi, const Rational& tau) {
  return at_most(psi.norm_squared(), tau, "|psi|^2 <= " + to_string(tau));
}

namespace {

std::vector<RealPolynomial> coordinate_parts(std::size_t m, const std::vector<std::size_t>& coords) {
  std::vector<RealPolynomial> parts;
  if (coords.empty()) {
    for (std::size_t j = 0; j < m; ++j) parts.push_back(RealPolynomial::variable(m, j));
  } else {
    for (auto j : coords) parts.push_back(RealPolynomial::variable(m, j));
  }
  return parts;
}

std::string coords_label(const std::vector<std::size_t>& coords) {
  if (coords.empty()) return "|x|^2";
  std::string s;
  for (auto j : coords) s += (s.empty() ? "" : "+") + ("x" + std::to_string(j + 1) + "^2");
  return s;
}

}  // namespace

Constraint radius_sq_at_least(std::size_t m, Rational r2, const std::vector<std::size_t>& coords) {
  auto parts = coordinate_parts(m, coords);
  RealPolynomial g(m);
  for (const auto& p : parts) g += p * p;
  std::string label = coords_label(coords) + " >= " + to_string(r2);
  return {std::move(g), std::move(r2), std::move(parts), std::move(label)};
}

Constraint radius_sq_at_most(std::size_t m, const Rational& r2, const std::vector<std::size_t>& coords) {
  auto parts = coordinate_parts(m, coords);
  RealPolynomial g(m);
  for (const auto& p : parts) g += p * p;
  return at_most(g, r2, coords_label(coords) + " <= " + to_string(r2));
}

bool Region::contains(std::span<const double> x) const {
  if (!box.contains(x)) return false;
  return std::all_of(constraints.begin(), constraints.end(), [&](const Constraint& c) { return c.holds(x); });
}

bool Region::contains_exact(std::span<const Rational> x) const {
  if (x.size() != box.dim()) throw DimensionError("point dimension does not match region");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < box[i].lo || x[i] > box[i].hi) return false;
  return std::all_of(constraints.begin(), constraints.end(), [&](const Constraint& c) { return c.holds_exact(x); });
}

std::string Region::to_string() const {
  std::ostringstream out;
  out << "box:";
  for (std::size_t i = 0; i < box.dim(); ++i)
    out << (i ? "x" : "") << "[" << milnorkit::to_string(box[i].lo) << "," << milnorkit::to_string(box[i].hi) << "]";
  for (const auto& c : constraints) {
    out << "; ";
    if (!c.label.empty()) out << c.label;
    else out << c.g.to_string() << " >= " << milnorkit::to_string(c.tau);
  }
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

IntervalQ parse_side(const std::string& text) {
  if (text.size() < 5 || text.front() != '[' || text.back() != ']')
    throw ParseError("expected an interval [a,b] in '" + text + "'", 0);
  auto parts = split(std::string_view(text).substr(1, text.size() - 2), ',');
  if (parts.size() != 2) throw ParseError("expected an interval [a,b] in '" + text + "'", 0);
  IntervalQ side{parse_rational(parts[0]), parse_rational(parts[1])};
  if (side.lo > side.hi) throw DomainError("interval with lo > hi: " + text);
  return side;
}

}  // namespace

Region parse_region(std::string_view text, std::size_t m) {
  auto parts = split(text, ';');
  if (parts.empty()) throw ParseError("empty region", 0);
  // the "box:" prefix may be left out
  std::string box_text = parts[0].rfind("box:", 0) == 0 ? trim(std::string_view(parts[0]).substr(4)) : parts[0];
  if (box_text.empty() || box_text.front() != '[') throw ParseError("region must start with a box", 0);
  std::vector<IntervalQ> sides;
  if (auto caret = box_text.rfind("]^"); caret != std::string::npos) {
    auto side = parse_side(box_text.substr(0, caret + 1));
    std::size_t count = std::stoul(box_text.substr(caret + 2));
    sides.assign(count, side);
  } else {
    for (const auto& s : split(box_text, 'x')) sides.push_back(parse_side(s));
  }
  if (sides.size() != m)
    throw DimensionError("region box has " + std::to_string(sides.size()) + " sides, expected " + std::to_string(m));
  Region r{IntervalBox(std::move(sides)), {}};
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& c = parts[i];
    if (c.empty()) continue;
    auto ge = c.find(">="), le = c.find("<=");
    if (ge == std::string::npos && le == std::string::npos)
      throw ParseError("constraint needs '>=' or '<=': '" + c + "'", 0);
    bool lower = ge != std::string::npos;
    auto pos = lower ? ge : le;
    auto g = parse_real_poly(c.substr(0, pos), m);
    auto tau = parse_rational(trim(c.substr(pos + 2)));
    r.constraints.push_back(lower ? at_least(g, tau, c) : at_most(g, tau, c));
  }
  return r;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Certified: return "certified";
    case Status::CounterexampleFound: return "counterexample";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Mode m) { return m == Mode::Rigorous ? "rigorous" : "sampled"; }

// ---------------------------------------------------------------- observer

namespace {

std::mutex& observer_mutex() {
  static std::mutex m;
  return m;
}

CertificateObserver& observer_slot() {
  static CertificateObserver obs;
  return obs;
}

void append_certificate_log(const DefectFunction& q, const Region& region, const Verdict& v) {
  const char* path = std::getenv("MILNORKIT_CERT_LOG");
  if (!path || !*path) return;
  nlohmann::json j;
  j["m"] = region.dim();
  j["kind"] = to_string(q.kind);
  j["poly"] = q.poly.to_string();
  nlohmann::json box = nlohmann::json::array();
  for (const auto& s : region.box.sides()) box.push_back({to_string(s.lo), to_string(s.hi)});
  j["box"] = box;
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : region.constraints) cons.push_back({{"g", c.g.to_string()}, {"tau", to_string(c.tau)}});
  j["constraints"] = cons;
  j["bound"] = to_string(v.bound);
  std::ofstream out(path, std::ios::app);
  out << j.dump() << "\n";
}

void notify_certificate(const DefectFunction& q, const Region& region, const Verdict& v) {
  std::lock_guard lock(observer_mutex());
  if (observer_slot()) observer_slot()(q, region, v);
  append_certificate_log(q, region, v);
}

unsigned thread_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MILNORKIT_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

// Runs fn(i) for i in [0, n); results are stored by index so the schedule does not matter.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- engine

enum class BoxOutcome { Discard, Certified, Split, Leaf, Counterexample };

struct FloatArith {
  using Side = IntervalD;
  using Bound = double;

  static Side split_lo(const Side& s, double mid) { return {s.lo, mid}; }
  static Side split_hi(const Side& s, double mid) { return {mid, s.hi}; }
  static double width(const Side& s) { return s.hi - s.lo; }
  static double mid(const Side& s) {
    double c = s.lo + 0.5 * (s.hi - s.lo);
    return std::clamp(c, s.lo, s.hi);
  }
  static std::vector<Side> root(const IntervalBox& b) { return b.to_double(); }
};

struct ExactArith {
  using Side = IntervalQ;
  using Bound = Rational;

  static double width(const Side& s) { return to_double(s.hi - s.lo); }
  static std::vector<Side> root(const IntervalBox& b) { return b.sides(); }
};

/// Enclosures of the defect and constraint polynomials, prepared once.
class Problem {
 public:
  Problem(const DefectFunction& q, const Region& region, const BBOptions& opts)
      : q_(q), region_(region), opts_(opts), m_(region.dim()), poly_f_(q.poly), poly_c_(q.poly) {
    for (const auto& mnr : q.minors) {
      minors_f_.emplace_back(mnr);
      minors_c_.emplace_back(mnr);
    }
    residuals_ = q.minors.empty() ? std::vector<RealPolynomial>{q.poly} : q.minors;
    for (const auto& r : residuals_) {
      residual_c_.emplace_back(r);
      std::vector<CompiledPolynomial> grads;
      for (std::size_t j = 0; j < m_; ++j) grads.emplace_back(r.derivative(j));
      residual_grad_c_.push_back(std::move(grads));
    }
    for (const auto& c : region.constraints) {
      ConstraintEval ce;
      ce.g_f = IntervalPolynomial(c.g);
      for (const auto& part : c.sos_parts) ce.parts_f.emplace_back(part);
      ce.g_c = CompiledPolynomial(c.g);
      ce.tau = to_double(c.tau);
      ce.tau_up = round_up(c.tau);
      constraints_.push_back(std::move(ce));
    }
  }

  std::size_t dim() const { return m_; }

  // ---- float enclosures
  IntervalD defect_enclosure(std::span<const IntervalD> box) const {
    IntervalD whole = poly_f_.eval(box);
    if (minors_f_.empty()) return whole;
    IntervalD sos{0.0, 0.0};
    for (const auto& mnr : minors_f_) sos = sos + sqr(mnr.eval(box));
    return {std::max(whole.lo, sos.lo), std::min(whole.hi, sos.hi)};
  }

  /// True when some constraint is violated on the whole box.
  bool box_violates(std::span<const IntervalD> box) const {
    for (const auto& c : constraints_) {
      double hi = c.g_f.eval(box).hi;
      if (!c.parts_f.empty()) {
        IntervalD sos{0.0, 0.0};
        for (const auto& part : c.parts_f) sos = sos + sqr(part.eval(box));
        hi = std::min(hi, sos.hi);
      }
      if (hi < c.tau_down()) return true;
    }
    return false;
  }

  // ---- exact enclosures
  IntervalQ defect_enclosure(const std::vector<IntervalQ>& sides) const {
    IntervalBox box(sides);
    IntervalQ whole = interval_eval(q_.poly, box);
    if (q_.minors.empty()) return whole;
    IntervalQ sos{0, 0};
    for (const auto& mnr : q_.minors) sos = sos + sqr(interval_eval(mnr, box));
    return {std::max(whole.lo, sos.lo), std::min(whole.hi, sos.hi)};
  }

  bool box_violates(const std::vector<IntervalQ>& sides) const {
    IntervalBox box(sides);
    for (const auto& c : region_.constraints) {
      Rational hi = interval_eval(c.g, box).hi;
      if (!c.sos_parts.empty()) {
        IntervalQ sos{0, 0};
        for (const auto& part : c.sos_parts) sos = sos + sqr(interval_eval(part, box));
        hi = std::min(hi, sos.hi);
      }
      if (hi < c.tau) return true;
    }
    return false;
  }

  // ---- points
  bool point_in_region(std::span<const double> x) const {
    for (const auto& c : constraints_)
      if (c.g_c.eval(x) < c.tau) return false;
    return true;
  }

  double defect_value(std::span<const double> x) const { return poly_c_.eval(x); }

  /// Exact confirmation: x (as rationals) lies in the region and the defect there is <= tol.
  bool confirm(std::span<const double> x) const {
    std::vector<Rational> xq;
    for (double v : x) xq.push_back(from_double(v));
    if (!region_.contains_exact(xq)) return false;
    return q_.poly.eval_exact(xq) <= from_double(opts_.tol);
  }

  /// Gauss-Newton on the minor vector from x, staying inside the box.
  template <class Side>
  std::vector<double> descend(std::vector<double> x, const std::vector<Side>& box) const {
    const std::size_t k = residuals_.size();
    Eigen::VectorXd r(static_cast<Eigen::Index>(k));
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m_));
    for (int it = 0; it < 16; ++it) {
      for (std::size_t i = 0; i < k; ++i) {
        r[static_cast<Eigen::Index>(i)] = residual_c_[i].eval(x);
        for (std::size_t j = 0; j < m_; ++j)
          jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = residual_grad_c_[i][j].eval(x);
      }
      if (r.norm() == 0.0) break;
      Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
      if (!step.allFinite()) break;
      for (std::size_t j = 0; j < m_; ++j) {
        double lo = lower(box[j]), hi = upper(box[j]);
        x[j] = std::clamp(x[j] + step[static_cast<Eigen::Index>(j)], lo, hi);
      }
      if (step.norm() < 1e-17) break;
    }
    return x;
  }

 private:
  struct ConstraintEval {
    IntervalPolynomial g_f;
    std::vector<IntervalPolynomial> parts_f;
    CompiledPolynomial g_c;
    double tau = 0;
    double tau_up = 0;
    // Discard only when the upper bound is below the smallest double >= tau.
    double tau_down() const { return tau_up; }
  };

  static double lower(const IntervalD& s) { return s.lo; }
  static double upper(const IntervalD& s) { return s.hi; }
  static double lower(const IntervalQ& s) { return round_up(s.lo); }
  static double upper(const IntervalQ& s) { return round_down(s.hi); }

  const DefectFunction& q_;
  const Region& region_;
  const BBOptions& opts_;
  std::size_t m_;
  IntervalPolynomial poly_f_;
  CompiledPolynomial poly_c_;
  std::vector<IntervalPolynomial> minors_f_;
  std::vector<CompiledPolynomial> minors_c_;
  std::vector<RealPolynomial> residuals_;
  std::vector<CompiledPolynomial> residual_c_;
  std::vector<std::vector<CompiledPolynomial>> residual_grad_c_;
  std::vector<ConstraintEval> constraints_;
};

template <class Side>
struct Node {
  std::vector<Side> box;
  unsigned depth = 0;
  double parent_lower = -std::numeric_limits<double>::infinity();
};

template <class Bound>
struct NodeResult {
  BoxOutcome outcome = BoxOutcome::Split;
  Bound lower{};
  double lower_d = 0;
  std::vector<double> point;
  double value = 0;
  std::size_t split_dim = 0;
};

double to_d(double v) { return v; }
double to_d(const Rational& v) { return to_double(v); }

std::vector<double> midpoint(const std::vector<IntervalD>& box) {
  std::vector<double> x;
  for (const auto& s : box) x.push_back(FloatArith::mid(s));
  return x;
}

std::vector<double> midpoint(const std::vector<IntervalQ>& box) {
  std::vector<double> x;
  for (const auto& s : box) {
    double c = to_double(Rational((s.lo + s.hi) / 2));
    x.push_back(std::clamp(c, round_up(s.lo), round_down(s.hi)));
  }
  return x;
}

template <class Arith>
Verdict run_bb(const DefectFunction& q, const Region& region, const BBOptions& opts) {
  using Side = typename Arith::Side;
  using Bound = typename Arith::Bound;
  Problem prob(q, region, opts);
  const std::size_t m = prob.dim();
  const unsigned threads = thread_count(opts.threads);
  const double small_threshold = std::sqrt(opts.tol);

  Verdict v;
  v.tol = opts.tol;
  v.region = region.to_string();

  std::vector<Node<Side>> level{Node<Side>{Arith::root(region.box), 0, -std::numeric_limits<double>::infinity()}};
  std::optional<Bound> certified_min;
  std::size_t leaves = 0;
  double leaf_lower = std::numeric_limits<double>::infinity();

  auto process = [&](const Node<Side>& node) {
    NodeResult<Bound> res;
    if (prob.box_violates(node.box)) {
      res.outcome = BoxOutcome::Discard;
      return res;
    }
    auto enc = prob.defect_enclosure(node.box);
    res.lower = enc.lo;
    res.lower_d = to_d(enc.lo);
    if (enc.lo > 0) {
      res.outcome = BoxOutcome::Certified;
      return res;
    }
    auto mid = midpoint(node.box);
    double val = prob.defect_value(mid);
    if (val <= opts.tol && prob.point_in_region(mid) && prob.confirm(mid)) {
      res.outcome = BoxOutcome::Counterexample;
      res.point = mid;
      res.value = val;
      return res;
    }
    if (node.depth % m == 0 && val <= small_threshold * (1.0 + std::fabs(to_d(enc.hi)))) {
      auto x = prob.descend(mid, node.box);
      double xv = prob.defect_value(x);
      if (xv <= opts.tol && prob.point_in_region(x) && prob.confirm(x)) {
        res.outcome = BoxOutcome::Counterexample;
        res.point = x;
        res.value = xv;
        return res;
      }
    }
    std::size_t widest = 0;
    double w = -1;
    for (std::size_t j = 0; j < m; ++j) {
      double wj = Arith::width(node.box[j]);
      if (wj > w) {
        w = wj;
        widest = j;
      }
    }
    res.split_dim = widest;
    res.outcome = w <= opts.min_width ? BoxOutcome::Leaf : BoxOutcome::Split;
    return res;
  };

  while (!level.empty()) {
    if (v.boxes_explored + level.size() > opts.budget) {
      v.status = Status::Inconclusive;
      v.boxes_remaining = level.size() + leaves;
      double best = leaf_lower;
      for (const auto& n : level) best = std::min(best, n.parent_lower);
      v.best_bound = best;
      v.note = "box budget exhausted";
      return v;
    }
    std::vector<NodeResult<Bound>> results(level.size());
    parallel_for(level.size(), threads, [&](std::size_t i) { results[i] = process(level[i]); });
    v.boxes_explored += level.size();

    std::vector<Node<Side>> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      auto& r = results[i];
      switch (r.outcome) {
        case BoxOutcome::Discard: ++v.boxes_discarded; break;
        case BoxOutcome::Certified:
          if (!certified_min || r.lower < *certified_min) certified_min = r.lower;
          break;
        case BoxOutcome::Counterexample:
          v.status = Status::CounterexampleFound;
          v.point = r.point;
          v.value = r.value;
          v.boxes_remaining = level.size() - i - 1 + next.size();
          return v;
        case BoxOutcome::Leaf:
          ++leaves;
          leaf_lower = std::min(leaf_lower, r.lower_d);
          break;
        case BoxOutcome::Split: {
          const auto& box = level[i].box;
          const std::size_t d = r.split_dim;
          Node<Side> a{box, level[i].depth + 1, r.lower_d}, b{box, level[i].depth + 1, r.lower_d};
          if constexpr (std::is_same_v<Side, IntervalD>) {
            double c = FloatArith::mid(box[d]);
            a.box[d].hi = c;
            b.box[d].lo = c;
          } else {
            Rational c = (box[d].lo + box[d].hi) / 2;
            a.box[d].hi = c;
            b.box[d].lo = c;
          }
          next.push_back(std::move(a));
          next.push_back(std::move(b));
          break;
        }
      }
    }
    level = std::move(next);
  }

  if (leaves > 0) {
    v.status = Status::Inconclusive;
    v.boxes_remaining = leaves;
    v.best_bound = leaf_lower;
    v.note = "boxes reached the minimum width without a positive enclosure";
    return v;
  }
  v.status = Status::Certified;
  if (certified_min) {
    if constexpr (std::is_same_v<Bound, double>) v.bound = from_double(*certified_min);
    else v.bound = *certified_min;
  } else {
    v.bound = 1;
    v.note = "region is empty (every box violates a constraint); vacuous";
  }
  return v;
}

}  // namespace

void set_certificate_observer(CertificateObserver observer) {
  std::lock_guard lock(observer_mutex());
  observer_slot() = std::move(observer);
}

Verdict bb_positivity(const DefectFunction& q, const Region& region, const BBOptions& opts) {
  if (q.poly.n_vars() != region.dim())
    throw DimensionError("defect has " + std::to_string(q.poly.n_vars()) + " variables, region has " +
                         std::to_string(region.dim()));
  for (const auto& c : region.constraints)
    if (c.g.n_vars() != region.dim()) throw DimensionError("constraint dimension does not match region");
  Verdict v = opts.exact ? run_bb<ExactArith>(q, region, opts) : run_bb<FloatArith>(q, region, opts);
  if (v.status == Status::Certified && v.note.empty()) notify_certificate(q, region, v);
  return v;
}

Verdict bb_positivity(const RealPolynomial& q, const Region& region, const BBOptions& opts) {
  DefectFunction d;
  d.poly = q;
  d.scale = "user polynomial";
  return bb_positivity(d, region, opts);
}

// ---------------------------------------------------------------- sampling

Verdict sample_positivity(const RealPolyMap& psi, DefectKind kind, const Region& region, std::size_t n,
                          std::uint64_t seed) {
  const std::size_t m = psi.source_dim();
  if (region.dim() != m) throw DimensionError("region dimension does not match the map");
  DefectEvaluator ev(psi);
  std::mt19937_64 rng(seed);
  auto sides = region.box.to_double();
  std::vector<std::uniform_real_distribution<double>> dist;
  for (const auto& s : sides) dist.emplace_back(s.lo, s.hi);

  Verdict v;
  v.mode = Mode::Sampled;
  v.region = region.to_string();
  v.note = "heuristic: random sampling of the numeric defect, not a proof";
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> x(m);
  std::size_t attempts = 0;
  while (v.samples < n && attempts < 200 * n) {
    ++attempts;
    for (std::size_t j = 0; j < m; ++j) x[j] = dist[j](rng);
    if (!region.contains(x)) continue;
    ++v.samples;
    Eigen::MatrixXd a;
    std::size_t k = psi.target_dim();
    switch (kind) {
      case DefectKind::Sing: a = ev.map().jacobian(x); break;
      case DefectKind::Milnor:
        a = ev.milnor_matrix(x);
        k += 1;
        if (m == psi.target_dim()) throw DegenerateDimensionError("m = p: M(psi) = R^m");
        break;
      case DefectKind::Omega: a = ev.omega_matrix(x).rows; break;
    }
    auto s = singular_values(a);
    double sk = k <= static_cast<std::size_t>(s.size()) ? s[static_cast<Eigen::Index>(k - 1)] : 0.0;
    v.tol = rank_tolerance(s.size() ? s[0] : 0.0);
    if (sk <= v.tol) {
      v.status = Status::CounterexampleFound;
      v.point = x;
      v.value = sk;
      return v;
    }
    best = std::min(best, sk);
  }
  if (v.samples == 0) {
    v.status = Status::Inconclusive;
    v.note = "no samples landed in the region";
    return v;
  }
  v.status = Status::Certified;
  v.bound = from_double(best);
  return v;
}

// ---------------------------------------------------------------- checks

namespace {

Verdict certify_or_sample(const RealPolyMap& psi, DefectKind kind, const Region& region, const CheckOptions& opts) {
  DefectFunction q;
  try {
    q = minor_sos_poly(psi, kind);
  } catch (const SizeLimitError& e) {
    Verdict v = sample_positivity(psi, kind, region, opts.samples, opts.seed);
    v.note += std::string("; ") + e.what();
    return v;
  }
  return bb_positivity(q, region, opts.bb);
}

}  // namespace

Verdict check_sing_in_V(const RealPolyMap& psi, const Rational& eps, const Rational& tau, const CheckOptions& opts) {
  if (eps <= 0) throw DomainError("eps must be positive");
  Region region{IntervalBox::cube(psi.source_dim(), eps), {norm_sq_at_least(psi, tau)}};
  return certify_or_sample(psi, DefectKind::Sing, region, opts);
}

Verdict check_milnor_condition(const RealPolyMap& psi, const Region& shell, const CheckOptions& opts) {
  if (shell.dim() != psi.source_dim()) throw DimensionError("shell dimension does not match the map");
  Verdict v = certify_or_sample(psi, DefectKind::Milnor, shell, opts);
  std::string proxy = "region proxy for the germ condition closure(M(psi)\\V) meets V only at 0";
  v.note = v.note.empty() ? proxy : v.note + "; " + proxy;
  return v;
}

Region milnor_shell(const RealPolyMap& psi, const Rational& eps, const Rational& r_in, const Rational& delta2,
                    const Rational& eta2) {
  const std::size_t m = psi.source_dim();
  return Region{IntervalBox::cube(m, eps),
                {radius_sq_at_least(m, r_in * r_in), norm_sq_at_least(psi, delta2), norm_sq_at_most(psi, eta2)}};
}

Verdict check_milnor_ladder(const RealPolyMap& psi, const Rational& eps, const Rational& r_in,
                            const std::vector<ShellLevel>& ladder, const CheckOptions& opts) {
  if (ladder.empty()) throw DomainError("empty shell ladder");
  std::string earlier;
  Verdict v;
  for (const auto& level : ladder) {
    v = check_milnor_condition(psi, milnor_shell(psi, eps, r_in, level.delta2, level.eta2), opts);
    if (v.status == Status::Certified) break;
    if (&level != &ladder.back())
      earlier += (earlier.empty() ? "" : "; ") + to_string(v.status) + " at eta2=" + to_string(level.eta2);
  }
  if (!earlier.empty()) v.note = "larger shells: " + earlier + "; " + v.note;
  return v;
}

std::vector<Verdict> check_omega_empty(const RealPolyMap& psi, const Rational& eps, const std::vector<Rational>& ladder,
                                       const CheckOptions& opts) {
  const std::size_t m = psi.source_dim();
  std::optional<DefectFunction> q;
  std::string size_note;
  try {
    q = minor_sos_poly(psi, DefectKind::Omega);
  } catch (const SizeLimitError& e) {
    size_note = e.what();
  }
  std::vector<Verdict> out;
  for (const auto& tau : ladder) {
    Region region{IntervalBox::cube(m, eps), {radius_sq_at_most(m, eps * eps), norm_sq_at_least(psi, tau)}};
    if (q) {
      out.push_back(bb_positivity(*q, region, opts.bb));
    } else {
      out.push_back(sample_positivity(psi, DefectKind::Omega, region, opts.samples, opts.seed));
      out.back().note += "; " + size_note;
    }
  }
  return out;
}

std::vector<Verdict> check_omega_empty(const MixedPolynomial& f, const Rational& eps,
                                       const std::vector<Rational>& ladder, const CheckOptions& opts) {
  const RealPolyMap psi = realify(f);
  const std::size_t n = f.n_vars(), m = psi.source_dim();
  if (f.is_zero()) throw DomainError("omega check needs a nonzero polynomial");
  auto lattice = detect_polar(f).lattice;
  const std::size_t r = lattice.rank();

  // Coordinates whose phases the torus can adjust independently.
  std::vector<std::size_t> slice;
  if (r > 0 && r <= n) {
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Eigen::MatrixXd pj(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          pj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = static_cast<double>(lattice.basis[a][idx[b]]);
      if (Eigen::FullPivLU<Eigen::MatrixXd>(pj).rank() == static_cast<Eigen::Index>(r)) {
        slice = idx;
        break;
      }
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (slice.empty() || m > kMaxMinorSourceDim + slice.size() || psi.target_dim() > kMaxMinorTargetDim) {
    auto out = check_omega_empty(psi, eps, ladder, opts);
    return out;
  }

  std::vector<std::size_t> dropped;  // Im z_j for j in the slice
  for (auto j : slice) dropped.push_back(2 * j + 1);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i)
    if (std::find(dropped.begin(), dropped.end(), i) == dropped.end()) kept.push_back(i);

  // The defect of the full map restricted to the slice. Minors are expanded on the full
  // map, which may exceed the size limits even when the slice is small; fall back then.
  DefectFunction full;
  try {
    full = minor_sos_poly(psi, DefectKind::Omega);
  } catch (const SizeLimitError&) {
    return check_omega_empty(psi, eps, ladder, opts);
  }
  DefectFunction q = restrict_to_zero(full, dropped);
  std::vector<RealPolynomial> comps;
  for (const auto& c : psi.components()) comps.push_back(c.restrict_to_zero(dropped));
  RealPolyMap slice_map(comps);

  std::vector<IntervalQ> sides;
  for (std::size_t i : kept) {
    bool nonneg = i % 2 == 0 && std::find(slice.begin(), slice.end(), i / 2) != slice.end();
    sides.push_back(nonneg ? IntervalQ{0, eps} : IntervalQ{Rational(-eps), eps});
  }
  std::string slice_desc = "torus slice: Im z_j = 0, Re z_j >= 0 for j in {";
  for (std::size_t k = 0; k < slice.size(); ++k) slice_desc += (k ? "," : "") + std::to_string(slice[k] + 1);
  slice_desc += "}; certificate covers the ball of radius " + to_string(eps);

  std::vector<Verdict> out;
  for (const auto& tau : ladder) {
    Region region{IntervalBox(sides),
                  {radius_sq_at_most(kept.size(), eps * eps), norm_sq_at_least(slice_map, tau)}};
    Verdict v = bb_positivity(q, region, opts.bb);
    if (!v.point.empty()) {
      std::vector<double> full_point(m, 0.0);
      for (std::size_t k = 0; k < kept.size(); ++k) full_point[kept[k]] = v.point[k];
      v.point = full_point;
    }
    v.note = v.note.empty() ? slice_desc : v.note + "; " + slice_desc;
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- Thom-Sebastiani

std::optional<RadialWeights> combine_weights(const RadialWeights& a, const RadialWeights& b) {
  if (a.d <= 0 || b.d <= 0) return std::nullopt;
  std::int64_t l = std::lcm(a.d, b.d);
  RadialWeights w;
  for (auto q : a.q) w.q.push_back(l / a.d * q);
  for (auto q : b.q) w.q.push_back(l / b.d * q);
  std::int64_t g = 0;
  for (auto q : w.q) g = std::gcd(g, q);
  for (auto& q : w.q) q /= g;
  w.d = l / g;
  return w;
}

SebastianiResult sebastiani_sum(const RealPolyMap& psi, const RealPolyMap& phi, bool psi_thom, bool phi_thom) {
  if (psi.target_dim() != phi.target_dim())
    throw DimensionError("target dimensions differ: " + std::to_string(psi.target_dim()) + " and " +
                         std::to_string(phi.target_dim()));
  if (psi.is_zero() || phi.is_zero()) throw DomainError("Thom-Sebastiani sum needs nonzero summands");
  const std::size_t m = psi.source_dim(), n = phi.source_dim();
  std::vector<RealPolynomial> comps;
  for (std::size_t i = 0; i < psi.target_dim(); ++i)
    comps.push_back(psi[i].embed(m + n, 0) + phi[i].embed(m + n, m));
  SebastianiResult out{RealPolyMap(std::move(comps)), std::nullopt, psi_thom && phi_thom};
  auto wa = detect_radial(psi).weights, wb = detect_radial(phi).weights;
  if (wa && wb) out.weights = combine_weights(*wa, *wb);
  return out;
}

MixedPolynomial sebastiani_sum(const MixedPolynomial& f, const MixedPolynomial& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("Thom-Sebastiani sum needs nonzero summands");
  const std::size_t a = f.n_vars(), b = g.n_vars();
  MixedPolynomial h(a + b);
  for (const auto& t : f.terms()) {
    Exponents nu(a + b, 0), mu(a + b, 0);
    std::copy(t.nu.begin(), t.nu.end(), nu.begin());
    std::copy(t.mu.begin(), t.mu.end(), mu.begin());
    h.add_term(nu, mu, t.coeff);
  }
  for (const auto& t : g.terms()) {
    Exponents nu(a + b, 0), mu(a + b, 0);
    std::copy(t.nu.begin(), t.nu.end(), nu.begin() + static_cast<std::ptrdiff_t>(a));
    std::copy(t.mu.begin(), t.mu.end(), mu.begin() + static_cast<std::ptrdiff_t>(a));
    h.add_term(nu, mu, t.coeff);
  }
  return h;
}

// ---------------------------------------------------------------- Thom sampler

namespace {

Eigen::VectorXd eval_curve(const std::vector<RealPolynomial>& c, double t) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(c.size()));
  std::array<double, 1> tt{t};
  for (std::size_t i = 0; i < c.size(); ++i) x[static_cast<Eigen::Index>(i)] = c[i].eval(tt);
  return x;
}

std::string curve_text(const std::vector<RealPolynomial>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + c[i].to_string("t");
  return s + ")";
}

}  // namespace

ThomReport thom_defect_sampler(const RealPolyMap& psi, const std::vector<RealPolynomial>& stratum, double base,
                               const std::vector<std::vector<RealPolynomial>>& curves, double t0, std::size_t steps) {
  const std::size_t m = psi.source_dim();
  if (stratum.size() != m) throw DimensionError("stratum parameterization has the wrong dimension");
  std::vector<RealPolynomial> tangent_polys;
  for (const auto& s : stratum) tangent_polys.push_back(s.derivative(0));
  Eigen::VectorXd point = eval_curve(stratum, base);
  Eigen::VectorXd tangent = eval_curve(tangent_polys, base);
  if (tangent.norm() == 0) throw DomainError("stratum tangent vanishes at the base point");
  tangent.normalize();

  MapEvaluator ev(psi);
  ThomReport report;
  for (const auto& c : curves) {
    if (c.size() != m) throw DimensionError("approach curve has the wrong dimension");
    if ((eval_curve(c, 0.0) - point).norm() > 1e-9)
      throw DomainError("approach curve " + curve_text(c) + " does not start at the stratum base point");
    ThomCurveReport cr;
    cr.curve = curve_text(c);
    double t = t0;
    for (std::size_t k = 0; k < steps; ++k, t *= 0.5) {
      Eigen::VectorXd x = eval_curve(c, t);
      if (!x.allFinite()) throw DomainError("approach curve leaves the domain at t = " + std::to_string(t));
      if (ev.value(as_span(x)).norm() == 0.0)
        throw DomainError("approach curve meets V at t = " + std::to_string(t));
      Eigen::MatrixXd jt = ev.jacobian(as_span(x)).transpose();  // m x p, columns span the normal space
      Eigen::VectorXd coeffs = jt.completeOrthogonalDecomposition().solve(tangent);
      Eigen::VectorXd normal_part = jt * coeffs;
      cr.t.push_back(t);
      cr.sin_angle.push_back(std::min(1.0, normal_part.norm()));
    }
    double first = cr.sin_angle.front(), last = cr.sin_angle.back();
    double prev = cr.sin_angle.size() > 1 ? cr.sin_angle[cr.sin_angle.size() - 2] : first;
    cr.limit_estimate = last;
    if (last < 1e-4 || last <= 1e-3 * first) cr.trend = "tends to 0";
    else if (std::fabs(last - prev) <= 1e-3 * last) cr.trend = "bounded away from 0";
    else cr.trend = "undetermined";
    report.curves.push_back(std::move(cr));
  }
  return report;
}

}  // namespace milnorkit
