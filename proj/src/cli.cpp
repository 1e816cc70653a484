#include "milnorkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "milnorkit/certify.hpp"
#include "milnorkit/corpus.hpp"
#include "milnorkit/error.hpp"
#include "milnorkit/evaluate.hpp"
#include "milnorkit/fibration.hpp"
#include "milnorkit/linalg.hpp"
#include "milnorkit/milnor_set.hpp"
#include "milnorkit/parse.hpp"
#include "milnorkit/pipeline.hpp"
#include "milnorkit/report.hpp"
#include "milnorkit/weights.hpp"

namespace milnorkit::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Input {
  std::string label;
  std::optional<MixedPolynomial> mixed;
  RealPolyMap map;
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

// Corpus id, a real map "(p1, p2, ...)" in x1..xm, or a mixed polynomial in z/conj(z).
Input resolve_input(const std::string& text) {
  Input in;
  in.label = trim(text);
  if (in.label.empty()) throw UsageError("no input given (corpus id, real map or mixed polynomial)");
  if (corpus_has(in.label)) {
    const auto& e = corpus_get(in.label);
    if (e.kind == CorpusKind::Mixed) in.mixed = e.mixed();
    in.map = e.map();
    return in;
  }
  if (in.label.front() == '(' && in.label.find('x') != std::string::npos) {
    in.map = parse_real_map(in.label);
    return in;
  }
  in.mixed = parse_mixed(in.label);
  in.map = realify(*in.mixed);
  return in;
}

std::string input_text(const std::string& corpus_id, const std::string& positional) {
  if (!corpus_id.empty() && !positional.empty()) throw UsageError("give either --corpus or an input text, not both");
  return corpus_id.empty() ? positional : corpus_id;
}

Rational parse_number(const std::string& text, const char* flag) {
  try {
    return parse_rational(trim(text));
  } catch (const ParseError&) {
    throw UsageError(std::string("malformed number for ") + flag + ": '" + text + "'");
  }
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(parse_number(item, "vector")));
  return out;
}

std::vector<double> ball_point(std::mt19937_64& rng, std::size_t m, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> x(m);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& v : x) {
      v = normal(rng);
      norm += v * v;
    }
  } while (norm == 0.0);
  const double r = radius * std::pow(uni(rng), 1.0 / static_cast<double>(m)) / std::sqrt(norm);
  for (auto& v : x) v *= r;
  return x;
}

void write_csv_row(std::ostream& out, const std::vector<double>& values) {
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    out << (i ? "," : "") << buf;
  }
  out << "\n";
}

std::string coord_header(std::size_t m) {
  std::string h;
  for (std::size_t i = 0; i < m; ++i) h += (i ? ",x" : "x") + std::to_string(i + 1);
  return h;
}

// Writes to the file when a path is given, else to stdout (only when not in JSON mode).
class Sink {
 public:
  Sink(const std::string& path, bool json) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open '" + path + "' for writing");
      out_ = &file_;
    } else if (!json) {
      out_ = &std::cout;
    }
  }
  std::ostream* get() { return out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

int verdict_exit(const std::vector<Verdict>& vs) {
  bool all = !vs.empty();
  for (const auto& v : vs) {
    if (v.status == Status::CounterexampleFound) return kExitCounterexample;
    all = all && v.status == Status::Certified;
  }
  return all ? 0 : kExitInconclusive;
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << "  " << to_string(v.status) << " (" << to_string(v.mode) << ")";
  if (v.status == Status::Certified) out << ", bound " << to_string(v.bound) << " ~ " << to_double(v.bound);
  if (v.status == Status::CounterexampleFound) {
    out << ", value " << v.value << " at (";
    for (std::size_t i = 0; i < v.point.size(); ++i) out << (i ? ", " : "") << v.point[i];
    out << ")";
  }
  out << ", boxes " << v.boxes_explored << "\n    region: " << v.region << "\n";
  if (!v.note.empty()) out << "    note: " << v.note << "\n";
}

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
};

// info

int cmd_info(const Globals& g, const std::string& text) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["name"] = "milnorkit";
  j["version"] = "0.1.0";
  j["hardware_threads"] = std::thread::hardware_concurrency();
  j["corpus"] = corpus_list();
  if (!text.empty()) {
    Input in = resolve_input(text);
    Json d;
    d["input"] = in.label;
    d["kind"] = in.mixed ? "mixed" : "real";
    d["m"] = in.map.source_dim();
    d["p"] = in.map.target_dim();
    if (in.mixed) {
      d["normalized"] = in.mixed->to_string();
      d["holomorphic"] = in.mixed->is_holomorphic();
    }
    d["realified"] = in.map.to_string();
    j["input"] = d;
  }
  if (g.json) {
    std::cout << dump_json(j) << "\n";
    return 0;
  }
  std::cout << "milnorkit 0.1.0\nhardware threads: " << std::thread::hardware_concurrency() << "\ncorpus:";
  for (const auto& id : corpus_list()) std::cout << " " << id;
  std::cout << "\n";
  if (j.contains("input")) {
    const auto& d = j["input"];
    std::cout << "input: " << d["input"].get<std::string>() << " (" << d["kind"].get<std::string>() << ", m="
              << d["m"].get<std::size_t>() << ", p=" << d["p"].get<std::size_t>() << ")\n";
    std::cout << "as real map: " << d["realified"].get<std::string>() << "\n";
  }
  return 0;
}

// weights

int cmd_weights(const Globals& g, const std::string& text) {
  Input in = resolve_input(text);
  RadialDetection radial = in.mixed ? detect_radial(*in.mixed) : detect_radial(in.map);
  std::optional<PolarDetection> polar;
  if (in.mixed) polar = detect_polar(*in.mixed);

  Json j;
  j["schema"] = kSchemaVersion;
  j["input"] = in.label;
  j["radial"] = radial.weights ? to_json(*radial.weights) : Json(nullptr);
  j["polar"] = polar && polar->weights ? to_json(*polar->weights) : Json(nullptr);
  Json lat;
  lat["radial"] = to_json(radial.lattice);
  lat["polar"] = polar ? to_json(polar->lattice) : Json(nullptr);
  j["lattices"] = lat;
  if (g.json) {
    std::cout << dump_json(j) << "\n";
    return 0;
  }
  std::cout << "radial: " << (radial.weights ? to_string(*radial.weights) : "none") << "\n";
  if (in.mixed) std::cout << "polar: " << (polar->weights ? to_string(*polar->weights) : "none") << "\n";
  std::cout << "radial lattice rank " << radial.lattice.rank();
  if (polar) std::cout << ", polar lattice rank " << polar->lattice.rank();
  std::cout << "\n";
  return 0;
}

// certify

struct CertifyArgs {
  std::string check;
  std::string region;
  std::string eps = "1";
  std::string tau;
  std::size_t budget = 1'000'000;
  bool exact = false;
  unsigned threads = 0;
  std::size_t samples = 20000;
};

int cmd_certify(const Globals& g, const std::string& text, const CertifyArgs& a) {
  Input in = resolve_input(text);
  CheckOptions opts;
  opts.bb.budget = a.budget;
  opts.bb.exact = a.exact;
  opts.bb.threads = a.threads;
  opts.samples = a.samples;
  opts.seed = g.seed;
  const Rational eps = parse_number(a.eps, "--eps");
  if (sgn(eps) <= 0) throw UsageError("--eps must be positive");

  if (a.check.empty()) {
    if (!a.region.empty() || !a.tau.empty()) throw UsageError("--region and --tau need --check");
    PipelineOptions po;
    po.eps = eps;
    po.check = opts;
    po.seed = g.seed;
    PipelineReport r = in.mixed ? run_pipeline(*in.mixed, po) : run_pipeline(in.map, po);
    r.input = in.label;
    if (g.json) {
      std::cout << dump_json(to_json(r)) << "\n";
    } else {
      std::cout << "input: " << r.input << " (" << r.kind << ", m=" << r.m << ", p=" << r.p << ")\n";
      for (const auto& c : r.conditions) {
        std::cout << c.name << ": " << (c.holds ? "holds" : "does not hold") << "\n";
        if (c.verdict) print_verdict(std::cout, *c.verdict);
        else if (!c.note.empty()) std::cout << "  " << c.note << "\n";
      }
      std::cout << "theorem path: " << to_string(r.path) << "\n";
      for (const auto& c : r.caveats) std::cout << "caveat: " << c << "\n";
    }
    return exit_code(r);
  }

  DefectKind kind = parse_defect_kind(a.check);
  std::vector<Verdict> verdicts;
  if (!a.region.empty()) {
    Region region = parse_region(a.region, in.map.source_dim());
    if (!a.tau.empty()) region.constraints.push_back(norm_sq_at_least(in.map, parse_number(a.tau, "--tau")));
    verdicts.push_back(bb_positivity(minor_sos_poly(in.map, kind), region, opts.bb));
  } else if (kind == DefectKind::Sing) {
    Rational tau = a.tau.empty() ? Rational(1, 10000) : parse_number(a.tau, "--tau");
    verdicts.push_back(check_sing_in_V(in.map, eps, tau, opts));
  } else if (kind == DefectKind::Milnor) {
    if (!a.tau.empty()) throw UsageError("--tau is not used by the default milnor shell; give --region instead");
    PipelineOptions po;
    verdicts.push_back(check_milnor_ladder(in.map, eps, po.shell_inner * eps, po.shell_ladder, opts));
  } else {
    std::vector<Rational> ladder;
    if (a.tau.empty())
      ladder = PipelineOptions{}.omega_ladder;
    else
      ladder.push_back(parse_number(a.tau, "--tau"));
    verdicts = in.mixed ? check_omega_empty(*in.mixed, eps, ladder, opts) : check_omega_empty(in.map, eps, ladder, opts);
  }

  if (g.json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["input"] = in.label;
    j["check"] = to_string(kind);
    Json vs = Json::array();
    for (const auto& v : verdicts) vs.push_back(to_json(v));
    j["verdicts"] = vs;
    std::cout << dump_json(j) << "\n";
  } else {
    std::cout << to_string(kind) << " check on " << in.label << ":\n";
    for (const auto& v : verdicts) print_verdict(std::cout, v);
  }
  return verdict_exit(verdicts);
}

// milnor-set / omega

struct SampleDefectArgs {
  std::string kind = "milnor";
  std::size_t samples = 10000;
  std::size_t grid = 0;
  double radius = 1.0;
  double tol = 1e-8;
  double min_norm = 1e-3;
  std::string out;
};

std::vector<std::vector<double>> defect_points(std::size_t m, const SampleDefectArgs& a, std::uint64_t seed) {
  std::vector<std::vector<double>> pts;
  if (a.grid > 0) {
    if (a.grid < 2) throw UsageError("--grid needs at least 2 points per axis");
    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (total > 50'000'000 / a.grid) throw UsageError("grid too large");
      total *= a.grid;
    }
    std::vector<double> x(m);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t r = idx;
      for (std::size_t i = 0; i < m; ++i) {
        x[i] = -a.radius + 2.0 * a.radius * static_cast<double>(r % a.grid) / static_cast<double>(a.grid - 1);
        r /= a.grid;
      }
      pts.push_back(x);
    }
    return pts;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < a.samples; ++i) pts.push_back(ball_point(rng, m, a.radius));
  return pts;
}

int cmd_milnor_set(const Globals& g, const std::string& text, const SampleDefectArgs& a) {
  Input in = resolve_input(text);
  const std::size_t m = in.map.source_dim();
  const bool rho = a.kind == "rho";
  if (rho && !in.mixed) throw UsageError("--kind rho needs a mixed polynomial");
  DefectKind kind = rho ? DefectKind::Milnor : parse_defect_kind(a.kind);
  DefectEvaluator eval(in.map);
  std::optional<MixedEvaluator> mixed_eval;
  if (rho) mixed_eval.emplace(*in.mixed);

  auto pts = defect_points(m, a, g.seed);
  Sink sink(a.out, g.json);
  if (auto* out = sink.get()) *out << coord_header(m) << ",defect,zero\n";
  std::size_t zeros = 0;
  double min_defect = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) {
    double d = 0.0;
    bool zero = false;
    if (rho) {
      auto z = complexify_point(x);
      auto r = mixed_rho_defect(*mixed_eval, z);
      d = r.value;
      zero = d <= a.tol * (r.sigma_max + 1.0);
    } else {
      d = eval(kind, x);
      zero = d <= a.tol;
    }
    zeros += zero;
    min_defect = std::min(min_defect, d);
    if (auto* out = sink.get()) {
      auto row = x;
      row.push_back(d);
      row.push_back(zero ? 1.0 : 0.0);
      write_csv_row(*out, row);
    }
  }
  if (g.json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["input"] = in.label;
    j["kind"] = a.kind;
    j["points"] = pts.size();
    j["zero_points"] = zeros;
    j["min_defect"] = min_defect;
    j["tol"] = a.tol;
    j["seed"] = g.seed;
    j["out"] = a.out.empty() ? Json(nullptr) : Json(a.out);
    std::cout << dump_json(j) << "\n";
  } else if (!a.out.empty()) {
    std::cout << pts.size() << " points, " << zeros << " with " << a.kind << " defect <= tol, written to " << a.out
              << "\n";
  }
  return 0;
}

int cmd_omega(const Globals& g, const std::string& text, const SampleDefectArgs& a) {
  Input in = resolve_input(text);
  const std::size_t m = in.map.source_dim();
  DefectEvaluator eval(in.map);
  std::mt19937_64 rng(g.seed);
  Sink sink(a.out, g.json);
  if (auto* out = sink.get()) *out << coord_header(m) << ",omega_defect,scale,norm_psi,violation\n";

  std::size_t accepted = 0, violations = 0, draws = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  const std::size_t max_draws = std::max<std::size_t>(a.samples * 1000, 1000);
  while (accepted < a.samples) {
    if (++draws > max_draws) throw Error("too few points with |psi| >= --min-norm in the ball");
    auto x = ball_point(rng, m, a.radius);
    const double norm_psi = eval.map().value(x).norm();
    if (norm_psi < a.min_norm) continue;
    ++accepted;
    auto om = eval.omega_matrix(x);
    auto s = singular_values(om.rows);
    const double scale = s.size() ? s(0) + 1.0 : 1.0;
    const double d = kth_singular_value(om.rows, in.map.target_dim());
    const bool bad = d <= a.tol * scale;
    violations += bad;
    min_ratio = std::min(min_ratio, d / scale);
    if (auto* out = sink.get()) {
      auto row = x;
      row.insert(row.end(), {d, scale, norm_psi, bad ? 1.0 : 0.0});
      write_csv_row(*out, row);
    }
  }
  if (g.json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["input"] = in.label;
    j["points"] = accepted;
    j["violations"] = violations;
    j["min_defect_over_scale"] = min_ratio;
    j["tol"] = a.tol;
    j["min_norm_psi"] = a.min_norm;
    j["seed"] = g.seed;
    std::cout << dump_json(j) << "\n";
  } else if (!a.out.empty()) {
    std::cout << accepted << " points, " << violations << " violations, written to " << a.out << "\n";
  }
  return violations ? kExitCounterexample : 0;
}

// sample

struct SampleArgs {
  std::string what = "sphere";
  std::size_t n = 1000;
  double eps = 1.0;
  double eta = 1e-2;
  double tol = 1e-8;
  std::size_t bins = 12;
  std::string value;
  std::string format = "csv";
  std::string out;
  std::optional<double> monodromy;
};

PointCloud merge(const std::vector<PointCloud>& clouds) {
  PointCloud all;
  for (const auto& c : clouds) {
    if (all.label_names().empty() && c.dim()) all = PointCloud(c.dim(), c.label_names());
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<double> labels;
      for (const auto& name : c.label_names()) labels.push_back(c.label(i, name));
      all.add(c.point(i), labels);
    }
  }
  return all;
}

int cmd_sample(const Globals& g, const std::string& text, const SampleArgs& a) {
  CloudFormat fmt;
  if (a.format == "csv")
    fmt = CloudFormat::Csv;
  else if (a.format == "ply")
    fmt = CloudFormat::Ply;
  else
    throw UsageError("--format must be csv or ply");

  Input in = resolve_input(text);
  const std::size_t m = in.map.source_dim();
  PointCloud cloud;
  Json extra;
  if (a.what == "sphere") {
    cloud = sample_sphere(m, a.eps, a.n, g.seed);
  } else if (a.what == "link") {
    cloud = link_samples(in.map, a.eps, a.n, a.tol, g.seed);
  } else if (a.what == "pages") {
    auto pd = page_decompose(in.map, a.eps, a.n, a.bins, g.seed, a.tol);
    cloud = merge(pd.pages);
    extra["link_shell_points"] = pd.link_shell.size();
    if (a.monodromy) {
      if (!in.mixed) throw UsageError("--monodromy needs a mixed polynomial");
      auto pw = detect_polar(*in.mixed).weights;
      if (!pw) throw DomainError("input is not polar weighted-homogeneous");
      cloud = monodromy_transport(*in.mixed, *pw, cloud, *a.monodromy);
      extra["monodromy"] = *a.monodromy;
    }
  } else if (a.what == "tube") {
    std::vector<double> value = a.value.empty() ? std::vector<double>{} : parse_vector(a.value);
    if (value.empty()) {
      value.assign(in.map.target_dim(), 0.0);
      value[0] = a.eta / 2.0;
    }
    auto t = tube_fiber_samples(in.map, a.eps, a.eta, value, a.n, g.seed);
    cloud = t.cloud;
    extra["failures"] = t.failures;
  } else {
    throw UsageError("sample kind must be sphere, link, pages or tube");
  }

  if (!a.out.empty()) {
    export_cloud(cloud, a.out, fmt);
  } else if (!g.json) {
    export_cloud(cloud, std::cout, fmt);
  }
  if (g.json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["input"] = in.label;
    j["kind"] = a.what;
    j["points"] = cloud.size();
    j["labels"] = cloud.label_names();
    j["seed"] = g.seed;
    j["out"] = a.out.empty() ? Json(nullptr) : Json(a.out);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    j["note"] = "sphere and tube fibrations are sampled separately; no glued global angle is constructed";
    std::cout << dump_json(j) << "\n";
  }
  return 0;
}

// flow

struct FlowArgs {
  std::size_t n = 100;
  double eps = 1.0;
  double eta = 1e-2;
  double step = 0.02;
  std::size_t max_steps = 20000;
  double blend = 1.0;
  std::string out;
};

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

int cmd_flow(const Globals& g, const std::string& text, const FlowArgs& a) {
  Input in = resolve_input(text);
  const std::size_t m = in.map.source_dim();
  auto starts = tube_boundary_points(in.map, a.eps, a.eta, a.n, g.seed);
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw Error("cannot open '" + a.out + "' for writing");
    file << "trajectory,step," << coord_header(m) << ",radius,norm_psi\n";
  }
  std::size_t reached = 0, monotone = 0, anti_parallel = 0, zero_gradient = 0, not_converged = 0, halvings = 0;
  for (std::size_t t = 0; t < starts.size(); ++t) {
    try {
      auto tr = blow_out_flow(in.map, starts[t], a.eps, a.step, a.max_steps, a.blend);
      ++reached;
      halvings += tr.step_halvings;
      monotone += strictly_increasing(tr.radii) && strictly_increasing(tr.tube_values);
      if (file) {
        for (std::size_t s = 0; s < tr.states.size(); ++s) {
          std::vector<double> row{static_cast<double>(t), static_cast<double>(s)};
          row.insert(row.end(), tr.states[s].begin(), tr.states[s].end());
          row.push_back(tr.radii[s]);
          row.push_back(tr.tube_values[s]);
          write_csv_row(file, row);
        }
      }
    } catch (const AntiParallelError&) {
      ++anti_parallel;
    } catch (const ZeroGradientError&) {
      ++zero_gradient;
    } catch (const ConvergenceError&) {
      ++not_converged;
    }
  }
  Json j;
  j["schema"] = kSchemaVersion;
  j["input"] = in.label;
  j["trajectories"] = starts.size();
  j["reached_sphere"] = reached;
  j["monotone"] = monotone;
  j["anti_parallel_errors"] = anti_parallel;
  j["zero_gradient_errors"] = zero_gradient;
  j["step_limit_errors"] = not_converged;
  j["step_halvings"] = halvings;
  j["eps"] = a.eps;
  j["eta"] = a.eta;
  j["seed"] = g.seed;
  j["out"] = a.out.empty() ? Json(nullptr) : Json(a.out);
  if (g.json) {
    std::cout << dump_json(j) << "\n";
  } else {
    std::cout << starts.size() << " trajectories from |psi| = " << a.eta << ": " << reached << " reached |x| = "
              << a.eps << ", " << monotone << " monotone, " << anti_parallel << " anti-parallel, " << zero_gradient
              << " zero-gradient, " << not_converged << " over the step limit\n";
  }
  const bool ok = !starts.empty() && reached == starts.size() && monotone == reached;
  return ok ? 0 : kExitInconclusive;
}

// sebastiani

struct SebastianiArgs {
  std::string left, right;
  bool left_thom = false, right_thom = false;
  bool pipeline = false;
  std::size_t budget = 1'000'000;
};

int cmd_sebastiani(const Globals& g, const SebastianiArgs& a) {
  if (a.left.empty() || a.right.empty()) throw UsageError("sebastiani needs --left and --right");
  Input l = resolve_input(a.left), r = resolve_input(a.right);
  Json j;
  j["schema"] = kSchemaVersion;
  j["left"] = l.label;
  j["right"] = r.label;

  std::optional<MixedPolynomial> mixed_sum;
  if (l.mixed && r.mixed) mixed_sum = sebastiani_sum(*l.mixed, *r.mixed);
  auto sum = sebastiani_sum(l.map, r.map, a.left_thom, a.right_thom);
  j["h"] = sum.map.to_string();
  j["h_mixed"] = mixed_sum ? Json(mixed_sum->to_string()) : Json(nullptr);
  j["combined_radial"] = sum.weights ? to_json(*sum.weights) : Json(nullptr);
  j["thom_regular"] = sum.thom_regular;

  int code = 0;
  std::optional<PipelineReport> report;
  if (a.pipeline) {
    PipelineOptions po;
    po.check.bb.budget = a.budget;
    po.check.seed = g.seed;
    po.seed = g.seed;
    report = mixed_sum ? run_pipeline(*mixed_sum, po) : run_pipeline(sum.map, po);
    report->input = "(" + l.label + ") + (" + r.label + ")";
    j["pipeline"] = to_json(*report);
    code = exit_code(*report);
  }
  if (g.json) {
    std::cout << dump_json(j) << "\n";
    return code;
  }
  std::cout << "h = " << sum.map.to_string() << "\n";
  if (mixed_sum) std::cout << "h (mixed) = " << mixed_sum->to_string() << "\n";
  std::cout << "combined radial weights: " << (sum.weights ? to_string(*sum.weights) : "none") << "\n";
  std::cout << "thom regular (from asserted inputs): " << (sum.thom_regular ? "yes" : "no") << "\n";
  if (report) std::cout << "theorem path: " << to_string(report->path) << "\n";
  return code;
}

// corpus

int cmd_corpus(const Globals& g, const std::string& id) {
  if (!id.empty()) {
    if (!corpus_has(id)) throw UsageError("unknown corpus id '" + id + "'");
    const auto& e = corpus_get(id);
    if (g.json) {
      Json j = to_json(e);
      j["schema"] = kSchemaVersion;
      std::cout << dump_json(j) << "\n";
    } else {
      std::cout << e.id << ": " << e.source << "\n  " << e.provenance << "\n  expected path: " << e.expected_path
                << "\n";
    }
    return 0;
  }
  if (g.json) {
    Json j;
    j["schema"] = kSchemaVersion;
    Json entries = Json::array();
    for (const auto& e : corpus()) entries.push_back(to_json(e));
    j["entries"] = entries;
    std::cout << dump_json(j) << "\n";
  } else {
    for (const auto& e : corpus()) std::cout << e.id << "  " << e.source << "\n";
  }
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"milnorkit: certify and sample Milnor fibrations of real and mixed polynomial germs"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON on stdout");
  app.add_option("--seed", g.seed, "64-bit seed for all randomness")->capture_default_str();

  std::string corpus_id, input;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--corpus", corpus_id, "Corpus id");
    sub->add_option("input", input, "Corpus id, real map \"(p1, p2)\" in x1..xm, or mixed polynomial in z, conj(z)");
  };

  auto* info = app.add_subcommand("info", "Version, corpus ids and a summary of an optional input");
  add_input(info);

  auto* weights = app.add_subcommand("weights", "Radial and polar weight detection");
  add_input(weights);

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Theorem-path pipeline, or a single region check with --check");
  add_input(certify);
  certify->add_option("--check", ca.check, "sing | milnor | omega")->check(CLI::IsMember({"sing", "milnor", "omega"}));
  certify->add_option("--region", ca.region, "\"box:[a,b]x[c,d]...; g >= tau\"");
  certify->add_option("--eps", ca.eps, "Box half-width / ball radius")->capture_default_str();
  certify->add_option("--tau", ca.tau, "Lower bound on |psi|^2");
  certify->add_option("--budget", ca.budget, "Box budget")->capture_default_str();
  certify->add_flag("--exact", ca.exact, "Rational interval arithmetic");
  certify->add_option("--threads", ca.threads, "Worker threads (0 = all)");
  certify->add_option("--samples", ca.samples, "Samples for the heuristic fallback")->capture_default_str();

  SampleDefectArgs ma;
  auto* milnor = app.add_subcommand("milnor-set", "Sample a defect function (CSV: coordinates, defect, zero flag)");
  add_input(milnor);
  milnor->add_option("--kind", ma.kind, "sing | milnor | omega | rho")
      ->check(CLI::IsMember({"sing", "milnor", "omega", "rho"}))
      ->capture_default_str();
  milnor->add_option("--samples", ma.samples, "Random points in the ball")->capture_default_str();
  milnor->add_option("--grid", ma.grid, "Regular grid with this many points per axis on [-r, r]^m instead");
  milnor->add_option("--radius", ma.radius, "Ball radius / grid half-width")->capture_default_str();
  milnor->add_option("--tol", ma.tol, "Zero threshold")->capture_default_str();
  milnor->add_option("--out", ma.out, "CSV path (stdout when absent)");

  SampleDefectArgs oa;
  auto* omega = app.add_subcommand("omega", "Sample the Omega defect on the ball away from V");
  add_input(omega);
  omega->add_option("--samples", oa.samples, "Accepted points")->capture_default_str();
  omega->add_option("--radius", oa.radius, "Ball radius")->capture_default_str();
  omega->add_option("--min-norm", oa.min_norm, "Skip points with |psi| below this")->capture_default_str();
  omega->add_option("--tol", oa.tol, "Violation when defect <= tol * (sigma_max + 1)")->capture_default_str();
  omega->add_option("--out", oa.out, "CSV path (stdout when absent)");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Point clouds: sphere, link, pages, tube");
  sample->add_option("what", sa.what, "sphere | link | pages | tube")->required();
  sample->add_option("--corpus", corpus_id, "Corpus id");
  sample->add_option("--input", input, "Input text");
  sample->add_option("--n", sa.n, "Number of samples")->capture_default_str();
  sample->add_option("--eps", sa.eps, "Sphere / ball radius")->capture_default_str();
  sample->add_option("--eta", sa.eta, "Tube radius")->capture_default_str();
  sample->add_option("--tol", sa.tol, "Newton / link tolerance")->capture_default_str();
  sample->add_option("--bins", sa.bins, "Page bins")->capture_default_str();
  sample->add_option("--value", sa.value, "Tube fiber value a, comma separated");
  sample->add_option("--monodromy", sa.monodromy, "Transport the pages by this angle");
  sample->add_option("--format", sa.format, "csv | ply")->capture_default_str();
  sample->add_option("--out", sa.out, "Output path (stdout when absent)");

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "Blow-out flow from the tube |psi| = eta to the sphere |x| = eps");
  add_input(flow);
  flow->add_option("--n", fa.n, "Trajectories")->capture_default_str();
  flow->add_option("--eps", fa.eps, "Sphere radius")->capture_default_str();
  flow->add_option("--eta", fa.eta, "Tube radius")->capture_default_str();
  flow->add_option("--step", fa.step, "Initial RK4 step")->capture_default_str();
  flow->add_option("--max-steps", fa.max_steps, "Step limit per trajectory")->capture_default_str();
  flow->add_option("--blend", fa.blend, "Largest blend of the gradient direction")->capture_default_str();
  flow->add_option("--out", fa.out, "CSV of all trajectory states");

  SebastianiArgs sb;
  auto* seb = app.add_subcommand("sebastiani", "Thom-Sebastiani sum in separate variables");
  seb->add_option("--left", sb.left, "Corpus id or input text")->required();
  seb->add_option("--right", sb.right, "Corpus id or input text")->required();
  seb->add_flag("--left-thom", sb.left_thom, "Assert the left summand is Thom regular");
  seb->add_flag("--right-thom", sb.right_thom, "Assert the right summand is Thom regular");
  seb->add_flag("--pipeline", sb.pipeline, "Run the theorem-path pipeline on the sum");
  seb->add_option("--budget", sb.budget, "Box budget for --pipeline")->capture_default_str();

  std::string cid;
  auto* corp = app.add_subcommand("corpus", "List the built-in examples or show one");
  corp->add_option("id", cid, "Corpus id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const std::string text = input_text(corpus_id, input);
    if (*info) return cmd_info(g, text);
    if (*weights) return cmd_weights(g, text);
    if (*certify) return cmd_certify(g, text, ca);
    if (*milnor) return cmd_milnor_set(g, text, ma);
    if (*omega) return cmd_omega(g, text, oa);
    if (*sample) return cmd_sample(g, text, sa);
    if (*flow) return cmd_flow(g, text, fa);
    if (*seb) return cmd_sebastiani(g, sb);
    if (*corp) return cmd_corpus(g, cid);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace milnorkit::cli
