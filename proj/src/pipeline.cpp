#include "milnorkit/pipeline.hpp"

#include <algorithm>

namespace milnorkit {

std::string to_string(TheoremPath path) {
  switch (path) {
    case TheoremPath::None: return "none";
    case TheoremPath::Thm1_2: return "Thm1.2";
    case TheoremPath::Thm1_5: return "Thm1.5";
    case TheoremPath::Thm1_7: return "Thm1.7";
  }
  return "none";
}

const ConditionResult* PipelineReport::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

ConditionResult from_verdict(std::string name, const Verdict& v) {
  ConditionResult c;
  c.name = std::move(name);
  c.region = v.region;
  c.verdict = v;
  c.holds = v.status == Status::Certified;
  c.mode = to_string(v.mode);
  c.note = v.note;
  return c;
}

bool certified(const PipelineReport& r, const std::string& name) {
  const auto* c = r.find(name);
  return c && c->holds;
}

void add_sampling_caveats(PipelineReport& r) {
  for (const auto& c : r.conditions)
    if (c.verdict && c.verdict->mode == Mode::Sampled)
      r.caveats.push_back(c.name + " rests on random sampling (heuristic), not on interval arithmetic");
}

// Region checks shared by the real and the mixed route.
void run_region_checks(PipelineReport& r, const RealPolyMap& psi, const MixedPolynomial* f,
                       const PipelineOptions& opts) {
  r.conditions.push_back(from_verdict("sing_in_V", check_sing_in_V(psi, opts.eps, opts.tau_sing, opts.check)));
  r.conditions.push_back(from_verdict(
      "milnor_condition", check_milnor_ladder(psi, opts.eps, opts.shell_inner, opts.shell_ladder, opts.check)));
  auto omega = f ? check_omega_empty(*f, opts.eps, opts.omega_ladder, opts.check)
                 : check_omega_empty(psi, opts.eps, opts.omega_ladder, opts.check);
  for (std::size_t i = 0; i < omega.size(); ++i)
    r.conditions.push_back(from_verdict("omega_empty[tau=" + to_string(opts.omega_ladder[i]) + "]", omega[i]));

  r.caveats.push_back(
      "sing_in_V and milnor_condition are certified on explicit regions; the hypotheses of the theorems are germ "
      "statements at 0");

  bool sing_ok = certified(r, "sing_in_V");
  bool milnor_ok = certified(r, "milnor_condition");
  bool omega_ok = !omega.empty() && std::all_of(omega.begin(), omega.end(),
                                                [](const Verdict& v) { return v.status == Status::Certified; });
  bool radial_weighted = r.radial && r.radial->weights;

  if (omega_ok)
    r.caveats.push_back("omega_empty certified on every tau of the ladder: strong evidence for M(psi/|psi|) = empty, "
                        "not a proof for the germ");
  if (milnor_ok && omega_ok && radial_weighted) {
    r.path = TheoremPath::Thm1_5;
    r.caveats.push_back("M(psi/|psi|) = empty at the germ level follows from radial weighted-homogeneity (Omega "
                        "criterion with the Euler field); the criterion's equivalence is cited from earlier work");
  } else if (sing_ok && milnor_ok) {
    r.path = TheoremPath::Thm1_2;
    if (omega_ok && !radial_weighted)
      r.caveats.push_back("Thm1.5 not claimed: the omega ladder is region evidence only and no radial weights "
                          "support emptiness at the germ level");
  }
  r.caveats.push_back("Thom regularity is never inferred from the Milnor condition");
  add_sampling_caveats(r);
}

ConditionResult weight_condition(std::string name, bool holds, std::string note) {
  ConditionResult c;
  c.name = std::move(name);
  c.region = "exponent data (exact integer arithmetic)";
  c.holds = holds;
  c.mode = "exact";
  c.note = std::move(note);
  return c;
}

}  // namespace

PipelineReport run_pipeline(const RealPolyMap& psi, const PipelineOptions& opts) {
  PipelineReport r;
  r.input = psi.to_string();
  r.kind = "real";
  r.m = psi.source_dim();
  r.p = psi.target_dim();
  if (r.m == r.p) {
    r.degenerate = true;
    r.caveats.push_back("m = p: [D psi; x] never has rank p + 1, so M(psi) = R^m and no theorem path applies; only "
                        "the blow-out (tube) argument is available");
    return r;
  }
  if (!psi.is_zero()) {
    r.radial = detect_radial(psi);
    std::string note = r.radial->weights ? to_string(*r.radial->weights) : "no positive solution";
    if (r.radial->weights) {
      auto h = verify_homogeneity(psi, *r.radial->weights, opts.homogeneity_samples, opts.seed);
      note += "; sampled residual " + std::to_string(h.max_residual);
    }
    r.conditions.push_back(weight_condition("radial_weighted_homogeneous", r.radial->weights.has_value(), note));
  }
  run_region_checks(r, psi, nullptr, opts);
  return r;
}

PipelineReport run_pipeline(const MixedPolynomial& f, const PipelineOptions& opts) {
  PipelineReport r;
  r.input = f.to_string();
  r.kind = "mixed";
  r.m = 2 * f.n_vars();
  r.p = 2;
  if (f.is_zero()) {
    r.caveats.push_back("zero polynomial: V is everything");
    return r;
  }
  r.radial = detect_radial(f);
  r.polar = detect_polar(f);
  const auto& rw = r.radial->weights;
  const auto& pw = r.polar->weights;

  std::string rnote = rw ? to_string(*rw) : "no positive solution";
  if (rw) rnote += "; sampled residual " + std::to_string(verify_homogeneity(f, *rw, opts.homogeneity_samples, opts.seed).max_residual);
  r.conditions.push_back(weight_condition("radial_weighted_homogeneous", rw.has_value(), rnote));
  bool homogeneous = rw && std::all_of(rw->q.begin(), rw->q.end(), [](auto q) { return q == 1; });
  r.conditions.push_back(weight_condition("radial_homogeneous", homogeneous, homogeneous ? "q = (1,...,1)" : ""));
  std::string pnote = pw ? to_string(*pw) : "no solution with all p_j and k nonzero";
  if (pw) pnote += "; sampled residual " + std::to_string(verify_homogeneity(f, *pw, opts.homogeneity_samples, opts.seed).max_residual);
  r.conditions.push_back(weight_condition("polar_weighted_homogeneous", pw.has_value(), pnote));
  if (pw && r.polar->lattice.canonical_is_choice)
    r.caveats.push_back("polar weights: the solution lattice has rank " + std::to_string(r.polar->lattice.rank()) +
                        "; the reported representative is a canonical choice (min |k|, fewest negative weights, "
                        "smallest L1 norm, then lexicographic)");

  if (homogeneous && pw) {
    r.path = TheoremPath::Thm1_7;
    r.caveats.push_back("Thm1.7 hypotheses are decided exactly from the exponents; the open book and the "
                        "isomorphism with the tube fibration are the theorem's conclusions, not computed here");
    r.caveats.push_back("the glueing of the sphere fibration to the tube region is an existence argument; only the "
                        "two fibration samplers and the flow correspondence are exposed");
    return r;
  }
  if (rw && pw && !homogeneous)
    r.caveats.push_back("radial weighted-homogeneous but not radial homogeneous: the sphere fibration still exists "
                        "(Oka, Cisneros-Molina) but Thm1.7's open book claim needs q = (1,...,1)");
  run_region_checks(r, realify(f), &f, opts);
  return r;
}

int exit_code(const PipelineReport& report) {
  if (report.path != TheoremPath::None) return 0;
  for (const auto& c : report.conditions)
    if (c.verdict && c.verdict->status == Status::CounterexampleFound) return 2;
  return 3;
}

}  // namespace milnorkit
