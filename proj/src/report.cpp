#include "milnorkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace milnorkit {

Json to_json(const RadialWeights& w) { return Json{{"q", w.q}, {"d", w.d}}; }

Json to_json(const PolarWeights& w) { return Json{{"p", w.p}, {"k", w.k}}; }

Json to_json(const WeightLattice& l) {
  Json j;
  j["basis"] = l.basis;
  j["rank"] = l.rank();
  j["canonical"] = l.canonical ? Json(*l.canonical) : Json(nullptr);
  j["canonical_is_choice"] = l.canonical_is_choice;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["mode"] = to_string(v.mode);
  if (v.status == Status::Certified) {
    j["bound"] = to_string(v.bound);
    j["bound_value"] = to_double(v.bound);
  } else {
    j["bound"] = nullptr;
  }
  if (v.status == Status::CounterexampleFound) {
    j["point"] = v.point;
    j["value"] = v.value;
  }
  if (v.status == Status::Inconclusive) {
    j["boxes_remaining"] = v.boxes_remaining;
    j["best_bound"] = v.best_bound;
  }
  j["boxes_explored"] = v.boxes_explored;
  j["boxes_discarded"] = v.boxes_discarded;
  if (v.mode == Mode::Sampled) j["samples"] = v.samples;
  j["tol"] = v.tol;
  j["region"] = v.region;
  j["note"] = v.note;
  return j;
}

Json to_json(const ConditionResult& c) {
  Json j;
  j["name"] = c.name;
  j["region"] = c.region;
  j["holds"] = c.holds;
  j["mode"] = c.mode;
  j["verdict"] = c.verdict ? Json(to_string(c.verdict->status)) : Json(c.holds ? "holds" : "fails");
  j["bound"] = c.verdict && c.verdict->status == Status::Certified ? Json(to_string(c.verdict->bound)) : Json(nullptr);
  if (c.verdict) j["details"] = to_json(*c.verdict);
  j["note"] = c.note;
  return j;
}

Json to_json(const PipelineReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["input"] = r.input;
  j["kind"] = r.kind;
  j["m"] = r.m;
  j["p"] = r.p;
  Json w;
  w["radial"] = r.radial && r.radial->weights ? to_json(*r.radial->weights) : Json(nullptr);
  w["polar"] = r.polar && r.polar->weights ? to_json(*r.polar->weights) : Json(nullptr);
  j["weights"] = w;
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));
  j["conditions"] = conds;
  j["theorem_path"] = to_string(r.path);
  j["degenerate"] = r.degenerate;
  j["caveats"] = r.caveats;
  return j;
}

Json to_json(const ThomReport& r) {
  Json j;
  j["label"] = r.label;
  Json curves = Json::array();
  for (const auto& c : r.curves) {
    curves.push_back(Json{{"curve", c.curve},
                          {"t", c.t},
                          {"sin_angle", c.sin_angle},
                          {"limit_estimate", c.limit_estimate},
                          {"trend", c.trend}});
  }
  j["curves"] = curves;
  return j;
}

Json to_json(const CorpusEntry& e) {
  Json j;
  j["id"] = e.id;
  j["kind"] = e.kind == CorpusKind::Mixed ? "mixed" : "real";
  j["source"] = e.source;
  j["provenance"] = e.provenance;
  j["radial"] = e.radial ? to_json(*e.radial) : Json(nullptr);
  j["polar"] = e.polar ? to_json(*e.polar) : Json(nullptr);
  j["sing_locus"] = e.sing_locus;
  j["expected_path"] = e.expected_path;
  return j;
}

Json to_json(const TransversalityRadius& t) {
  Json j;
  j["radius"] = t.radius ? Json(*t.radius) : Json(nullptr);
  j["samples"] = t.samples;
  j["bad_samples"] = t.bad_samples;
  j["max_bad_norm"] = t.max_bad_norm;
  j["lemma_consistent"] = t.lemma_consistent;
  j["lemma_samples"] = t.lemma_samples;
  return j;
}

namespace {

void write(std::ostringstream& out, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent >= 0) out << "\n" << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  const char* sep = indent >= 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",";
        first = false;
        newline(depth + 1);
        out << Json(it.key()).dump() << sep;
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out << "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        write(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << "]";
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      // Keep floats recognizable as floats.
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out << s;
      return;
    }
    default: out << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream out;
  write(out, j, indent, 0);
  return out.str();
}

}  // namespace milnorkit
