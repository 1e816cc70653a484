#include <pybind11/complex.h>
#include <pybind11/iostream.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "milnorkit/certify.hpp"
#include "milnorkit/cli.hpp"
#include "milnorkit/corpus.hpp"
#include "milnorkit/error.hpp"
#include "milnorkit/fibration.hpp"
#include "milnorkit/milnor_set.hpp"
#include "milnorkit/parse.hpp"
#include "milnorkit/pipeline.hpp"
#include "milnorkit/report.hpp"
#include "milnorkit/weights.hpp"

namespace py = pybind11;
using namespace milnorkit;

namespace {

// Polynomials cross the boundary as their text form; maps as (text, m).
struct PyMap {
  RealPolyMap map;
  std::string text() const { return map.to_string(); }
};

PyMap to_map(const std::string& text) {
  if (corpus_has(text)) return {corpus_get(text).map()};
  if (!text.empty() && text.front() == '(' && text.find('x') != std::string::npos) return {parse_real_map(text)};
  return {realify(parse_mixed(text))};
}

py::dict weights_dict(const std::optional<RadialWeights>& w) {
  py::dict d;
  if (w) {
    d["q"] = w->q;
    d["d"] = w->d;
  }
  return d;
}

CheckOptions check_options(std::size_t budget) {
  CheckOptions o;
  if (budget) o.bb.budget = budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_milnorkit, m) {
  m.doc() = "milnorkit core bindings";

  auto base = py::register_exception<Error>(m, "MilnorkitError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<PyMap>(m, "RealMap")
      .def_property_readonly("source_dim", [](const PyMap& p) { return p.map.source_dim(); })
      .def_property_readonly("target_dim", [](const PyMap& p) { return p.map.target_dim(); })
      .def("__call__", [](const PyMap& p, const std::vector<double>& x) { return eval_map(p.map, x); })
      .def("__str__", &PyMap::text)
      .def("__repr__", [](const PyMap& p) { return "RealMap" + p.text(); });

  py::class_<Verdict>(m, "Verdict")
      .def_property_readonly("status", [](const Verdict& v) { return to_string(v.status); })
      .def_property_readonly("mode", [](const Verdict& v) { return to_string(v.mode); })
      .def_property_readonly("bound", [](const Verdict& v) { return to_string(v.bound); })
      .def_property_readonly("bound_value", [](const Verdict& v) { return to_double(v.bound); })
      .def_readonly("point", &Verdict::point)
      .def_readonly("value", &Verdict::value)
      .def_readonly("boxes_explored", &Verdict::boxes_explored)
      .def_readonly("region", &Verdict::region)
      .def_readonly("note", &Verdict::note)
      .def("__repr__", [](const Verdict& v) { return "<Verdict " + to_string(v.status) + ">"; });
  m.attr("Certified") = to_string(Status::Certified);
  m.attr("CounterexampleFound") = to_string(Status::CounterexampleFound);
  m.attr("Inconclusive") = to_string(Status::Inconclusive);

  m.def("parse_mixed", [](const std::string& s) { return parse_mixed(s).to_string(); },
        "Parse and normalize a mixed polynomial; returns its canonical text.");
  m.def("parse_real_map", [](const std::string& s) { return PyMap{parse_real_map(s)}; });
  m.def("realify", [](const std::string& s) { return PyMap{realify(parse_mixed(s))}; });
  m.def("corpus_ids", &corpus_list);
  m.def("corpus_map", [](const std::string& id) { return PyMap{corpus_get(id).map()}; });
  m.def("corpus_mixed", [](const std::string& id) { return corpus_get(id).mixed().to_string(); });

  m.def("detect_radial", [](const std::string& s) {
    if (corpus_has(s) && corpus_get(s).kind == CorpusKind::Real) return weights_dict(detect_radial(corpus_get(s).map()).weights);
    if (!s.empty() && s.front() == '(') return weights_dict(detect_radial(parse_real_map(s)).weights);
    auto f = corpus_has(s) ? corpus_get(s).mixed() : parse_mixed(s);
    return weights_dict(detect_radial(f).weights);
  });
  m.def("detect_polar", [](const std::string& s) {
    auto f = corpus_has(s) ? corpus_get(s).mixed() : parse_mixed(s);
    py::dict d;
    if (auto w = detect_polar(f).weights) {
      d["p"] = w->p;
      d["k"] = w->k;
    }
    return d;
  });

  m.def("sing_defect", [](const PyMap& p, const std::vector<double>& x) { return sing_defect(p.map, x); });
  m.def("milnor_defect", [](const PyMap& p, const std::vector<double>& x) { return milnor_defect(p.map, x); });
  m.def("omega_defect", [](const PyMap& p, const std::vector<double>& x) { return omega_defect(p.map, x); });
  m.def("minor_sos_poly", [](const PyMap& p, const std::string& kind) {
    return minor_sos_poly(p.map, parse_defect_kind(kind)).poly.to_string();
  });

  m.def(
      "bb_positivity",
      [](const std::string& poly, const std::string& region, std::size_t m, std::size_t budget) {
        BBOptions o;
        if (budget) o.budget = budget;
        py::gil_scoped_release release;
        return bb_positivity(parse_real_poly(poly, m), parse_region(region, m), o);
      },
      py::arg("poly"), py::arg("region"), py::arg("m"), py::arg("budget") = 0);
  m.def(
      "check_sing_in_V",
      [](const PyMap& p, const std::string& eps, const std::string& tau, std::size_t budget) {
        py::gil_scoped_release release;
        return check_sing_in_V(p.map, parse_rational(eps), parse_rational(tau), check_options(budget));
      },
      py::arg("psi"), py::arg("eps") = "1", py::arg("tau") = "1/10000", py::arg("budget") = 0);
  m.def(
      "check_milnor_condition",
      [](const PyMap& p, const std::string& region, std::size_t budget) {
        py::gil_scoped_release release;
        return check_milnor_condition(p.map, parse_region(region, p.map.source_dim()), check_options(budget));
      },
      py::arg("psi"), py::arg("region"), py::arg("budget") = 0);
  m.def(
      "check_omega_empty",
      [](const PyMap& p, const std::string& eps, const std::vector<std::string>& ladder, std::size_t budget) {
        std::vector<Rational> taus;
        for (const auto& t : ladder) taus.push_back(parse_rational(t));
        py::gil_scoped_release release;
        return check_omega_empty(p.map, parse_rational(eps), taus, check_options(budget));
      },
      py::arg("psi"), py::arg("eps") = "1", py::arg("ladder") = std::vector<std::string>{"1/100"},
      py::arg("budget") = 0);

  m.def("pipeline_json", [](const std::string& s, std::size_t budget) {
    PipelineOptions o;
    if (budget) o.check.bb.budget = budget;
    PipelineReport r;
    {
      py::gil_scoped_release release;
      if (corpus_has(s))
        r = corpus_get(s).kind == CorpusKind::Mixed ? run_pipeline(corpus_get(s).mixed(), o)
                                                    : run_pipeline(corpus_get(s).map(), o);
      else if (!s.empty() && s.front() == '(' && s.find('x') != std::string::npos)
        r = run_pipeline(parse_real_map(s), o);
      else
        r = run_pipeline(parse_mixed(s), o);
    }
    return dump_json(to_json(r), -1);
  });

  m.def("sebastiani_sum", [](const std::string& left, const std::string& right) {
    auto s = sebastiani_sum(to_map(left).map, to_map(right).map);
    return py::make_tuple(PyMap{s.map}, weights_dict(s.weights));
  });

  m.def("sample_sphere", [](std::size_t dim, double eps, std::size_t n, std::uint64_t seed) {
    return sample_sphere(dim, eps, n, seed).points();
  });
  m.def(
      "page_decompose",
      [](const PyMap& p, double eps, std::size_t n, std::size_t bins, std::uint64_t seed) {
        auto pd = page_decompose(p.map, eps, n, bins, seed);
        std::vector<std::vector<std::vector<double>>> pages;
        for (const auto& page : pd.pages) pages.push_back(page.points());
        return pages;
      },
      py::arg("psi"), py::arg("eps") = 1.0, py::arg("n") = 1000, py::arg("bins") = 12, py::arg("seed") = 1);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "milnorkit");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    py::scoped_ostream_redirect out;
    return cli::run(static_cast<int>(argv.size()), argv.data());
  });
}
