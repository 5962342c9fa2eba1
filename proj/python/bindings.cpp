#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>

#include "full/evaluator.hpp"
#include "full/parser.hpp"
#include "full/printer.hpp"
#include "full/report.hpp"
#include "full/transform.hpp"
#include "full/universalizer.hpp"

namespace py = pybind11;
using namespace full;

namespace {

using KbPtr = std::shared_ptr<KnowledgeBase>;

// Owned by the module object.
PyObject* g_parse_error = nullptr;
PyObject* g_full_error = nullptr;

ResourceLimits limits(std::size_t max_facts, std::size_t max_iterations, std::size_t max_term_depth) {
  return {max_facts, max_iterations, max_term_depth};
}

// Results cross the boundary as JSON text; the Python side decodes them.
std::string evaluate_json(const KbPtr& kb, const std::string& maxim, const std::string& op, std::size_t max_facts,
                          std::size_t max_iterations, std::size_t max_term_depth, bool trace) {
  auto parsed = deontic_from_string(op);
  if (!parsed) throw Error("unknown deontic operator '" + op + "' (expected perm, imp or obl)");
  const Maxim& m = kb->maxim(maxim);
  std::string out;
  {
    py::gil_scoped_release release;
    Verdict v = evaluate(kb, *parsed, m, limits(max_facts, max_iterations, max_term_depth));
    nlohmann::json j = verdict_json(v, trace);
    j["query"]["name"] = maxim;
    out = j.dump();
  }
  return out;
}

std::string check_json(const KbPtr& kb, std::size_t max_facts, std::size_t max_iterations, std::size_t max_term_depth) {
  py::gil_scoped_release release;
  SaturationResult r = check_gamma_consistency(kb, limits(max_facts, max_iterations, max_term_depth));
  nlohmann::json j = {{"status", to_string(r.status)},
                      {"consistent", r.status == SaturationStatus::SaturatedConsistent},
                      {"axioms", kb->axioms.size()},
                      {"maxims", kb->maxims.size()},
                      {"facts", r.context->size()},
                      {"iterations", r.iterations}};
  j["evidence"] = r.evidence ? evidence_json(*r.context, *r.evidence) : nlohmann::json(nullptr);
  return j.dump();
}

std::vector<std::string> names_of(const auto& items) {
  std::vector<std::string> out;
  for (const auto& i : items) out.push_back(i.name);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of fulllogic";

  g_full_error = py::exception<Error>(m, "FullError").ptr();
  g_parse_error = py::exception<ParseError>(m, "ParseError", g_full_error).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object err = py::handle(g_parse_error)(e.what());
      err.attr("line") = e.where().line;
      err.attr("column") = e.where().column;
      PyErr_SetObject(g_parse_error, err.ptr());
    } catch (const Error& e) {
      PyErr_SetString(g_full_error, e.what());
    }
  });

  py::class_<KnowledgeBase, KbPtr>(m, "KnowledgeBase")
      .def_property_readonly("maxims", [](const KnowledgeBase& kb) { return names_of(kb.maxims); })
      .def_property_readonly("axioms", [](const KnowledgeBase& kb) { return names_of(kb.axioms); })
      .def("maxim_text", [](const KnowledgeBase& kb, const std::string& name) { return render(kb.maxim(name)); })
      .def("render", [](const KnowledgeBase& kb) { return render(kb); })
      .def("__repr__", [](const KnowledgeBase& kb) {
        return "<KnowledgeBase axioms=" + std::to_string(kb.axioms.size()) +
               " maxims=" + std::to_string(kb.maxims.size()) + ">";
      });

  m.def("parse_kb", [](const std::string& text) { return std::make_shared<KnowledgeBase>(parse_kb(text)); },
        py::arg("text"));
  m.def("load_kb", [](const std::string& path) { return std::make_shared<KnowledgeBase>(load_kb(path)); },
        py::arg("path"));

  m.def("normalize", [](const KnowledgeBase& kb, const std::string& f) { return render(normalize(parse_formula(kb, f))); },
        py::arg("kb"), py::arg("formula"));
  m.def("alpha_equivalent",
        [](const KnowledgeBase& kb, const std::string& a, const std::string& b) {
          return alpha_equivalent(parse_formula(kb, a), parse_formula(kb, b));
        },
        py::arg("kb"), py::arg("a"), py::arg("b"));

  m.def("universalize_json",
        [](const KnowledgeBase& kb, const std::string& maxim) {
          nlohmann::json j = ul_json(universalize(kb.maxim(maxim)));
          j["maxim"] = maxim;
          return j.dump();
        },
        py::arg("kb"), py::arg("maxim"));

  const ResourceLimits d;
  m.def("evaluate_json", &evaluate_json, py::arg("kb"), py::arg("maxim"), py::arg("op") = "perm",
        py::arg("max_facts") = d.max_facts, py::arg("max_iterations") = d.max_iterations,
        py::arg("max_term_depth") = d.max_term_depth, py::arg("trace") = false);
  m.def("check_json", &check_json, py::arg("kb"), py::arg("max_facts") = d.max_facts,
        py::arg("max_iterations") = d.max_iterations, py::arg("max_term_depth") = d.max_term_depth);
}
