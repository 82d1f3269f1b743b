#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "planrec/analysis.hpp"
#include "planrec/infer.hpp"
#include "planrec/library.hpp"
#include "planrec/netbuild.hpp"

namespace py = pybind11;
using namespace planrec;

namespace {

py::dict node_dict(const Node& n) {
  py::dict d;
  d["id"] = n.id;
  d["kind"] = std::string(kind_name(n.kind));
  d["label"] = n.label;
  d["parents"] = n.parents;
  d["cpt"] = n.cpt.table();
  return d;
}

}  // namespace

PYBIND11_MODULE(_planrec, m) {
  m.doc() = "Bayesian plan recognition: network construction and exact inference";

  auto base_error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());
  py::register_exception<InconsistentEvidence>(m, "InconsistentEvidence", base_error.ptr());

  py::class_<PlanLibrary>(m, "PlanLibrary")
      .def_property_readonly("type_names",
                             [](const PlanLibrary& lib) {
                               std::vector<std::string> out;
                               for (const auto& [name, t] : lib.types()) out.push_back(name);
                               return out;
                             })
      .def_property_readonly("schema_names",
                             [](const PlanLibrary& lib) {
                               std::vector<std::string> out;
                               for (const auto& [name, s] : lib.schemas()) out.push_back(name);
                               return out;
                             })
      .def("type_prior", [](const PlanLibrary& lib, const std::string& t) { return lib.type(t).prior; })
      .def("triggers_for_type",
           [](const PlanLibrary& lib, const std::string& t) {
             std::vector<std::string> out;
             for (const auto* s : lib.triggers_for_type(t)) out.push_back(s->name);
             return out;
           })
      .def("slots_accepting", [](const PlanLibrary& lib, const std::string& t) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [s, slot] : lib.slots_accepting(t)) out.emplace_back(s->name, slot->name);
        return out;
      });

  py::class_<Story>(m, "Story")
      .def_property_readonly("tokens", [](const Story& s) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& t : s.tokens) out.emplace_back(t.word, t.entity);
        return out;
      });

  py::class_<Config>(m, "Config")
      .def(py::init<>())
      .def_readwrite("equality_prior", &Config::equality_prior)
      .def_readwrite("mention_enabled", &Config::mention_enabled)
      .def_readwrite("mention_base", &Config::mention_base)
      .def_readwrite("mention_lift", &Config::mention_lift)
      .def_readwrite("word_leak", &Config::word_leak)
      .def_readwrite("max_equality_candidates", &Config::max_equality_candidates);

  py::class_<BayesNet>(m, "BayesNet")
      .def("__len__", &BayesNet::size)
      .def_property_readonly("evidence", &BayesNet::evidence)
      .def_property_readonly("nodes",
                             [](const BayesNet& net) {
                               py::list out;
                               for (const auto& n : net.nodes()) out.append(node_dict(n));
                               return out;
                             })
      .def("find", &BayesNet::find, py::arg("label"));

  py::class_<Session>(m, "Session")
      .def(py::init<PlanLibrary, Config>(), py::arg("library"), py::arg("config"))
      .def("assert_token", &Session::assert_token, py::arg("word"), py::arg("entity"))
      .def("network", &Session::network)
      .def("__len__", &Session::node_count);

  m.def("load_library", &load_library, py::arg("text"));
  m.def("load_story", &load_story, py::arg("text"), py::arg("library"));
  m.def("build_network", &build_network, py::arg("library"), py::arg("story"), py::arg("config"));
  m.def("to_dot", &to_dot, py::arg("net"));

  m.def(
      "posterior",
      [](const BayesNet& net, NodeId query, std::optional<Evidence> evidence) {
        return posterior(net, evidence.value_or(net.evidence()), query);
      },
      py::arg("net"), py::arg("query"), py::arg("evidence") = py::none());
  m.def(
      "marginals",
      [](const BayesNet& net, const std::vector<NodeId>& query, std::optional<Evidence> evidence) {
        return marginals(net, evidence.value_or(net.evidence()), query);
      },
      py::arg("net"), py::arg("query"), py::arg("evidence") = py::none());
  m.def(
      "enumerate_posterior",
      [](const BayesNet& net, NodeId query, std::optional<Evidence> evidence) {
        return enumerate_posterior(net, evidence.value_or(net.evidence()), query);
      },
      py::arg("net"), py::arg("query"), py::arg("evidence") = py::none());

  m.def("fragment_ratio", &fragment_ratio, py::arg("p_e"), py::arg("p_r"), py::arg("p_k"));
  m.def("fragment_ratio_by_inference", &fragment_ratio_by_inference, py::arg("p_e"), py::arg("p_r"),
        py::arg("p_k"));
  m.def("fragment_mention_lift", &fragment_mention_lift, py::arg("equality_prior"), py::arg("mention_base"),
        py::arg("mention_lift"));
  m.def("mention_lift", &mention_lift, py::arg("library"), py::arg("story"), py::arg("config"), py::arg("entity"));
  m.def(
      "sweep_equality_prior",
      [](const PlanLibrary& lib, const Story& story, const Config& base, const std::vector<double>& grid,
         const std::string& query) {
        std::vector<std::pair<double, double>> out;
        for (const auto& r : sweep_equality_prior(lib, story, base, grid, query))
          out.emplace_back(r.equality_prior, r.posterior);
        return out;
      },
      py::arg("library"), py::arg("story"), py::arg("config"), py::arg("grid"), py::arg("query"));
  m.def(
      "preset", [](const std::string& name) { return preset(name).config; }, py::arg("name"));
  m.def(
      "knob_preset", [](double e) { return knob_preset(e).config; }, py::arg("equality_prior"));
  m.def(
      "recognize",
      [](const BayesNet& net) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& r : recognize(net)) out.emplace_back(r.label, r.posterior);
        return out;
      },
      py::arg("net"));
}
