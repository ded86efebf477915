// Copyright 2026 The innotree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Thin pybind11 layer. Structured results cross the boundary as JSON text
// and are decoded by the innotree package.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "innotree/api.hpp"
#include "innotree/engine.hpp"
#include "innotree/io.hpp"
#include "innotree/mining.hpp"
#include "innotree/model.hpp"
#include "innotree/rules.hpp"

namespace py = pybind11;
using namespace innotree;

namespace {

py::tuple as_tuple(const ApiResponse& r) {
  return py::make_tuple(r.status, r.content_type, r.body, r.version);
}

// Snapshot handles are taken under the GIL and released before any work.
template <typename F>
py::tuple with_snapshot(Engine& e, F&& f) {
  ApiResponse r;
  {
    py::gil_scoped_release nogil;
    r = f(*e.snapshot());
  }
  return as_tuple(r);
}

}  // namespace

PYBIND11_MODULE(_innotree, m) {
  // Owned by the module; the translator only borrows it.
  static py::handle error_type = py::exception<Error>(m, "Error", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Engine>(m, "Engine")
      .def(py::init([](const std::string& config) { return new Engine(load_engine_config(config)); }),
           py::arg("config"))
      .def_property_readonly("version", [](const Engine& e) { return e.snapshot()->version; })
      .def("reload", [](Engine& e) { return as_tuple(api_reload(e)); })
      .def("validate",
           [](const Engine& e) {
             auto report = validate_snapshot(*e.snapshot());
             return to_json(report).dump();
           })
      .def("health", [](Engine& e) { return with_snapshot(e, api_health); })
      .def("model", [](Engine& e) { return with_snapshot(e, api_model); })
      .def("whatif",
           [](Engine& e, const std::string& body) {
             return with_snapshot(e, [&](const EngineSnapshot& s) { return api_whatif(s, body); });
           },
           py::arg("body"))
      .def("variants",
           [](Engine& e, std::optional<std::string> limit, std::optional<std::string> param) {
             return with_snapshot(e, [&](const EngineSnapshot& s) { return api_variants(s, limit, param); });
           },
           py::arg("limit"), py::arg("param") = py::none())
      .def("static_report",
           [](Engine& e, const std::string& id) {
             return with_snapshot(e, [&](const EngineSnapshot& s) { return api_static_report(s, id); });
           },
           py::arg("id"))
      .def("pivot_report",
           [](Engine& e, const std::string& id) {
             return with_snapshot(e, [&](const EngineSnapshot& s) { return api_pivot_report(s, id); });
           },
           py::arg("id"))
      .def("trace",
           [](Engine& e, const std::string& body) {
             return with_snapshot(e, [&](const EngineSnapshot& s) { return api_rules_trace(s, body); });
           },
           py::arg("body"));

  m.def(
      "forward_chain",
      [](const std::string& rules_json, const std::vector<std::string>& seed) {
        return to_json(forward_chain(parse_rules(rules_json), make_facts(seed))).dump();
      },
      py::arg("rules_json"), py::arg("seed"));

  m.def(
      "explain",
      [](const std::string& rules_json, const std::vector<std::string>& seed, const std::string& fact) {
        const auto result = forward_chain(parse_rules(rules_json), make_facts(seed));
        return to_json(explain(Fact(fact), result)).dump();
      },
      py::arg("rules_json"), py::arg("seed"), py::arg("fact"));

  m.def(
      "mine_csv",
      [](const std::string& text, std::optional<std::size_t> max_depth, std::size_t min_rows) {
        const auto dataset = parse_dataset_csv(text);
        const auto tree = induce(dataset, {max_depth, min_rows});
        std::size_t correct = 0;
        for (const auto& row : dataset.rows) correct += classify(tree, row) == row.label;
        return py::make_tuple(dump_rules(tree_to_rules(tree)), correct, dataset.rows.size(),
                              tree.depth(), tree.leaf_count());
      },
      py::arg("text"), py::arg("max_depth") = py::none(), py::arg("min_rows") = 1);

  m.def(
      "interpolate",
      [](const std::vector<std::pair<double, double>>& points, double param) {
        return innotree::interpolate(Series{points}, param);
      },
      py::arg("points"), py::arg("param"));
}
