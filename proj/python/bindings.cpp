// Copyright 2026 The QAOA Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Configs and results cross the boundary as JSON text;
// the qaoa_engine package turns them into dicts.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qaoa/io.hpp"
#include "qaoa/optimizers.hpp"

namespace py = pybind11;
using namespace qaoa;

namespace {

WorkflowConfig config_for(const IsingProblem &problem, const std::string &config_json) {
    Json j = config_json.empty() ? Json::object() : parse_json_text(config_json);
    if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
    j["problem"] = problem_to_json(problem);
    return workflow_config_from_json(j);
}

VariationalParams raw_params(const QAOABackend &backend, std::vector<double> raw) {
    return {backend.spec().param_type, std::move(raw)};
}

py::array_t<std::complex<double>> to_numpy(const StateVector &state) {
    py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(state.dim()));
    std::copy(state.amplitudes().begin(), state.amplitudes().end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Statevector QAOA and recursive QAOA";

    // Translators run newest first, so the subclass is registered last.
    auto base = py::register_exception<Error>(m, "QAOAError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base);

    py::class_<IsingProblem>(m, "Problem")
        .def(py::init([](const std::vector<TermIndices> &terms, const std::vector<double> &coeffs, int n, double constant) {
                 return IsingProblem::from_terms(terms, coeffs, n, constant);
             }),
             py::arg("terms"), py::arg("coeffs"), py::arg("n"), py::arg("constant") = 0.0)
        .def_property_readonly("n", &IsingProblem::n)
        .def_property_readonly("constant", &IsingProblem::constant)
        .def("terms", &IsingProblem::terms, "Canonical (terms, coeffs), linear terms first.")
        .def("energy", [](const IsingProblem &p, std::uint64_t index) { return p.energy(index); }, py::arg("index"))
        .def("energy", [](const IsingProblem &p, const std::string &bits) { return p.energy(bits_to_index(bits)); },
             py::arg("bitstring"))
        .def("to_json", [](const IsingProblem &p) { return problem_to_json(p).dump(); })
        .def_static("from_json", [](const std::string &text) { return problem_from_json(parse_json_text(text), ""); })
        .def("__eq__", [](const IsingProblem &a, const IsingProblem &b) { return a == b; })
        .def("__repr__", [](const IsingProblem &p) {
            return "<Problem n=" + std::to_string(p.n()) + " terms=" + std::to_string(p.term_count()) + ">";
        });

    m.def("maxcut", [](const std::vector<std::tuple<int, int, double>> &edges) {
        std::vector<WeightedEdge> e;
        for (const auto &[a, b, w] : edges) e.push_back({a, b, w});
        return maxcut_to_ising(e);
    }, py::arg("edges"), "Ising form of weighted MaxCut; edges are (j, k, weight).");
    m.def("random_regular_graph", [](int n, int degree, std::uint64_t seed) {
        std::vector<std::tuple<int, int, double>> out;
        for (const auto &e : random_regular_graph(n, degree, seed)) out.emplace_back(e.first, e.second, e.weight);
        return out;
    }, py::arg("n"), py::arg("degree"), py::arg("seed"));
    m.def("random_ising", &random_ising, py::arg("n"), py::arg("density"), py::arg("low") = -1.0, py::arg("high") = 1.0,
          py::arg("seed") = 0);
    m.def("brute_force", [](const IsingProblem &p, int limit) {
        const auto solution = brute_force_solve(p, limit);
        std::vector<std::string> bits;
        for (const auto &s : solution.minimizers) bits.push_back(s.bits());
        return py::make_tuple(solution.energy, bits);
    }, py::arg("problem"), py::arg("limit") = kDefaultExhaustiveLimit, "Minimum energy and every minimizing bitstring.");

    py::class_<QAOABackend>(m, "Backend")
        .def(py::init([](const IsingProblem &problem, const std::string &config_json) {
                 const auto config = config_for(problem, config_json);
                 return QAOABackend(problem, config.qaoa.ansatz, config.qaoa.backend);
             }),
             py::arg("problem"), py::arg("config_json") = "")
        .def_property_readonly("param_count", [](const QAOABackend &b) { return param_count(b.spec(), b.problem()); })
        .def("expectation",
             [](QAOABackend &b, std::vector<double> raw) { return b.expectation(raw_params(b, std::move(raw))); },
             py::arg("raw"))
        .def("wavefunction",
             [](const QAOABackend &b, std::vector<double> raw) { return to_numpy(b.wavefunction(raw_params(b, std::move(raw)))); },
             py::arg("raw"))
        .def("gradient",
             [](QAOABackend &b, std::vector<double> raw) { return grad_parameter_shift(b, raw_params(b, std::move(raw))); },
             py::arg("raw"), "Parameter-shift gradient in the raw parameter space.")
        .def("counters", [](const QAOABackend &b) {
            py::dict d;
            d["circuit_evaluations"] = b.counters().circuit_evaluations;
            d["shots"] = b.counters().shots;
            return d;
        });

    m.def("run_qaoa_json", [](const IsingProblem &problem, const std::string &config_json) {
        const auto config = config_for(problem, config_json);
        QAOAResult result;
        {
            py::gil_scoped_release release;
            result = run_qaoa(config.problem, config.qaoa);
        }
        return qaoa_result_to_json(result, config.qaoa.result.max_distribution_entries).dump();
    }, py::arg("problem"), py::arg("config_json") = "");
    m.def("run_rqaoa_json", [](const IsingProblem &problem, const std::string &config_json) {
        const auto config = config_for(problem, config_json);
        RQAOAResult result;
        {
            py::gil_scoped_release release;
            result = run_rqaoa(config.problem, config.qaoa, config.rqaoa);
        }
        return rqaoa_result_to_json(result, config.qaoa.result.max_distribution_entries).dump();
    }, py::arg("problem"), py::arg("config_json") = "");
    m.def("landscape", [](const IsingProblem &problem, const std::string &config_json, std::tuple<double, double, int> first,
                          std::tuple<double, double, int> second) {
        const auto config = config_for(problem, config_json);
        const GridAxis a{std::get<0>(first), std::get<1>(first), std::get<2>(first)};
        const GridAxis b{std::get<0>(second), std::get<1>(second), std::get<2>(second)};
        const auto scan = landscape_scan(config.problem, config.qaoa.ansatz, config.qaoa.backend, a, b);
        py::array_t<double> costs({scan.first_values.size(), scan.second_values.size()});
        std::copy(scan.costs.begin(), scan.costs.end(), costs.mutable_data());
        return py::make_tuple(scan.first_values, scan.second_values, costs);
    }, py::arg("problem"), py::arg("config_json"), py::arg("first"), py::arg("second"),
          "Cost grid over the two raw parameters; axes are (low, high, points).");
}
