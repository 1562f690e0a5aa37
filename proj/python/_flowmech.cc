// Copyright 2026 The Flowmech Authors.
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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "flowmech/benchgen.h"
#include "flowmech/cli.h"
#include "flowmech/errors.h"
#include "flowmech/instance.h"
#include "flowmech/mechanism.h"
#include "flowmech/muca_solver.h"
#include "flowmech/oracle.h"
#include "flowmech/repeat_solver.h"
#include "flowmech/report.h"
#include "flowmech/shortest_path.h"
#include "flowmech/trace.h"
#include "flowmech/ufp_solver.h"

namespace py = pybind11;
using namespace flowmech;

namespace {

SolveOptions make_options(double epsilon, bool until_saturated, int threads) {
  SolveOptions o;
  o.epsilon = epsilon;
  o.stop_rule = until_saturated ? StopRule::kUntilSaturated : StopRule::kWeightThreshold;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_flowmech, m) {
  m.doc() = "Primal-dual greedy solvers, critical-value payments and exhaustive oracles";

  auto base_value_error = py::register_exception<ValidationError>(m, "ValidationError",
                                                                 PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InfeasibleParameters>(m, "InfeasibleParameters", PyExc_ValueError);
  py::register_exception<OracleLimitExceeded>(m, "OracleLimitExceeded", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);
  (void)base_value_error;

  py::enum_<StopRule>(m, "StopRule")
      .value("WEIGHT_THRESHOLD", StopRule::kWeightThreshold)
      .value("UNTIL_SATURATED", StopRule::kUntilSaturated);
  py::enum_<ExitReason>(m, "ExitReason")
      .value("LIST_EMPTY", ExitReason::kListEmpty)
      .value("WEIGHT_THRESHOLD", ExitReason::kWeightThreshold)
      .value("SATURATED", ExitReason::kSaturated);

  py::class_<Edge>(m, "Edge")
      .def(py::init<>())
      .def(py::init([](int tail, int head, double capacity) { return Edge{tail, head, capacity}; }),
           py::arg("tail"), py::arg("head"), py::arg("capacity"))
      .def_readwrite("tail", &Edge::tail)
      .def_readwrite("head", &Edge::head)
      .def_readwrite("capacity", &Edge::capacity);
  py::class_<Request>(m, "Request")
      .def(py::init<>())
      .def(py::init([](std::string id, int s, int t, double d, double v) {
             return Request{std::move(id), s, t, d, v};
           }),
           py::arg("id"), py::arg("source"), py::arg("target"), py::arg("demand"),
           py::arg("value"))
      .def_readwrite("id", &Request::id)
      .def_readwrite("source", &Request::source)
      .def_readwrite("target", &Request::target)
      .def_readwrite("demand", &Request::demand)
      .def_readwrite("value", &Request::value);
  py::class_<UfpInstance>(m, "UfpInstance")
      .def(py::init<>())
      .def_readwrite("directed", &UfpInstance::directed)
      .def_readwrite("vertex_count", &UfpInstance::vertex_count)
      .def_readwrite("edges", &UfpInstance::edges)
      .def_readwrite("requests", &UfpInstance::requests)
      .def("request_index", &UfpInstance::request_index)
      .def("__eq__", [](const UfpInstance& a, const UfpInstance& b) { return a == b; });
  py::class_<NormalizedInstance>(m, "NormalizedInstance")
      .def_readwrite("inner", &NormalizedInstance::inner)
      .def_readwrite("B", &NormalizedInstance::B)
      .def_readwrite("scale", &NormalizedInstance::scale)
      .def("feasible_bound", &NormalizedInstance::feasible_bound);
  py::class_<MucaItem>(m, "MucaItem")
      .def_readwrite("id", &MucaItem::id)
      .def_readwrite("multiplicity", &MucaItem::multiplicity);
  py::class_<MucaRequest>(m, "MucaRequest")
      .def_readwrite("id", &MucaRequest::id)
      .def_readwrite("bundle", &MucaRequest::bundle)
      .def_readwrite("value", &MucaRequest::value);
  py::class_<MucaInstance>(m, "MucaInstance")
      .def(py::init<>())
      .def_readwrite("items", &MucaInstance::items)
      .def_readwrite("requests", &MucaInstance::requests)
      .def_property_readonly("B", &MucaInstance::B)
      .def("request_index", &MucaInstance::request_index);

  m.def("parse_ufp_instance", [](const std::string& t) { return parse_ufp_instance(t); });
  m.def("serialize_ufp_instance", &serialize_ufp_instance);
  m.def("parse_muca_instance", [](const std::string& t) { return parse_muca_instance(t); });
  m.def("serialize_muca_instance", &serialize_muca_instance);
  m.def("normalize", &normalize);
  m.def("as_given", &as_given);

  py::class_<Path>(m, "Path")
      .def_readonly("edges", &Path::edges)
      .def_readonly("vertices", &Path::vertices)
      .def_readonly("length", &Path::length);
  m.def("shortest_path",
        [](const UfpInstance& inst, const std::vector<double>& w, int s, int t) {
          return shortest_path(inst, w, s, t);
        },
        py::arg("instance"), py::arg("weights"), py::arg("source"), py::arg("target"));

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("iteration", &IterationRecord::iteration)
      .def_readonly("request", &IterationRecord::request)
      .def_readonly("request_id", &IterationRecord::request_id)
      .def_readonly("path", &IterationRecord::path)
      .def_readonly("alpha", &IterationRecord::alpha)
      .def_readonly("log_alpha", &IterationRecord::log_alpha)
      .def_readonly("d1", &IterationRecord::d1)
      .def_readonly("log_d1", &IterationRecord::log_d1)
      .def_readonly("d2", &IterationRecord::d2)
      .def_readonly("primal", &IterationRecord::primal);
  py::class_<Trace>(m, "Trace")
      .def_readonly("records", &Trace::records)
      .def_readonly("exit_reason", &Trace::exit_reason)
      .def_readonly("warnings", &Trace::warnings);

  py::class_<Allocation>(m, "Allocation")
      .def_readonly("request", &Allocation::request)
      .def_readonly("request_id", &Allocation::request_id)
      .def_readonly("path", &Allocation::path)
      .def_readonly("value", &Allocation::value);
  py::class_<UfpSolution>(m, "UfpSolution")
      .def_readonly("allocation", &UfpSolution::allocation)
      .def_readonly("primal_value", &UfpSolution::primal_value)
      .def_readonly("dual_certificate", &UfpSolution::dual_certificate)
      .def_readonly("trace", &UfpSolution::trace)
      .def_readonly("epsilon", &UfpSolution::epsilon)
      .def_readonly("B", &UfpSolution::B)
      .def("allocated", &UfpSolution::allocated);
  py::class_<RepeatAllocation>(m, "RepeatAllocation")
      .def_readonly("request", &RepeatAllocation::request)
      .def_readonly("request_id", &RepeatAllocation::request_id)
      .def_readonly("path", &RepeatAllocation::path)
      .def_readonly("count", &RepeatAllocation::count)
      .def_readonly("value", &RepeatAllocation::value);
  py::class_<RepeatSolution>(m, "RepeatSolution")
      .def_readonly("allocation", &RepeatSolution::allocation)
      .def_readonly("primal_value", &RepeatSolution::primal_value)
      .def_readonly("dual_certificate", &RepeatSolution::dual_certificate)
      .def_readonly("trace", &RepeatSolution::trace)
      .def("copies", &RepeatSolution::copies);
  py::class_<MucaWinner>(m, "MucaWinner")
      .def_readonly("request", &MucaWinner::request)
      .def_readonly("request_id", &MucaWinner::request_id)
      .def_readonly("bundle", &MucaWinner::bundle)
      .def_readonly("value", &MucaWinner::value);
  py::class_<MucaSolution>(m, "MucaSolution")
      .def_readonly("winners", &MucaSolution::winners)
      .def_readonly("primal_value", &MucaSolution::primal_value)
      .def_readonly("dual_certificate", &MucaSolution::dual_certificate)
      .def_readonly("trace", &MucaSolution::trace)
      .def("won", &MucaSolution::won);

  m.def("edge_weight", &edge_weight, py::arg("load"), py::arg("capacity"),
        py::arg("epsilon"), py::arg("B"));
  m.def("recommend_epsilon", &recommend_epsilon, py::arg("edge_count"), py::arg("B"));
  m.def("guarantee_holds", &guarantee_holds, py::arg("edge_count"), py::arg("B"),
        py::arg("epsilon"));
  m.def("solve_ufp",
        [](const NormalizedInstance& inst, double eps, bool sat, int threads) {
          return solve_ufp(inst, make_options(eps, sat, threads));
        },
        py::arg("instance"), py::arg("epsilon") = 0.1, py::arg("until_saturated") = false,
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("solve_ufp_repeat",
        [](const NormalizedInstance& inst, double eps, int threads) {
          return solve_ufp_repeat(inst, make_options(eps, false, threads));
        },
        py::arg("instance"), py::arg("epsilon") = 0.1, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("solve_muca",
        [](const MucaInstance& inst, double eps, bool sat) {
          return solve_muca(inst, make_options(eps, sat, 1));
        },
        py::arg("instance"), py::arg("epsilon") = 0.1, py::arg("until_saturated") = false,
        py::call_guard<py::gil_scoped_release>());

  py::class_<CriticalValue>(m, "CriticalValue")
      .def_readonly("winner", &CriticalValue::winner)
      .def_readonly("payment", &CriticalValue::payment)
      .def_readonly("tolerance", &CriticalValue::tolerance)
      .def_readonly("probes", &CriticalValue::probes);
  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("truthful_utility", &AuditReport::truthful_utility)
      .def_readonly("best_utility", &AuditReport::best_utility)
      .def_readonly("gain", &AuditReport::gain)
      .def_readonly("tolerance", &AuditReport::tolerance);
  m.def("critical_payment",
        [](const NormalizedInstance& inst, int request, double eps, double tol) {
          return critical_payment(inst, make_options(eps, false, 1), request, tol);
        },
        py::arg("instance"), py::arg("request"), py::arg("epsilon") = 0.1,
        py::arg("tolerance") = 0.0, py::call_guard<py::gil_scoped_release>());
  m.def("critical_payment",
        [](const MucaInstance& inst, int request, double eps, double tol) {
          return critical_payment(inst, make_options(eps, false, 1), request, tol);
        },
        py::arg("instance"), py::arg("request"), py::arg("epsilon") = 0.1,
        py::arg("tolerance") = 0.0, py::call_guard<py::gil_scoped_release>());
  m.def("payments_json",
        [](const NormalizedInstance& inst, double eps, double tol) {
          return payments_json(run_mechanism(inst, make_options(eps, false, 0), tol).payments);
        },
        py::arg("instance"), py::arg("epsilon") = 0.1, py::arg("tolerance") = 0.0,
        py::call_guard<py::gil_scoped_release>());
  m.def("utility_audit",
        [](const NormalizedInstance& inst, int request, const std::vector<double>& values,
           const std::vector<double>& demands, double eps, double tol) {
          return utility_audit(inst, make_options(eps, false, 1), request, values, demands, tol);
        },
        py::arg("instance"), py::arg("request"), py::arg("value_grid"),
        py::arg("demand_grid") = std::vector<double>{}, py::arg("epsilon") = 0.1,
        py::arg("tolerance") = 0.0, py::call_guard<py::gil_scoped_release>());

  py::class_<OracleLimits>(m, "OracleLimits")
      .def(py::init<>())
      .def_readwrite("max_requests", &OracleLimits::max_requests)
      .def_readwrite("max_paths", &OracleLimits::max_paths)
      .def_readwrite("max_nodes", &OracleLimits::max_nodes);
  py::class_<RoutedRequest>(m, "RoutedRequest")
      .def_readonly("request", &RoutedRequest::request)
      .def_readonly("path", &RoutedRequest::path)
      .def_readonly("count", &RoutedRequest::count);
  py::class_<UfpOptimum>(m, "UfpOptimum")
      .def_readonly("value", &UfpOptimum::value)
      .def_readonly("witness", &UfpOptimum::witness);
  py::class_<MucaOptimum>(m, "MucaOptimum")
      .def_readonly("value", &MucaOptimum::value)
      .def_readonly("winners", &MucaOptimum::winners);
  py::class_<RepeatOptimum>(m, "RepeatOptimum")
      .def_readonly("value", &RepeatOptimum::value)
      .def_readonly("witness", &RepeatOptimum::witness)
      .def_readonly("capped", &RepeatOptimum::capped);
  m.def("brute_force_opt_ufp", &brute_force_opt_ufp, py::arg("instance"),
        py::arg("limits") = OracleLimits{}, py::call_guard<py::gil_scoped_release>());
  m.def("brute_force_opt_muca", &brute_force_opt_muca, py::arg("instance"),
        py::arg("limits") = OracleLimits{}, py::call_guard<py::gil_scoped_release>());
  m.def("brute_force_opt_repeat", &brute_force_opt_repeat, py::arg("instance"),
        py::arg("max_total_copies"), py::arg("limits") = OracleLimits{},
        py::call_guard<py::gil_scoped_release>());
  m.def("enumerate_paths",
        [](const UfpInstance& inst, int s, int t, int max_paths) {
          return enumerate_paths(inst, s, t, max_paths);
        },
        py::arg("instance"), py::arg("source"), py::arg("target"), py::arg("max_paths") = 20);

  m.def("gen_directed_lb", &gen_directed_lb, py::arg("B"), py::arg("ell"),
        py::arg("subdivide") = false);
  m.def("gen_undirected_lb", &gen_undirected_lb, py::arg("B"));
  m.def("gen_muca_lb", &gen_muca_lb, py::arg("p"), py::arg("B"), py::arg("m"));
  m.def("gen_random",
        [](int vertices, int edges, int requests, double B, bool directed,
           std::uint64_t seed) {
          RandomUfpSpec spec;
          spec.vertices = vertices;
          spec.edges = edges;
          spec.requests = requests;
          spec.B = B;
          spec.directed = directed;
          spec.seed = seed;
          return gen_random(spec);
        },
        py::arg("vertices") = 6, py::arg("edges") = 9, py::arg("requests") = 5,
        py::arg("B") = 2.0, py::arg("directed") = false, py::arg("seed") = 1);

  m.def("ufp_solution_json", &ufp_solution_json);
  m.def("muca_solution_json", &muca_solution_json);
  m.def("repeat_solution_json", &repeat_solution_json);
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
          }
          return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one command line; returns (exit_code, stdout, stderr).");
}
