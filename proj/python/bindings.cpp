// Copyright 2026 The Authors.
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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "drauction/analytic.hpp"
#include "drauction/baseline.hpp"
#include "drauction/dist.hpp"
#include "drauction/errors.hpp"
#include "drauction/mechanism.hpp"
#include "drauction/model.hpp"
#include "drauction/random.hpp"
#include "drauction/scenario.hpp"

namespace py = pybind11;
using namespace drauction;

namespace {

std::vector<Bidder> to_bidders(const std::vector<Participant>& users, double q) {
  return make_lognormal_bidders(users, q);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Demand response reward mechanism";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<InfeasibleTargetError>(m, "InfeasibleTargetError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<FitError>(m, "FitError", base.ptr());
  py::register_exception<UnboundedThresholdError>(m, "UnboundedThresholdError", base.ptr());

  py::class_<ConsumptionParams>(m, "ConsumptionParams")
      .def(py::init([](double sigma, double scale, double loc) {
             ConsumptionParams p{sigma, scale, loc};
             p.validate();
             return p;
           }),
           py::arg("sigma") = 1.0, py::arg("scale") = 1.0, py::arg("loc") = 0.0)
      .def_readwrite("sigma", &ConsumptionParams::sigma)
      .def_readwrite("scale", &ConsumptionParams::scale)
      .def_readwrite("loc", &ConsumptionParams::loc)
      .def("mean", &ConsumptionParams::mean)
      .def("__eq__", [](const ConsumptionParams& a, const ConsumptionParams& b) { return a == b; })
      .def("__repr__", [](const ConsumptionParams& p) {
        std::ostringstream os;
        os << "ConsumptionParams(sigma=" << p.sigma << ", scale=" << p.scale << ", loc=" << p.loc
           << ")";
        return os.str();
      });

  py::class_<UserType>(m, "UserType")
      .def(py::init([](double alpha, const ConsumptionParams& params) {
             UserType t{alpha, params};
             t.validate();
             return t;
           }),
           py::arg("alpha") = 0.05, py::arg("params") = ConsumptionParams{})
      .def_readwrite("alpha", &UserType::alpha)
      .def_readwrite("params", &UserType::params);

  py::class_<Participant>(m, "Participant")
      .def(py::init([](std::string id, const UserType& type, double baseline) {
             return Participant{std::move(id), type, baseline};
           }),
           py::arg("id"), py::arg("type"), py::arg("baseline"))
      .def_readwrite("id", &Participant::id)
      .def_readwrite("type", &Participant::type)
      .def_readwrite("baseline", &Participant::baseline);

  m.def("expected_utility", &expected_utility, py::arg("theta"), py::arg("baseline"),
        py::arg("q"), py::arg("r"));
  m.def("expected_reduction", &expected_reduction, py::arg("theta"), py::arg("baseline"),
        py::arg("r"));
  m.def(
      "threshold_reward",
      [](const UserType& t, double baseline, double q) { return threshold_reward(t, baseline, q); },
      py::arg("theta"), py::arg("baseline"), py::arg("q"));
  m.def(
      "max_feasible_target",
      [](const std::vector<Participant>& users, double q) { return max_feasible_target(users, q); },
      py::arg("users"), py::arg("q"));

  py::class_<Bidder>(m, "Bidder")
      .def(py::init(&make_bidder), py::arg("id"), py::arg("threshold"), py::arg("reduction"))
      .def_readonly("id", &Bidder::id)
      .def_readonly("threshold", &Bidder::threshold)
      .def("reduction", [](const Bidder& b, double r) { return b.reduction(r); });

  py::class_<Allocation>(m, "Allocation")
      .def_readonly("ranking", &Allocation::ranking)
      .def_readonly("targeted", &Allocation::targeted)
      .def_readonly("rewards", &Allocation::rewards)
      .def_readonly("j_max", &Allocation::j_max)
      .def_readonly("j_of", &Allocation::j_of)
      .def("reward", &Allocation::reward)
      .def("is_targeted", &Allocation::is_targeted);

  m.def(
      "run_dr_mechanism",
      [](const std::vector<Bidder>& bidders, double target) {
        return run_dr_mechanism(bidders, target);
      },
      py::arg("bidders"), py::arg("target"));
  m.def(
      "run_omniscient",
      [](const std::vector<Bidder>& bidders, double target, double epsilon) {
        return run_omniscient(bidders, target, epsilon);
      },
      py::arg("bidders"), py::arg("target"), py::arg("epsilon") = 0.0);
  m.def("lognormal_bidders", &to_bidders, py::arg("users"), py::arg("q"),
        "Bidders whose thresholds and reductions come from the lognormal model.");
  m.def(
      "expected_payments",
      [](const Allocation& a, const std::vector<Participant>& users, double q) {
        const auto p = expected_payments(a, users, q);
        return py::make_tuple(p.net, p.gross);
      },
      py::arg("allocation"), py::arg("users"), py::arg("q"), "Returns (net, gross).");
  m.def(
      "audit_incentives",
      [](const std::vector<Participant>& users, double target, double q, std::size_t n_misreports,
         std::uint64_t seed) {
        const auto r = audit_incentives(users, target, q, n_misreports, seed);
        py::dict d;
        d["ir_checked"] = r.ir_checked;
        d["ic_trials"] = r.ic_trials;
        d["ic_skipped"] = r.ic_skipped;
        d["ir_violations"] = r.ir_violations();
        d["ic_violations"] = r.ic_violations();
        d["passed"] = r.passed();
        return d;
      },
      py::arg("users"), py::arg("target"), py::arg("q"), py::arg("n_misreports"),
      py::arg("seed"));

  m.def(
      "sample_base_consumption",
      [](const ConsumptionParams& p, std::size_t n, std::uint64_t seed) {
        Rng rng = make_stream(seed, {});
        return sample_base_consumption(p, n, rng);
      },
      py::arg("params"), py::arg("n"), py::arg("seed"));
  m.def(
      "fit_lognormal3", [](const std::vector<double>& xs) { return fit_lognormal3(xs); },
      py::arg("samples"));
  m.def(
      "synthetic_baseline",
      [](const ConsumptionParams& p, std::size_t k, std::uint64_t seed) {
        Rng rng = make_stream(seed, {});
        return synthetic_baseline(p, k, rng).value;
      },
      py::arg("params"), py::arg("k"), py::arg("seed"));

  m.def(
      "run_scenario",
      [](const std::string& mode, std::size_t n, double q, const std::vector<double>& m_grid,
         const std::vector<std::size_t>& k_set, std::size_t mc_reps, std::uint64_t seed) {
        ScenarioConfig cfg;
        cfg.n = n;
        cfg.q = q;
        cfg.m_grid = m_grid;
        cfg.k_set = k_set;
        cfg.mc_reps = mc_reps;
        cfg.seed = seed;
        const auto result = run_scenario(cfg, parse_mode(mode));
        std::ostringstream os;
        write_results_csv(os, result);
        return py::make_tuple(os.str(), result.warnings);
      },
      py::arg("mode") = "compare", py::arg("n") = 500, py::arg("q") = 5.0,
      py::arg("m_grid") = linspace_grid(0.0, 200.0, 21),
      py::arg("k_set") = std::vector<std::size_t>{5, 10, 20, 40}, py::arg("mc_reps") = 200,
      py::arg("seed") = 42, "Returns (csv_text, warnings).");
}
