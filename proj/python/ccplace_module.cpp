// Copyright 2026 The ccplace Authors
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

#include "ccplace/basecases.hpp"
#include "ccplace/cli.hpp"
#include "ccplace/delivery.hpp"
#include "ccplace/demand_model.hpp"
#include "ccplace/errors.hpp"
#include "ccplace/optimizer.hpp"
#include "ccplace/oracle.hpp"
#include "ccplace/placement.hpp"

namespace py = pybind11;
using namespace ccplace;

namespace {

std::vector<std::vector<double>> rows_of(const PlacementMatrix& y) {
  std::vector<std::vector<double>> rows;
  for (int f = 0; f < y.n(); ++f) rows.emplace_back(y.row(f).begin(), y.row(f).end());
  return rows;
}

PlacementMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().size() < 2) throw std::invalid_argument("need N rows of K+1 entries");
  const int k = static_cast<int>(rows.front().size()) - 1;
  std::vector<double> entries;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw std::invalid_argument("ragged placement rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return PlacementMatrix(k, static_cast<int>(rows.size()), std::move(entries));
}

}  // namespace

PYBIND11_MODULE(_ccplace, m) {
  m.doc() = "Optimal uncoded placement for coded caching with nonuniform demands.";

  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<PopularityDistribution>(m, "PopularityDistribution")
      .def_static("zipf", &PopularityDistribution::zipf, py::arg("n"), py::arg("alpha"))
      .def_static("from_probs", &PopularityDistribution::from_probs, py::arg("probs"))
      .def_property_readonly("probs", [](const PopularityDistribution& d) {
        return std::vector<double>(d.probs().begin(), d.probs().end());
      })
      .def_property_readonly("original_index", [](const PopularityDistribution& d) {
        return std::vector<std::size_t>(d.original_index().begin(), d.original_index().end());
      })
      .def("__len__", &PopularityDistribution::size);

  m.def("subset_mass", [](const PopularityDistribution& d, std::vector<int> files) {
    return subset_mass(d, FileGroup(std::move(files)));
  }, py::arg("dist"), py::arg("files"));
  m.def("group_probability", [](const PopularityDistribution& d, int s, std::vector<int> files) {
    return group_probability(d, s, FileGroup(std::move(files)));
  }, py::arg("dist"), py::arg("s"), py::arg("files"));

  py::class_<PlacementMatrix>(m, "PlacementMatrix")
      .def(py::init(&matrix_from_rows), py::arg("rows"))
      .def_property_readonly("k", &PlacementMatrix::k)
      .def_property_readonly("n", &PlacementMatrix::n)
      .def("rows", &rows_of);

  py::class_<CanonicalPlacement>(m, "CanonicalPlacement")
      .def(py::init([](int level, int uncached) { return CanonicalPlacement{level, uncached}; }),
           py::arg("level"), py::arg("uncached"))
      .def_readwrite("level", &CanonicalPlacement::level)
      .def_readwrite("uncached", &CanonicalPlacement::uncached)
      .def_property_readonly("s_star", [](const CanonicalPlacement& c) { return c.level; })
      .def_property_readonly("n_star", [](const CanonicalPlacement& c) { return c.uncached + 1; });

  m.def("canonical_to_matrix", &canonical_to_matrix, py::arg("c"), py::arg("k"), py::arg("n"));
  m.def("storage", &storage, py::arg("y"));
  m.def("level_storage", &level_storage, py::arg("y"));
  m.def("blend", &blend, py::arg("theta"), py::arg("a"), py::arg("b"));
  m.def("expected_rate_exact", &expected_rate_exact, py::arg("y"), py::arg("dist"));
  m.def("expected_rate_closed", &expected_rate_closed, py::arg("c1"), py::arg("c2"),
        py::arg("theta"), py::arg("dist"), py::arg("k"));

  py::class_<BaseCase>(m, "BaseCase")
      .def_readonly("placement", &BaseCase::placement)
      .def_readonly("m", &BaseCase::m)
      .def_readonly("r", &BaseCase::r);
  py::class_<BaseCaseSet>(m, "BaseCaseSet")
      .def_readonly("k", &BaseCaseSet::k)
      .def_readonly("n", &BaseCaseSet::n)
      .def_readonly("cases", &BaseCaseSet::cases)
      .def("matrix", &BaseCaseSet::matrix);
  py::class_<StaircaseSegment>(m, "StaircaseSegment")
      .def_readonly("m_lo", &StaircaseSegment::m_lo)
      .def_readonly("m_hi", &StaircaseSegment::m_hi)
      .def_readonly("gamma", &StaircaseSegment::gamma);
  py::class_<StaircaseBreakpoint>(m, "StaircaseBreakpoint")
      .def_readonly("m", &StaircaseBreakpoint::m)
      .def_readonly("gamma_lo", &StaircaseBreakpoint::gamma_lo)
      .def_readonly("gamma_hi", &StaircaseBreakpoint::gamma_hi);
  py::class_<PriceStaircase>(m, "PriceStaircase")
      .def_readonly("segments", &PriceStaircase::segments)
      .def_readonly("breakpoints", &PriceStaircase::breakpoints);

  m.def("enumerate_candidates", &enumerate_candidates, py::arg("k"), py::arg("dist"));
  m.def("build_base_set", [](const std::vector<BaseCase>& c, int k, int n) {
    return build_base_set(c, k, n);
  }, py::arg("candidates"), py::arg("k"), py::arg("n"));
  m.def("price_staircase", &price_staircase, py::arg("base"));

  py::class_<RmscSolution>(m, "RmscSolution")
      .def_readonly("y", &RmscSolution::y)
      .def_readonly("rate", &RmscSolution::rate)
      .def_readonly("m_used", &RmscSolution::m_used)
      .def_readonly("theta", &RmscSolution::theta)
      .def_readonly("lower", &RmscSolution::lower)
      .def_readonly("upper", &RmscSolution::upper);
  py::class_<JrsmSolution>(m, "JrsmSolution")
      .def_readonly("y", &JrsmSolution::y)
      .def_readonly("objective", &JrsmSolution::objective)
      .def_readonly("gamma", &JrsmSolution::gamma)
      .def_readonly("chosen", &JrsmSolution::chosen);
  m.def("solve_rmsc", &solve_rmsc, py::arg("budget"), py::arg("base"));
  m.def("solve_jrsm", &solve_jrsm, py::arg("gamma"), py::arg("base"));
  m.def("optimal_rate_curve", [](const BaseCaseSet& b, const std::vector<double>& grid) {
    return optimal_rate_curve(b, grid);
  }, py::arg("base"), py::arg("budgets"));

  py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
      .def_readonly("estimate", &MonteCarloEstimate::estimate)
      .def_readonly("standard_error", &MonteCarloEstimate::standard_error)
      .def_readonly("standard_error_defined", &MonteCarloEstimate::standard_error_defined)
      .def_readonly("trials", &MonteCarloEstimate::trials);
  m.def("exhaustive_expected_rate", &exhaustive_expected_rate, py::arg("y"), py::arg("dist"));
  m.def("monte_carlo_rate", &monte_carlo_rate, py::arg("y"), py::arg("dist"), py::arg("trials"),
        py::arg("seed") = 0, py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("delivery_rate", [](const std::vector<int>& demand, const PlacementMatrix& y) {
    const DeliveryTrace t = scc_deliver(DemandVector(demand, y.n()), expand_subfiles(y));
    return py::make_tuple(t.total_rate, verify_decodability(t));
  }, py::arg("demand"), py::arg("y"));

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("rate", &OracleResult::rate)
      .def_readonly("y", &OracleResult::y)
      .def_readonly("lower_bound", &OracleResult::lower_bound)
      .def_readonly("gap_certificate", &OracleResult::gap_certificate)
      .def_readonly("iterations", &OracleResult::iterations);
  m.def("numeric_rmsc", &numeric_rmsc, py::arg("budget"), py::arg("dist"), py::arg("k"),
        py::arg("tol") = 1e-6, py::arg("max_iterations") = 200000,
        py::call_guard<py::gil_scoped_release>());

  m.def("cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"ccplace"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = cli::run(full, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
