// Copyright 2026 The probsynth Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "probsynth/approx_solver.hpp"
#include "probsynth/covering.hpp"
#include "probsynth/errors.hpp"
#include "probsynth/measures.hpp"
#include "probsynth/serialize.hpp"
#include "probsynth/synthesis.hpp"

namespace py = pybind11;
using namespace probsynth;

namespace {

std::vector<PureState> to_states(const std::vector<CVector>& vs) {
  std::vector<PureState> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(PureState::from_amplitudes(v));
  return out;
}

py::dict solution_dict(const ConvexApproxSolution& sol) {
  py::dict d;
  d["value"] = sol.value;
  d["p"] = sol.p;
  d["witness"] = sol.witness;
  d["primal_value"] = sol.primal_value;
  d["dual_value"] = sol.dual_value;
  d["gap"] = sol.gap;
  d["iterations"] = sol.iterations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "probsynth native core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base.ptr());
  py::register_exception<SolverNonConvergence>(m, "SolverNonConvergence", base.ptr());
  py::register_exception<InsufficientLibrary>(m, "InsufficientLibrary", base.ptr());

  m.def("trace_distance",
        [](const CVector& a, const CVector& b) {
          return trace_distance(PureState::from_amplitudes(a), PureState::from_amplitudes(b));
        },
        py::arg("a"), py::arg("b"));

  m.def("solve",
        [](const CMatrix& target, const std::vector<CVector>& candidates, double tol) {
          ConvexApproxProblem problem{DensityMatrix(target), {}, std::nullopt};
          for (const auto& s : to_states(candidates)) problem.candidates.emplace_back(s);
          return solution_dict(solve(problem, tol));
        },
        py::arg("target"), py::arg("candidates"), py::arg("tol") = 1e-9,
        "min over p of the trace distance from target to sum_x p_x |x><x|");

  m.def("bloch_hull_distance",
        [](const CMatrix& target, const std::vector<CVector>& candidates) {
          std::vector<DensityMatrix> rhos;
          for (const auto& s : to_states(candidates)) rhos.emplace_back(s);
          return bloch_hull_distance(DensityMatrix(target), rhos);
        },
        py::arg("target"), py::arg("candidates"));

  m.def("pauli_eigenstates", [] {
    std::vector<CVector> out;
    for (const auto& s : pauli_eigenstates()) out.push_back(s.amplitudes());
    return out;
  });
  m.def("meridian_state", [](double t) { return CVector(meridian_state(t).amplitudes()); });

  m.def("meridian_covering",
        [](double eps) { return dump(to_json(meridian_covering(eps))); }, py::arg("eps"));
  m.def("bounds_report", [](int d, double eps) { return dump(to_json(bounds_report(d, eps))); },
        py::arg("d"), py::arg("eps"));
  m.def("ball_volume", &ball_volume, py::arg("d"), py::arg("eps"));
  m.def("g4_bound", &g4_bound, py::arg("eps"), py::arg("p0"));

  m.def("werner_distance", &werner_distance, py::arg("d"), py::arg("q"));
  m.def("isotropic_distance", &isotropic_distance, py::arg("d"), py::arg("q"));
  m.def("coherence_distance",
        [](const CVector& alpha, double tol) {
          return solution_dict(coherence_distance(SchmidtVector::normalized(alpha), tol));
        },
        py::arg("alpha"), py::arg("tol") = 1e-9);
  m.def("simplex_formula",
        [](const CVector& alpha, int restarts, std::uint64_t seed) {
          const auto r = simplex_formula(SchmidtVector::normalized(alpha), restarts, seed);
          return py::make_tuple(r.value, r.p, r.restart_spread);
        },
        py::arg("alpha"), py::arg("restarts") = 20, py::arg("seed") = 0);

  py::class_<SynthesisLibrary>(m, "SynthesisLibrary")
      .def_static("enumerate", &enumerate_library, py::arg("max_t_count"),
                  py::arg("max_word_length"))
      .def_static("load_jsonl", &SynthesisLibrary::load_jsonl, py::arg("path"))
      .def("save_jsonl", &SynthesisLibrary::save_jsonl, py::arg("path"))
      .def("__len__", &SynthesisLibrary::size)
      .def_property_readonly("max_t_count", &SynthesisLibrary::max_t_count)
      .def_property_readonly("partial", &SynthesisLibrary::partial);

  m.def("probabilistic_synthesize",
        [](const SynthesisLibrary& lib, double t, double eps, double delta, bool trivial_group,
           std::uint64_t seed) {
          SynthesisConfig config;
          config.delta = delta;
          config.seed = seed;
          if (trivial_group) config.group = SymmetryFamily::kTrivial;
          return dump(to_json(probabilistic_synthesize(lib, meridian_state(t), eps, config)));
        },
        py::arg("library"), py::arg("t"), py::arg("eps"), py::arg("delta") = 1e-6,
        py::arg("trivial_group") = false, py::arg("seed") = 0);
}
