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

#include "probsynth/approx_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "probsynth/errors.hpp"

namespace probsynth {

namespace {

constexpr double kSymmetryTol = 1e-8;
constexpr double kWitnessTol = 1e-10;

double objective_unchecked(const CMatrix& m, const DensityMatrix& target,
                           std::span<const DensityMatrix> candidates) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best = std::max(best, trace_product(m, c.matrix()));
  return trace_product(m, target.matrix()) - best;
}

CMatrix mixture(const RVector& p, std::span<const DensityMatrix> candidates) {
  CMatrix sum = CMatrix::Zero(candidates.front().dim(), candidates.front().dim());
  for (std::size_t x = 0; x < candidates.size(); ++x) {
    if (p[static_cast<Eigen::Index>(x)] != 0.0) {
      sum += p[static_cast<Eigen::Index>(x)] * candidates[x].matrix();
    }
  }
  return sum;
}

}  // namespace

void ConvexApproxProblem::validate() const {
  if (candidates.empty()) {
    throw PreconditionViolation("candidate set must be nonempty");
  }
  for (const auto& c : candidates) {
    if (c.dim() != dim()) throw DimensionMismatch(c.dim(), dim());
  }
  if (symmetry) {
    if (symmetry->dim() != dim()) throw DimensionMismatch(symmetry->dim(), dim());
    if (!is_invariant(target, *symmetry, kSymmetryTol)) {
      throw PreconditionViolation("target is not invariant under the group");
    }
    if (!is_closed_under(candidates, *symmetry, kSymmetryTol)) {
      throw PreconditionViolation("candidate set is not closed under the group");
    }
  }
}

double witness_objective(const CMatrix& m, const DensityMatrix& target,
                         std::span<const DensityMatrix> candidates) {
  if (m.rows() != target.dim() || m.cols() != target.dim()) {
    throw DimensionMismatch(static_cast<int>(m.rows()), target.dim());
  }
  if (candidates.empty()) {
    throw PreconditionViolation("candidate set must be nonempty");
  }
  if (hermiticity_error(m) > 1e-10) {
    throw PreconditionViolation("witness must be Hermitian");
  }
  const RVector ev = hermitian_eigen(m).values;
  if (ev.minCoeff() < -kWitnessTol || ev.maxCoeff() > 1.0 + kWitnessTol) {
    throw PreconditionViolation("witness spectrum outside [0, 1]");
  }
  return objective_unchecked(hermitian_part(m), target, candidates);
}

double mixture_distance(const RVector& p, const DensityMatrix& target,
                        std::span<const DensityMatrix> candidates) {
  if (static_cast<std::size_t>(p.size()) != candidates.size()) {
    throw DimensionMismatch(static_cast<int>(p.size()),
                            static_cast<int>(candidates.size()));
  }
  if (p.minCoeff() < -1e-12 || std::abs(p.sum() - 1.0) > 1e-10) {
    throw PreconditionViolation("p is not a probability vector");
  }
  return half_trace_norm(target.matrix() - mixture(p, candidates));
}

CMatrix symmetrize_witness(const CMatrix& m, const SymmetryGroup& group) {
  if (m.rows() != group.dim()) {
    throw DimensionMismatch(static_cast<int>(m.rows()), group.dim());
  }
  CMatrix sum = CMatrix::Zero(m.rows(), m.cols());
  for (const auto& g : group.elements()) sum += g.act(m);
  return hermitian_part(sum / static_cast<double>(group.size()));
}

CMatrix clip_witness(const CMatrix& m) {
  return spectral_apply(hermitian_eigen(m),
                        [](double x) { return std::clamp(x, 0.0, 1.0); });
}

namespace detail {

Certificate certify(const ConvexApproxProblem& problem, const RawIterate& raw) {
  const auto n = static_cast<Eigen::Index>(problem.candidates.size());
  RVector p = raw.p.cwiseMax(0.0);
  const double total = p.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    p = RVector::Constant(n, 1.0 / static_cast<double>(n));
  } else {
    p /= total;
  }
  const HermitianEigen eig =
      hermitian_eigen(problem.target.matrix() - mixture(p, problem.candidates));
  const double upper = 0.5 * eig.values.cwiseAbs().sum();

  CMatrix best = positive_projector(eig);
  double lower = objective_unchecked(best, problem.target, problem.candidates);
  if (raw.m.size() > 0 && raw.m.allFinite()) {
    CMatrix clipped = clip_witness(raw.m);
    const double value =
        objective_unchecked(clipped, problem.target, problem.candidates);
    if (value > lower) {
      lower = value;
      best = std::move(clipped);
    }
  }
  // M = 0 is always feasible.
  if (lower < 0.0) {
    lower = 0.0;
    best = CMatrix::Zero(problem.dim(), problem.dim());
  }
  return {std::move(p), std::move(best), lower, upper};
}

}  // namespace detail

ConvexApproxSolution solve(const ConvexApproxProblem& problem, double tol,
                           const SolverOptions& options) {
  problem.validate();
  if (!(tol >= 1e-9)) throw PreconditionViolation("tol must be >= 1e-9");
  ConvexApproxSolution sol =
      options.method == SolverMethod::kInteriorPoint
          ? detail::solve_interior_point(problem, tol, options)
          : detail::solve_subgradient(problem, tol, options);
  if (problem.symmetry) {
    sol.witness = symmetrize_witness(sol.witness, *problem.symmetry);
    sol.primal_value =
        objective_unchecked(sol.witness, problem.target, problem.candidates);
    sol.gap = std::max(0.0, sol.dual_value - sol.primal_value);
  }
  return sol;
}

RestrictedProblem restrict_support(const ConvexApproxProblem& problem,
                                   double eps) {
  if (std::abs(problem.target.purity() - 1.0) > 1e-9) {
    throw PreconditionViolation("restrict_support needs a pure target");
  }
  if (!(eps > 0.0)) throw PreconditionViolation("eps must be positive");
  RestrictedProblem out{{problem.target, {}, std::nullopt}, {}};
  for (std::size_t x = 0; x < problem.candidates.size(); ++x) {
    if (trace_distance(problem.target, problem.candidates[x]) <=
        2.0 * eps + 1e-12) {
      out.problem.candidates.push_back(problem.candidates[x]);
      out.indices.push_back(x);
    }
  }
  if (out.indices.empty()) {
    throw PreconditionViolation(
        "no candidate within 2 eps of the target; covering assertion is false");
  }
  return out;
}

SandwichReport sandwich_check(const PureState& phi,
                              std::span<const PureState> candidates,
                              std::span<const PureState> domain_samples,
                              double tol, double slack) {
  if (candidates.empty()) {
    throw PreconditionViolation("candidate set must be nonempty");
  }
  auto nearest = [&](const PureState& psi) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) best = std::min(best, trace_distance(psi, c));
    return best;
  };
  SandwichReport report;
  report.eps_phi = nearest(phi);
  report.eps_g = report.eps_phi;
  for (const auto& s : domain_samples) report.eps_g = std::max(report.eps_g, nearest(s));

  ConvexApproxProblem problem{phi, {}, std::nullopt};
  for (const auto& c : candidates) problem.candidates.emplace_back(c);
  const ConvexApproxSolution sol = solve(problem, tol);
  report.value = sol.value;
  report.lower_holds =
      report.eps_phi * report.eps_phi <= sol.value + sol.gap + tol;
  report.upper_holds = sol.primal_value <= report.eps_g * report.eps_g + slack;
  return report;
}

double bloch_hull_distance(const DensityMatrix& target,
                           std::span<const DensityMatrix> candidates) {
  if (target.dim() != 2) throw DimensionMismatch(target.dim(), 2);
  if (candidates.empty()) {
    throw PreconditionViolation("candidate set must be nonempty");
  }
  Eigen::MatrixXd pts(3, static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t x = 0; x < candidates.size(); ++x) {
    if (candidates[x].dim() != 2) throw DimensionMismatch(candidates[x].dim(), 2);
    pts.col(static_cast<Eigen::Index>(x)) = bloch_vector(candidates[x]);
  }
  const Eigen::Vector3d v = bloch_vector(target);
  return 0.5 * min_norm_point(pts, RVector(v)).distance;
}

}  // namespace probsynth
