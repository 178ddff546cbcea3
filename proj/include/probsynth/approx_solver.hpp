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

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "probsynth/linalg.hpp"
#include "probsynth/states.hpp"
#include "probsynth/symmetry.hpp"

namespace probsynth {

/// min_p T(target - sum_x p_x candidates[x]) over the probability simplex.
struct ConvexApproxProblem {
  DensityMatrix target;
  std::vector<DensityMatrix> candidates;
  std::optional<SymmetryGroup> symmetry;

  /// Throws PreconditionViolation (or DimensionMismatch) if dims disagree,
  /// the candidate list is empty, or a supplied group does not leave the
  /// target invariant and the candidate set closed (tolerance 1e-8).
  void validate() const;
  int dim() const { return target.dim(); }
};

struct ConvexApproxSolution {
  double value = 0.0;  // == dual_value
  RVector p;
  CMatrix witness;
  /// Witness objective of `witness` (the max problem): a certified lower bound.
  double primal_value = 0.0;
  /// Mixture distance of `p` (the min problem): a certified upper bound.
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

enum class SolverMethod {
  kInteriorPoint,
  kSubgradient,
};

/// A certified pair observed at one iteration: lower is a witness objective,
/// upper a mixture distance.
struct IterateBounds {
  int iteration;
  double lower;
  double upper;
};

struct SolverOptions {
  SolverMethod method = SolverMethod::kInteriorPoint;
  /// 0 selects the method default (100 for the interior point, 2e5 for the
  /// subgradient scheme).
  int max_iterations = 0;
  std::function<void(const IterateBounds&)> observer;
};

/// Throws PreconditionViolation for invalid problems or tol < 1e-9, and
/// SolverNonConvergence (carrying the best certified interval) if the gap
/// cannot be brought below tol.
ConvexApproxSolution solve(const ConvexApproxProblem& problem, double tol,
                           const SolverOptions& options = {});

/// tr(M rho) - max_x tr(M rho_x). Throws PreconditionViolation unless the
/// spectrum of M lies in [-1e-10, 1 + 1e-10].
double witness_objective(const CMatrix& m, const DensityMatrix& target,
                         std::span<const DensityMatrix> candidates);

/// T(target - sum_x p_x candidates[x]). p must be a probability vector.
double mixture_distance(const RVector& p, const DensityMatrix& target,
                        std::span<const DensityMatrix> candidates);

/// (1/|G|) sum_g g(M).
CMatrix symmetrize_witness(const CMatrix& m, const SymmetryGroup& group);

/// Clip the spectrum of a Hermitian matrix to [0, 1].
CMatrix clip_witness(const CMatrix& m);

struct RestrictedProblem {
  ConvexApproxProblem problem;
  std::vector<std::size_t> indices;  // into the original candidate list
};

/// Keeps candidates within trace distance 2 eps of a pure target. Throws
/// PreconditionViolation if the target is mixed or nothing survives.
RestrictedProblem restrict_support(const ConvexApproxProblem& problem,
                                   double eps);

struct SandwichReport {
  double eps_phi = 0.0;  // min_x T(phi, phi_x)
  double value = 0.0;
  double eps_g = 0.0;  // sampled max over the domain of the min distance
  bool lower_holds = false;
  bool upper_holds = false;
};

SandwichReport sandwich_check(const PureState& phi,
                              std::span<const PureState> candidates,
                              std::span<const PureState> domain_samples,
                              double tol = 1e-9, double slack = 1e-6);

/// Wolfe's minimum-norm-point algorithm: the point of conv(columns of
/// `points`) nearest to `query`.
struct NearestHullPoint {
  double distance;
  RVector weights;
};
NearestHullPoint min_norm_point(const Eigen::MatrixXd& points,
                                const RVector& query);

/// For qubits only: half the Euclidean distance from the target's Bloch
/// vector to the hull of the candidates' Bloch vectors.
double bloch_hull_distance(const DensityMatrix& target,
                           std::span<const DensityMatrix> candidates);

namespace detail {

struct RawIterate {
  RVector p;
  CMatrix m;
};

/// Turns raw iterates into a certified (lower, upper) pair.
struct Certificate {
  RVector p;
  CMatrix witness;
  double lower;
  double upper;
};
Certificate certify(const ConvexApproxProblem& problem, const RawIterate& raw);

ConvexApproxSolution solve_interior_point(const ConvexApproxProblem& problem,
                                          double tol,
                                          const SolverOptions& options);
ConvexApproxSolution solve_subgradient(const ConvexApproxProblem& problem,
                                       double tol,
                                       const SolverOptions& options);

}  // namespace detail

}  // namespace probsynth
