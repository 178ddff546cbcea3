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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "probsynth/approx_solver.hpp"
#include "probsynth/covering.hpp"
#include "probsynth/errors.hpp"
#include "probsynth/random.hpp"
#include "probsynth/symmetry.hpp"

using namespace probsynth;
using Eigen::Vector3d;

namespace {

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection).
Vector3d closest_on_triangle(const Vector3d& p, const Vector3d& a, const Vector3d& b,
                             const Vector3d& c) {
  const Vector3d ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Vector3d bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + d1 / (d1 - d3) * ab;
  const Vector3d cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + d2 / (d2 - d6) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    return b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

// Qubit oracle for a pure target: the nearest hull point lies on a triangle
// spanned by three candidates.
double triangle_oracle(const PureState& phi, const std::vector<PureState>& cands) {
  const Vector3d p = bloch_vector(phi);
  std::vector<Vector3d> v;
  for (const auto& c : cands) v.push_back(bloch_vector(c));
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        best = std::min(best, (closest_on_triangle(p, v[i], v[j], v[k]) - p).norm());
      }
    }
  }
  return 0.5 * best;
}

std::vector<DensityMatrix> as_density(const std::vector<PureState>& s) {
  return {s.begin(), s.end()};
}

ConvexApproxProblem random_problem(int d, int n, Rng& rng, bool pure_target) {
  ConvexApproxProblem problem{
      pure_target ? DensityMatrix(haar_state(d, rng)) : random_density(d, d, rng), {},
      std::nullopt};
  for (int i = 0; i < n; ++i) problem.candidates.emplace_back(haar_state(d, rng));
  return problem;
}

}  // namespace

TEST(Solve, OctahedronFaceCenter) {
  const double r = 1.0 / std::sqrt(3.0);
  const auto sol = solve({DensityMatrix(pure_from_bloch({r, r, r})),
                          as_density(pauli_eigenstates()), std::nullopt},
                         1e-9);
  EXPECT_NEAR(sol.value, (std::sqrt(3.0) - 1.0) / (2.0 * std::sqrt(3.0)), 1e-9);
  EXPECT_LE(sol.gap, 1e-9);
  // By symmetry the three nearest eigenstates share the weight.
  EXPECT_NEAR(sol.p[0] + sol.p[2] + sol.p[4], 1.0, 1e-6);
  EXPECT_NEAR(sol.p[0], 1.0 / 3.0, 1e-5);
}

TEST(Solve, QubitValuesMatchTriangleOracle) {
  Rng rng(10);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 3 + rep % 10;
    const auto phi = haar_state(2, rng);
    std::vector<PureState> cands;
    for (int i = 0; i < n; ++i) cands.push_back(haar_state(2, rng));
    const auto sol = solve({DensityMatrix(phi), as_density(cands), std::nullopt}, 1e-9);
    const double oracle = triangle_oracle(phi, cands);
    EXPECT_NEAR(sol.value, oracle, 2e-9) << "rep " << rep;
    EXPECT_NEAR(bloch_hull_distance(DensityMatrix(phi), as_density(cands)), oracle, 1e-10);
  }
}

TEST(Solve, CertificatesAreConsistent) {
  Rng rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const int d = rep % 2 == 0 ? 2 : 4;
    const auto problem = random_problem(d, 4 + rep, rng, rep % 3 == 0);
    const auto sol = solve(problem, 1e-8);
    EXPECT_LE(sol.gap, 1e-8);
    EXPECT_NEAR(sol.p.sum(), 1.0, 1e-12);
    EXPECT_GE(sol.p.minCoeff(), 0.0);
    // Recompute both certificates independently of the solver's bookkeeping.
    const double upper = mixture_distance(sol.p, problem.target, problem.candidates);
    const double lower = witness_objective(sol.witness, problem.target, problem.candidates);
    EXPECT_NEAR(upper, sol.dual_value, 1e-12);
    EXPECT_NEAR(lower, sol.primal_value, 1e-12);
    EXPECT_LE(lower, upper + 1e-12);
    EXPECT_NEAR(sol.value, sol.dual_value, 1e-15);
  }
}

TEST(Solve, WeakDualityAtEveryIterate) {
  Rng rng(12);
  for (auto method : {SolverMethod::kInteriorPoint, SolverMethod::kSubgradient}) {
    const auto problem = random_problem(2, 10, rng, true);
    double best_lower = -1.0;
    double best_upper = 2.0;
    int calls = 0;
    SolverOptions opts;
    opts.method = method;
    opts.observer = [&](const IterateBounds& b) {
      ++calls;
      EXPECT_LE(b.lower, b.upper + 1e-12);
      best_lower = std::max(best_lower, b.lower);
      best_upper = std::min(best_upper, b.upper);
    };
    const double tol = method == SolverMethod::kInteriorPoint ? 1e-7 : 1e-3;
    const auto sol = solve(problem, tol, opts);
    EXPECT_GT(calls, 0);
    EXPECT_LE(best_lower, best_upper + 1e-12);
    EXPECT_LE(sol.gap, tol);
  }
}

TEST(Solve, SubgradientIntervalContainsInteriorPointValue) {
  Rng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const auto problem = random_problem(2, 6 + rep, rng, rep % 2 == 0);
    const double exact = solve(problem, 1e-9).value;
    SolverOptions sg;
    sg.method = SolverMethod::kSubgradient;
    sg.max_iterations = 20000;
    double lower = 0.0;
    double upper = 0.0;
    try {
      const auto sol = solve(problem, 1e-9, sg);
      lower = sol.primal_value;
      upper = sol.dual_value;
    } catch (const SolverNonConvergence& e) {
      lower = e.lower();
      upper = e.upper();
    }
    EXPECT_LE(lower, exact + 1e-9);
    EXPECT_GE(upper, exact - 1e-9);
    EXPECT_LT(upper - lower, 1e-2);
  }
}

TEST(Solve, SymmetricProblemHasInvariantWitness) {
  const auto cover = meridian_covering(0.3);
  const auto group = SymmetryGroup::conjugation_group(2);
  ConvexApproxProblem problem{DensityMatrix(meridian_state(0.4)), as_density(cover.points),
                              group};
  const auto sym = solve(problem, 1e-9);
  problem.symmetry.reset();
  const auto plain = solve(problem, 1e-9);
  EXPECT_NEAR(sym.value, plain.value, 2e-9);
  EXPECT_LT((sym.witness - sym.witness.conjugate()).norm(), 1e-12);
}

TEST(Solve, Preconditions) {
  ConvexApproxProblem empty{DensityMatrix::maximally_mixed(2), {}, std::nullopt};
  EXPECT_THROW(solve(empty, 1e-7), PreconditionViolation);
  ConvexApproxProblem mismatch{DensityMatrix::maximally_mixed(2),
                               {DensityMatrix(PureState::basis(3, 0))}, std::nullopt};
  EXPECT_THROW(solve(mismatch, 1e-7), DimensionMismatch);
  ConvexApproxProblem ok{DensityMatrix::maximally_mixed(2), as_density(pauli_eigenstates()),
                         std::nullopt};
  EXPECT_THROW(solve(ok, 1e-10), PreconditionViolation);
  CVector v(2);
  v << 1.0, Complex(0.0, 1.0);
  ConvexApproxProblem not_invariant{DensityMatrix(PureState::from_amplitudes(v)),
                                    as_density(pauli_eigenstates()),
                                    SymmetryGroup::conjugation_group(2)};
  EXPECT_THROW(solve(not_invariant, 1e-7), PreconditionViolation);
}

TEST(Solve, TargetInCandidatesGivesZero) {
  const auto pauli = pauli_eigenstates();
  const auto sol = solve({DensityMatrix(pauli[2]), as_density(pauli), std::nullopt}, 1e-9);
  EXPECT_NEAR(sol.value, 0.0, 1e-9);
  const auto mixed = solve({DensityMatrix::maximally_mixed(2), as_density(pauli), std::nullopt},
                           1e-9);
  EXPECT_NEAR(mixed.value, 0.0, 1e-9);
}

TEST(Witness, ObjectiveRejectsOutOfRangeSpectrum) {
  const auto cands = as_density(pauli_eigenstates());
  EXPECT_THROW(witness_objective(2.0 * identity(2), cands[0], cands), PreconditionViolation);
  EXPECT_NEAR(witness_objective(CMatrix::Zero(2, 2), cands[0], cands), 0.0, 1e-15);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -1.0;
  const auto clipped = hermitian_eigen(clip_witness(m)).values;
  EXPECT_NEAR(clipped[0], 0.0, 1e-15);
  EXPECT_NEAR(clipped[1], 1.0, 1e-15);
}

TEST(Sandwich, LowerAndUpperBounds) {
  Rng rng(14);
  std::vector<PureState> domain;
  for (int k = 0; k < 2000; ++k) domain.push_back(haar_state(2, rng));
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<PureState> cands;
    for (int i = 0; i < 12; ++i) cands.push_back(haar_state(2, rng));
    const auto phi = domain[rep];
    const auto report = sandwich_check(phi, cands, domain);
    EXPECT_TRUE(report.lower_holds);
    EXPECT_LE(report.eps_phi * report.eps_phi, report.value + 1e-9);
    EXPECT_LE(report.eps_phi, report.eps_g + 1e-15);
  }
}

TEST(SupportRestriction, KeepsValueOnCoverings) {
  Rng rng(15);
  for (double eps : {0.1, 0.2, 0.35}) {
    const auto cover = meridian_covering(eps);
    for (int rep = 0; rep < 5; ++rep) {
      ConvexApproxProblem problem{DensityMatrix(meridian_state(3.0 * rep / 5.0 + 0.1)),
                                  as_density(cover.points), std::nullopt};
      const auto full = solve(problem, 1e-9);
      const auto restricted = restrict_support(problem, eps);
      EXPECT_LT(restricted.indices.size(), cover.points.size());
      EXPECT_NEAR(solve(restricted.problem, 1e-9).value, full.value, 2e-9);
    }
  }
  ConvexApproxProblem mixed{DensityMatrix::maximally_mixed(2), as_density(pauli_eigenstates()),
                            std::nullopt};
  EXPECT_THROW(restrict_support(mixed, 0.1), PreconditionViolation);
}

TEST(MinNormPoint, ProjectsOntoSimplexCorner) {
  Eigen::MatrixXd pts(2, 3);
  pts << 1, 0, 2, 0, 1, 2;
  const auto near = min_norm_point(pts, RVector::Zero(2));
  EXPECT_NEAR(near.distance, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(near.weights[0], 0.5, 1e-12);
  EXPECT_NEAR(near.weights[1], 0.5, 1e-12);
  EXPECT_NEAR(near.weights[2], 0.0, 1e-12);
  RVector inside(2);
  inside << 0.9, 0.9;
  EXPECT_NEAR(min_norm_point(pts, inside).distance, 0.0, 1e-12);
}
