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

// Projected subgradient descent on the mixture side with Polyak steps. The
// positive-eigenspace projector of the residual supplies both the
// subgradient and a witness, so every iterate carries a certified interval.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "probsynth/approx_solver.hpp"
#include "probsynth/errors.hpp"

namespace probsynth::detail {

namespace {

constexpr int kDefaultIterations = 200000;
constexpr int kStallWindow = 2000;

// Euclidean projection onto the probability simplex.
RVector project_simplex(const RVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double candidate = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0);
}

}  // namespace

ConvexApproxSolution solve_subgradient(const ConvexApproxProblem& problem,
                                       double tol,
                                       const SolverOptions& options) {
  const int budget =
      options.max_iterations > 0 ? options.max_iterations : kDefaultIterations;
  const auto n = static_cast<Eigen::Index>(problem.candidates.size());
  const int d = problem.dim();
  const RVector uniform = RVector::Constant(n, 1.0 / static_cast<double>(n));

  RVector p = uniform;
  RVector best_p = p;
  CMatrix best_m = CMatrix::Zero(d, d);
  double lower = 0.0;  // M = 0
  double upper = std::numeric_limits<double>::infinity();
  int last_improvement = 0;
  int iter = 0;

  for (iter = 0; iter < budget; ++iter) {
    CMatrix residual = problem.target.matrix();
    for (Eigen::Index x = 0; x < n; ++x) {
      if (p[x] != 0.0) {
        residual -= p[x] * problem.candidates[static_cast<std::size_t>(x)].matrix();
      }
    }
    const HermitianEigen eig = hermitian_eigen(residual);
    const double f = 0.5 * eig.values.cwiseAbs().sum();
    const CMatrix proj = positive_projector(eig);
    RVector c(n);
    for (Eigen::Index x = 0; x < n; ++x) {
      c[x] = trace_product(proj, problem.candidates[static_cast<std::size_t>(x)].matrix());
    }
    const double witness_value =
        trace_product(proj, problem.target.matrix()) - c.maxCoeff();
    if (witness_value > lower) {
      lower = witness_value;
      best_m = proj;
    }
    if (f < upper - 1e-15) {
      if (f < upper - 1e-12 * std::max(1.0, upper)) last_improvement = iter;
      upper = f;
      best_p = p;
    }
    if (options.observer) options.observer({iter, lower, upper});
    if (upper - lower <= tol) break;

    RVector g = -c;
    g.array() -= g.mean();
    const double g2 = g.squaredNorm();
    if (g2 < 1e-300) break;
    if (iter - last_improvement > kStallWindow) {
      p = 0.5 * uniform + 0.5 * best_p;
      last_improvement = iter;
      continue;
    }
    const double step = 0.5 * (f - lower) / g2;
    p = project_simplex(p - step * g);
  }

  ConvexApproxSolution sol;
  sol.p = best_p;
  sol.witness = best_m;
  sol.primal_value = lower;
  sol.dual_value = upper;
  sol.value = upper;
  sol.gap = std::max(0.0, upper - lower);
  sol.iterations = iter;
  if (sol.gap > tol) {
    throw SolverNonConvergence("subgradient did not certify gap " +
                                   std::to_string(sol.gap) + " <= " +
                                   std::to_string(tol),
                               lower, upper);
  }
  return sol;
}

}  // namespace probsynth::detail
