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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "probsynth/approx_solver.hpp"
#include "probsynth/linalg.hpp"
#include "probsynth/states.hpp"

namespace probsynth {

/// max(0, q - 1/2).
double werner_distance(int d, double q);
/// max(0, (d^2 - 1)/d^2 (q - 1/(d+1))).
double isotropic_distance(int d, double q);

/// tr(M rho) - max over product states of tr(M phi (x) psi) for the
/// invariant witness M = a Pi_sym + b Pi_anti.
double werner_witness_objective(int d, double q, double a, double b);
/// Same for M = a 1 + (b - a) Phi+ against the isotropic state.
double isotropic_witness_objective(int d, double q, double a, double b);

struct WitnessScan {
  double value;
  double a;
  double b;
};

/// Max of the objective over a grid_n x grid_n grid of (a, b) in [0, 1]^2,
/// plus the candidates (0, 1) and a = b.
WitnessScan werner_witness_scan(int d, double q, int grid_n);
WitnessScan isotropic_witness_scan(int d, double q, int grid_n);

/// Throws PreconditionViolation unless a state on C^d (x) C^d has Schmidt
/// rank one (second singular value <= 1e-8).
void require_product(const PureState& state, int d);

/// Solves the convex approximation of rho over the listed product states;
/// an upper bound on the distance to the separable set.
ConvexApproxSolution separable_upper(const DensityMatrix& rho,
                                     const std::vector<PureState>& product_covering,
                                     double solver_tol);

struct DistanceBracket {
  double lower;
  double upper;
  std::string lower_witness;
  std::vector<std::pair<double, std::string>> upper_mixture;
};

class SchmidtVector {
 public:
  /// Throws PreconditionViolation unless d >= 2 and the norm is 1 within 1e-12.
  explicit SchmidtVector(CVector alpha);
  static SchmidtVector normalized(const CVector& alpha);

  int d() const { return static_cast<int>(alpha_.size()); }
  const CVector& alpha() const { return alpha_; }

 private:
  CVector alpha_;
};

/// min over incoherent rho of T(phi - rho), phi = sum_i alpha_i |i>.
ConvexApproxSolution coherence_distance(const SchmidtVector& alpha,
                                        double solver_tol);

struct SimplexResult {
  double value;
  RVector p;
  /// max - min of the projected-gradient restart optima.
  double restart_spread;
};

/// max_p (sum_i sqrt(p_i) |alpha_i|)^2 - max_i p_i over the simplex. Takes
/// the best of projected-gradient ascent (uniform start plus `restarts`
/// random starts), a simplex grid for d <= 3, and a one-dimensional search
/// over m = max_i p_i with water-filled p_i = min(m, lambda |alpha_i|^2).
SimplexResult simplex_formula(const SchmidtVector& alpha, int restarts = 20,
                              std::uint64_t seed = 0);

double simplex_objective(const SchmidtVector& alpha, const RVector& p);

}  // namespace probsynth
