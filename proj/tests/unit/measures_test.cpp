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

#include "probsynth/covering.hpp"
#include "probsynth/errors.hpp"
#include "probsynth/measures.hpp"
#include "probsynth/random.hpp"

using namespace probsynth;

namespace {

PureState product(const PureState& a, const PureState& b) {
  return PureState::from_amplitudes(kron(a.amplitudes(), b.amplitudes()));
}

// Sampled max of tr(M phi (x) psi) over product states.
double sampled_product_max(const CMatrix& m, int d, Rng& rng, int n) {
  double best = -1e300;
  for (int k = 0; k < n; ++k) {
    const auto s = product(haar_state(d, rng), haar_state(d, rng));
    best = std::max(best, trace_product(m, s.projector()));
  }
  return best;
}

// tr(M |0>|j><0|<j|): j = 0 and j = 1 attain both product extremes.
double attained(const CMatrix& m, int d, int j) {
  return trace_product(m, product(PureState::basis(d, 0), PureState::basis(d, j)).projector());
}

double brute_simplex(const SchmidtVector& alpha, int grid) {
  double best = -1.0;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; i + j <= grid; ++j) {
      RVector p(3);
      p << static_cast<double>(i) / grid, static_cast<double>(j) / grid,
          static_cast<double>(grid - i - j) / grid;
      best = std::max(best, simplex_objective(alpha, p));
    }
  }
  return best;
}

}  // namespace

TEST(ClosedForms, Values) {
  EXPECT_DOUBLE_EQ(werner_distance(2, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(werner_distance(3, 0.4), 0.0);
  EXPECT_NEAR(isotropic_distance(2, 1.0), 0.75 * (1.0 - 1.0 / 3.0), 1e-15);
  EXPECT_DOUBLE_EQ(isotropic_distance(3, 0.25), 0.0);
  EXPECT_THROW(werner_distance(1, 0.5), PreconditionViolation);
  EXPECT_THROW(isotropic_distance(2, -0.5), PreconditionViolation);
}

TEST(Witness, ProductMaximaAreTight) {
  Rng rng(1);
  for (int d : {2, 3}) {
    const auto [sym, anti] = sym_projectors(d);
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.3, 0.8}, {0.9, 0.2}}) {
      const CMatrix m = a * sym + b * anti;
      const double claimed = 0.5 * (a + b) + std::max(0.0, 0.5 * (a - b));
      const double sampled = sampled_product_max(m, d, rng, 3000);
      EXPECT_LE(sampled, claimed + 1e-12);
      EXPECT_NEAR(std::max(attained(m, d, 0), attained(m, d, 1)), claimed, 1e-12);
      // The witness objective at q with this (a, b) is tr(M rho) - claimed.
      const double q = 0.8;
      EXPECT_NEAR(werner_witness_objective(d, q, a, b),
                  trace_product(m, werner(d, q).matrix()) - claimed, 1e-12);
    }
    const CMatrix phi = max_entangled(d).projector();
    for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 0.0}, {0.2, 0.7}}) {
      const CMatrix m = a * identity(d * d) + (b - a) * phi;
      const double claimed = a + std::max(0.0, (b - a) / d);
      const double sampled = sampled_product_max(m, d, rng, 3000);
      EXPECT_LE(sampled, claimed + 1e-12);
      EXPECT_NEAR(std::max(attained(m, d, 0), attained(m, d, 1)), claimed, 1e-12);
    }
  }
}

TEST(Witness, ScansReproduceClosedForms) {
  for (int d : {2, 3, 4}) {
    for (int k = 0; k <= 10; ++k) {
      const double q = k / 10.0;
      EXPECT_NEAR(werner_witness_scan(d, q, 51).value, werner_distance(d, q), 1e-12);
      const double dd = d;
      const double qi = -1.0 / (dd * dd - 1.0) + (1.0 + 1.0 / (dd * dd - 1.0)) * k / 10.0;
      EXPECT_NEAR(isotropic_witness_scan(d, qi, 51).value, isotropic_distance(d, qi), 1e-12);
    }
  }
  const auto w = werner_witness_scan(2, 1.0, 11);
  EXPECT_NEAR(w.value, 0.5, 1e-15);
  EXPECT_EQ(w.a, 0.0);
  EXPECT_EQ(w.b, 1.0);
  EXPECT_THROW(werner_witness_scan(2, 0.5, 1), PreconditionViolation);
}

TEST(SeparableUpper, BracketsClosedForm) {
  const double eps = 0.25;
  const auto products = product_covering(2, eps, 17).states();
  for (double q : {0.25, 0.75, 1.0}) {
    const auto sol = separable_upper(werner(2, q), products, 1e-7);
    EXPECT_GE(sol.dual_value, werner_distance(2, q) - 1e-7);
    EXPECT_LE(sol.dual_value, werner_distance(2, q) + eps);
  }
  std::vector<PureState> entangled{max_entangled(2)};
  EXPECT_THROW(separable_upper(werner(2, 0.5), entangled, 1e-7), PreconditionViolation);
  EXPECT_THROW(separable_upper(werner(2, 0.5), {}, 1e-7), PreconditionViolation);
}

TEST(Schmidt, Validation) {
  CVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(SchmidtVector{v}, PreconditionViolation);
  EXPECT_NEAR(SchmidtVector::normalized(v).alpha().norm(), 1.0, 1e-15);
  EXPECT_THROW(SchmidtVector::normalized(CVector::Zero(2)), PreconditionViolation);
  EXPECT_THROW(SchmidtVector::normalized(CVector::Ones(1)), PreconditionViolation);
}

TEST(Coherence, QubitClosedForm) {
  for (double theta : {0.1, 0.4, 0.7854, 1.2}) {
    CVector v(2);
    v << std::cos(theta), std::sin(theta);
    const auto alpha = SchmidtVector(v);
    const double expected = std::abs(std::cos(theta) * std::sin(theta));
    EXPECT_NEAR(coherence_distance(alpha, 1e-9).value, expected, 1e-8);
    EXPECT_NEAR(simplex_formula(alpha).value, expected, 1e-8);
  }
}

TEST(Coherence, SimplexMatchesSolverAndBruteForce) {
  Rng rng(2);
  for (int rep = 0; rep < 15; ++rep) {
    const auto alpha = SchmidtVector::normalized(gaussian_vector(3, rng));
    const auto simplex = simplex_formula(alpha, 10, rep);
    const auto sol = coherence_distance(alpha, 1e-9);
    EXPECT_NEAR(simplex.value, sol.value, 2e-6 + sol.gap);
    EXPECT_GE(simplex.value, brute_simplex(alpha, 300) - 1e-12);
    EXPECT_GE(simplex.restart_spread, 0.0);
    EXPECT_NEAR(simplex.p.sum(), 1.0, 1e-12);
  }
}

TEST(Coherence, PhasesDoNotMatter) {
  CVector v(3);
  v << 0.6, Complex(0.0, 0.48), Complex(-0.64, 0.0);
  const auto a = SchmidtVector::normalized(v);
  const auto b = SchmidtVector::normalized(v.cwiseAbs().cast<Complex>());
  EXPECT_NEAR(coherence_distance(a, 1e-9).value, coherence_distance(b, 1e-9).value, 1e-8);
  EXPECT_NEAR(simplex_formula(a).value, simplex_formula(b).value, 1e-12);
}
