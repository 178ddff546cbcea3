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

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace probsynth {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted in
/// ascending order; column k of `vectors` belongs to `values[k]`.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. Sweeps until the
/// off-diagonal Frobenius norm drops below `off_tol` times max(1, ||A||_F).
/// Only the Hermitian part of `a` is used.
HermitianEigen hermitian_eigen(const CMatrix& a, double off_tol = 1e-13);

/// Largest deviation from A = A^dagger, entrywise.
double hermiticity_error(const CMatrix& a);

CMatrix hermitian_part(const CMatrix& a);

/// Re tr(a b); for Hermitian arguments this is the full trace.
double trace_product(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// V f(Lambda) V^dagger.
CMatrix spectral_apply(const HermitianEigen& eig,
                       const std::function<double(double)>& f);

/// Sum of |lambda| / 2, i.e. half the trace norm of a Hermitian matrix.
double half_trace_norm(const CMatrix& hermitian);

/// Projector onto the span of eigenvectors with eigenvalue > threshold. A
/// degenerate positive eigenspace is included in full.
CMatrix positive_projector(const HermitianEigen& eig, double threshold = 0.0);

CMatrix identity(int dim);

}  // namespace probsynth
