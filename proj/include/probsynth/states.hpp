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

#include <utility>
#include <vector>

#include "probsynth/linalg.hpp"

namespace probsynth {

/// Unit vector in C^d, stored with a canonical global phase: the first
/// component with modulus above 1e-12 is real and non-negative. Two states
/// are equal as rays iff their amplitudes agree componentwise.
class PureState {
 public:
  /// Normalizes and canonicalizes. Throws PreconditionViolation for an empty
  /// or (numerically) zero vector.
  static PureState from_amplitudes(const CVector& amplitudes);

  /// Computational basis state |index>.
  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }

  /// |phi><phi|
  CMatrix projector() const { return amps_ * amps_.adjoint(); }

  /// |<this|other>|^2
  double overlap(const PureState& other) const;

  /// Entrywise complex conjugate (the action of the conjugation theta).
  PureState conjugate() const;

 private:
  explicit PureState(CVector amps) : amps_(std::move(amps)) {}
  CVector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), trace (1e-12) and spectrum (>= -1e-10).
  /// Stores the exact Hermitian part of the input.
  explicit DensityMatrix(const CMatrix& entries);

  DensityMatrix(const PureState& state);  // NOLINT: pure states are states.

  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const CMatrix& matrix() const { return rho_; }

  /// Trace of rho^2; 1 exactly for pure states.
  double purity() const;

 private:
  struct Unchecked {};
  DensityMatrix(CMatrix entries, Unchecked) : rho_(std::move(entries)) {}
  CMatrix rho_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Closed form sqrt(1 - |<a|b>|^2) for pure states.
double trace_distance(const PureState& a, const PureState& b);

/// Uhlmann fidelity F = (tr sqrt(sqrt(a) b sqrt(a)))^2; equals tr(ab) when
/// either argument is pure.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// cos t|0> + sin t|1>.
PureState meridian_state(double t);

/// Real-amplitude qubit state -> its meridian angle in [0, pi). Throws if the
/// state is not (projectively) real.
double meridian_angle(const PureState& state);

/// |0>, |1>, |+>, |->, |+i>, |-i>.
std::vector<PureState> pauli_eigenstates();

/// Bloch-vector parametrization rho = (I + v.sigma) / 2 with |v| <= 1.
DensityMatrix from_bloch(const Eigen::Vector3d& v);
Eigen::Vector3d bloch_vector(const DensityMatrix& rho);
Eigen::Vector3d bloch_vector(const PureState& state);

/// Unit-norm Bloch vector -> pure state.
PureState pure_from_bloch(const Eigen::Vector3d& v);

/// Swap operator on C^d (x) C^d.
CMatrix swap_operator(int d);

/// Projectors onto the symmetric and antisymmetric subspaces of C^d (x) C^d.
std::pair<CMatrix, CMatrix> sym_projectors(int d);

/// (1/sqrt d) sum_i |ii>.
PureState max_entangled(int d);

/// 2(1-q)/(d(d+1)) Pi_sym + 2q/(d(d-1)) Pi_anti, q in [0, 1].
DensityMatrix werner(int d, double q);

/// (1-q)/d^2 I + q Phi+, q in [-1/(d^2-1), 1].
DensityMatrix isotropic(int d, double q);

}  // namespace probsynth
