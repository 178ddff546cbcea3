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

#include "probsynth/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "probsynth/errors.hpp"

namespace probsynth {

namespace {

constexpr double kPhaseCutoff = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kSpectrumTol = 1e-10;

void require_dim(int lhs, int rhs) {
  if (lhs != rhs) throw DimensionMismatch(lhs, rhs);
}

}  // namespace

PureState PureState::from_amplitudes(const CVector& amplitudes) {
  const double norm = amplitudes.norm();
  if (amplitudes.size() == 0 || !(norm > 1e-300) || !std::isfinite(norm)) {
    throw PreconditionViolation("pure state needs a nonzero finite vector");
  }
  CVector v = amplitudes / norm;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mod = std::abs(v[k]);
    if (mod > kPhaseCutoff) {
      v *= std::conj(v[k]) / mod;
      v[k] = mod;
      break;
    }
  }
  return PureState(std::move(v));
}

PureState PureState::basis(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw PreconditionViolation("basis index out of range");
  }
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

double PureState::overlap(const PureState& other) const {
  require_dim(dim(), other.dim());
  return std::norm(amps_.dot(other.amps_));
}

PureState PureState::conjugate() const {
  return from_amplitudes(amps_.conjugate());
}

DensityMatrix::DensityMatrix(const CMatrix& entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw PreconditionViolation("density matrix must be square and nonempty");
  }
  if (!entries.allFinite()) {
    throw PreconditionViolation("density matrix has non-finite entries");
  }
  const double herm = hermiticity_error(entries);
  if (herm > kHermitianTol) {
    throw PreconditionViolation("density matrix not Hermitian (error " +
                                std::to_string(herm) + ")");
  }
  CMatrix h = hermitian_part(entries);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw PreconditionViolation("density matrix trace " + std::to_string(tr) +
                                " != 1");
  }
  const double min_eig = hermitian_eigen(h).values.minCoeff();
  if (min_eig < -kSpectrumTol) {
    throw PreconditionViolation("density matrix has negative eigenvalue " +
                                std::to_string(min_eig));
  }
  rho_ = std::move(h);
}

DensityMatrix::DensityMatrix(const PureState& state)
    : rho_(state.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw PreconditionViolation("dimension must be positive");
  return DensityMatrix(identity(dim) / static_cast<double>(dim), Unchecked{});
}

double DensityMatrix::purity() const { return trace_product(rho_, rho_); }

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_dim(a.dim(), b.dim());
  return half_trace_norm(a.matrix() - b.matrix());
}

double trace_distance(const PureState& a, const PureState& b) {
  require_dim(a.dim(), b.dim());
  // Lagrange identity: 1 - |<a|b>|^2 = sum_{i<j} |a_i b_j - a_j b_i|^2 for
  // unit vectors, without the cancellation of the direct form.
  const CVector& x = a.amplitudes();
  const CVector& y = b.amplitudes();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index j = i + 1; j < x.size(); ++j) {
      sum += std::norm(x[i] * y[j] - x[j] * y[i]);
    }
  }
  return std::min(1.0, std::sqrt(sum));
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_dim(a.dim(), b.dim());
  const auto sqrt_a =
      spectral_apply(hermitian_eigen(a.matrix()),
                     [](double x) { return std::sqrt(std::max(0.0, x)); });
  const CMatrix inner = hermitian_part(sqrt_a * b.matrix() * sqrt_a);
  const RVector ev = hermitian_eigen(inner).values;
  double root = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    root += std::sqrt(std::max(0.0, ev[k]));
  }
  return std::clamp(root * root, 0.0, 1.0);
}

PureState meridian_state(double t) {
  CVector v(2);
  v << std::cos(t), std::sin(t);
  return PureState::from_amplitudes(v);
}

double meridian_angle(const PureState& state) {
  if (state.dim() != 2) throw DimensionMismatch(state.dim(), 2);
  const CVector& a = state.amplitudes();
  if (std::abs(a[0].imag()) > 1e-9 || std::abs(a[1].imag()) > 1e-9) {
    throw PreconditionViolation("state is not on the real meridian");
  }
  double t = std::atan2(a[1].real(), a[0].real());
  if (t < 0.0) t += std::numbers::pi;
  if (t >= std::numbers::pi) t -= std::numbers::pi;
  return t;
}

std::vector<PureState> pauli_eigenstates() {
  const double h = std::numbers::sqrt2 / 2.0;
  const Complex i(0.0, 1.0);
  std::vector<PureState> out;
  auto add = [&](Complex a, Complex b) {
    CVector v(2);
    v << a, b;
    out.push_back(PureState::from_amplitudes(v));
  };
  add(1.0, 0.0);
  add(0.0, 1.0);
  add(h, h);
  add(h, -h);
  add(h, i * h);
  add(h, -i * h);
  return out;
}

DensityMatrix from_bloch(const Eigen::Vector3d& v) {
  if (v.norm() > 1.0 + 1e-12) {
    throw PreconditionViolation("Bloch vector outside the unit ball");
  }
  const Complex i(0.0, 1.0);
  CMatrix rho(2, 2);
  rho << 0.5 * (1.0 + v.z()), 0.5 * (v.x() - i * v.y()),
      0.5 * (v.x() + i * v.y()), 0.5 * (1.0 - v.z());
  return DensityMatrix(rho);
}

Eigen::Vector3d bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionMismatch(rho.dim(), 2);
  const CMatrix& m = rho.matrix();
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

Eigen::Vector3d bloch_vector(const PureState& state) {
  if (state.dim() != 2) throw DimensionMismatch(state.dim(), 2);
  const CVector& a = state.amplitudes();
  const Complex r01 = a[0] * std::conj(a[1]);
  return {2.0 * r01.real(), -2.0 * r01.imag(), std::norm(a[0]) - std::norm(a[1])};
}

PureState pure_from_bloch(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    throw PreconditionViolation("pure-state Bloch vector must have unit norm");
  }
  const Eigen::Vector3d u = v / n;
  const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + u.z())));
  CVector amps(2);
  if (c < 1e-12) {
    amps << 0.0, 1.0;
  } else {
    amps << c, Complex(u.x(), u.y()) / (2.0 * c);
  }
  return PureState::from_amplitudes(amps);
}

CMatrix swap_operator(int d) {
  CMatrix f = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  }
  return f;
}

std::pair<CMatrix, CMatrix> sym_projectors(int d) {
  if (d < 2) throw PreconditionViolation("sym_projectors needs d >= 2");
  const CMatrix f = swap_operator(d);
  const CMatrix id = identity(d * d);
  return {0.5 * (id + f), 0.5 * (id - f)};
}

PureState max_entangled(int d) {
  if (d < 1) throw PreconditionViolation("dimension must be positive");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v[i * d + i] = 1.0;
  return PureState::from_amplitudes(v);
}

DensityMatrix werner(int d, double q) {
  if (d < 2) throw PreconditionViolation("werner needs d >= 2");
  if (!(q >= -1e-12 && q <= 1.0 + 1e-12)) {
    throw PreconditionViolation("werner parameter q must lie in [0, 1]");
  }
  const auto [sym, anti] = sym_projectors(d);
  const double dd = d;
  return DensityMatrix(2.0 * (1.0 - q) / (dd * (dd + 1.0)) * sym +
                       2.0 * q / (dd * (dd - 1.0)) * anti);
}

DensityMatrix isotropic(int d, double q) {
  if (d < 2) throw PreconditionViolation("isotropic needs d >= 2");
  const double dd = d;
  if (!(q >= -1.0 / (dd * dd - 1.0) - 1e-12 && q <= 1.0 + 1e-12)) {
    throw PreconditionViolation(
        "isotropic parameter q must lie in [-1/(d^2-1), 1]");
  }
  return DensityMatrix((1.0 - q) / (dd * dd) * identity(d * d) +
                       q * max_entangled(d).projector());
}

}  // namespace probsynth
