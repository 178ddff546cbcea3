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

#include "probsynth/random.hpp"

#include "probsynth/errors.hpp"

namespace probsynth {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CVector gaussian_vector(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (int k = 0; k < dim; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[k] = Complex(re, im);
  }
  return v;
}

PureState haar_state(int dim, Rng& rng) {
  if (dim < 1) throw PreconditionViolation("dimension must be positive");
  return PureState::from_amplitudes(gaussian_vector(dim, rng));
}

CMatrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw PreconditionViolation("dimension must be positive");
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j) g.col(j) = gaussian_vector(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim) {
    throw PreconditionViolation("rank must lie in [1, dim]");
  }
  CMatrix g(dim, rank);
  for (int j = 0; j < rank; ++j) g.col(j) = gaussian_vector(dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitian_part(rho));
}

}  // namespace probsynth
