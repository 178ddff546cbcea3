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
#include <random>

#include "probsynth/linalg.hpp"
#include "probsynth/states.hpp"

namespace probsynth {

using Rng = std::mt19937_64;

/// splitmix64 of (seed, stream); gives independent child seeds for parallel
/// Monte Carlo chunks.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
PureState haar_state(int dim, Rng& rng);

/// Raw (unnormalized) complex Gaussian vector.
CVector gaussian_vector(int dim, Rng& rng);

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
CMatrix haar_unitary(int dim, Rng& rng);

/// Random density matrix of the given rank (Wishart with rank columns).
DensityMatrix random_density(int dim, int rank, Rng& rng);

}  // namespace probsynth
