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

#include <cstddef>
#include <span>
#include <vector>

#include "probsynth/linalg.hpp"
#include "probsynth/states.hpp"

namespace probsynth {

/// A unitary U, or an antiunitary U K where K is entrywise complex
/// conjugation in the computational basis. Antilinear maps have no single
/// matrix, so the pair (U, flag) is the representation.
class SymmetryElement {
 public:
  /// Throws PreconditionViolation unless U U^dagger = I within 1e-10.
  SymmetryElement(CMatrix unitary_part, bool antiunitary);

  static SymmetryElement identity(int dim);
  /// The complex conjugation theta.
  static SymmetryElement conjugation(int dim);

  int dim() const { return static_cast<int>(u_.rows()); }
  const CMatrix& unitary_part() const { return u_; }
  bool antiunitary() const { return anti_; }

  /// (this o other): apply `other` first. Flags xor; when this element is
  /// antiunitary the right factor's unitary part is conjugated.
  SymmetryElement compose(const SymmetryElement& other) const;
  SymmetryElement inverse() const;

  /// U A U^dagger or U A* U^dagger.
  CMatrix act(const CMatrix& a) const;
  PureState act(const PureState& state) const;

  /// Equal up to a unit scalar, entrywise within tol.
  bool projectively_equal(const SymmetryElement& other, double tol) const;

 private:
  CMatrix u_;
  bool anti_;
};

/// A finite group of symmetry elements, closed modulo global phase.
class SymmetryGroup {
 public:
  /// Validates closure (tolerance 1e-8) and presence of the identity.
  explicit SymmetryGroup(std::vector<SymmetryElement> elements);

  static SymmetryGroup trivial(int dim);
  /// {1, theta}: its invariant pure qubit states form the real meridian.
  static SymmetryGroup conjugation_group(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<SymmetryElement>& elements() const { return elements_; }

  /// Index of the element projectively equal to g, or size() if absent.
  std::size_t find(const SymmetryElement& g, double tol = 1e-8) const;

 private:
  int dim_;
  std::vector<SymmetryElement> elements_;
};

/// Projective closure of the generators. Throws PreconditionViolation if the
/// closure grows beyond max_size.
SymmetryGroup group_closure(std::span<const SymmetryElement> generators,
                            std::size_t max_size);

DensityMatrix apply_symmetry(const SymmetryElement& g, const DensityMatrix& rho);

bool is_invariant(const DensityMatrix& rho, const SymmetryGroup& group,
                  double tol);

/// True if applying each group element permutes `states` (as a set, within
/// tol in max-entry distance).
bool is_closed_under(std::span<const DensityMatrix> states,
                     const SymmetryGroup& group, double tol);

}  // namespace probsynth
