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

#include "probsynth/symmetry.hpp"

#include <cmath>

#include "probsynth/errors.hpp"

namespace probsynth {

namespace {
constexpr double kUnitaryTol = 1e-10;
constexpr double kClosureTol = 1e-8;
}  // namespace

SymmetryElement::SymmetryElement(CMatrix unitary_part, bool antiunitary)
    : u_(std::move(unitary_part)), anti_(antiunitary) {
  if (u_.rows() == 0 || u_.rows() != u_.cols()) {
    throw PreconditionViolation("symmetry element must be square");
  }
  const double err =
      (u_ * u_.adjoint() - CMatrix::Identity(u_.rows(), u_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (err > kUnitaryTol) {
    throw PreconditionViolation("symmetry element is not unitary");
  }
}

SymmetryElement SymmetryElement::identity(int dim) {
  return {probsynth::identity(dim), false};
}

SymmetryElement SymmetryElement::conjugation(int dim) {
  return {probsynth::identity(dim), true};
}

SymmetryElement SymmetryElement::compose(const SymmetryElement& other) const {
  if (dim() != other.dim()) throw DimensionMismatch(dim(), other.dim());
  const CMatrix right = anti_ ? CMatrix(other.u_.conjugate()) : other.u_;
  return {u_ * right, anti_ != other.anti_};
}

SymmetryElement SymmetryElement::inverse() const {
  // (U K)^{-1} = K U^dagger = U^T K.
  return anti_ ? SymmetryElement(u_.transpose(), true)
               : SymmetryElement(u_.adjoint(), false);
}

CMatrix SymmetryElement::act(const CMatrix& a) const {
  if (a.rows() != u_.rows()) {
    throw DimensionMismatch(static_cast<int>(a.rows()), dim());
  }
  return anti_ ? CMatrix(u_ * a.conjugate() * u_.adjoint())
               : CMatrix(u_ * a * u_.adjoint());
}

PureState SymmetryElement::act(const PureState& state) const {
  if (state.dim() != dim()) throw DimensionMismatch(state.dim(), dim());
  return PureState::from_amplitudes(
      anti_ ? CVector(u_ * state.amplitudes().conjugate())
            : CVector(u_ * state.amplitudes()));
}

bool SymmetryElement::projectively_equal(const SymmetryElement& other,
                                         double tol) const {
  if (anti_ != other.anti_ || dim() != other.dim()) return false;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  other.u_.cwiseAbs().maxCoeff(&r, &c);
  const Complex scale = u_(r, c) / other.u_(r, c);
  if (std::abs(std::abs(scale) - 1.0) > tol) return false;
  return (u_ - scale * other.u_).cwiseAbs().maxCoeff() <= tol;
}

SymmetryGroup::SymmetryGroup(std::vector<SymmetryElement> elements)
    : dim_(elements.empty() ? 0 : elements.front().dim()),
      elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw PreconditionViolation("symmetry group must be nonempty");
  }
  for (const auto& g : elements_) {
    if (g.dim() != dim_) throw DimensionMismatch(g.dim(), dim_);
  }
  if (find(SymmetryElement::identity(dim_), kClosureTol) == size()) {
    throw PreconditionViolation("symmetry group lacks the identity");
  }
  for (const auto& a : elements_) {
    if (find(a.inverse(), kClosureTol) == size()) {
      throw PreconditionViolation("symmetry group not closed under inverse");
    }
    for (const auto& b : elements_) {
      if (find(a.compose(b), kClosureTol) == size()) {
        throw PreconditionViolation("symmetry group not closed");
      }
    }
  }
}

SymmetryGroup SymmetryGroup::trivial(int dim) {
  return SymmetryGroup({SymmetryElement::identity(dim)});
}

SymmetryGroup SymmetryGroup::conjugation_group(int dim) {
  return SymmetryGroup(
      {SymmetryElement::identity(dim), SymmetryElement::conjugation(dim)});
}

std::size_t SymmetryGroup::find(const SymmetryElement& g, double tol) const {
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    if (elements_[k].projectively_equal(g, tol)) return k;
  }
  return elements_.size();
}

SymmetryGroup group_closure(std::span<const SymmetryElement> generators,
                            std::size_t max_size) {
  if (generators.empty()) {
    throw PreconditionViolation("group_closure needs at least one generator");
  }
  const int dim = generators.front().dim();
  std::vector<SymmetryElement> elements{SymmetryElement::identity(dim)};
  auto contains = [&](const SymmetryElement& g) {
    for (const auto& e : elements) {
      if (e.projectively_equal(g, kClosureTol)) return true;
    }
    return false;
  };
  for (const auto& g : generators) {
    if (g.dim() != dim) throw DimensionMismatch(g.dim(), dim);
  }
  // Breadth-first: right-multiply every new element by every generator.
  std::size_t frontier = 0;
  while (frontier < elements.size()) {
    const SymmetryElement current = elements[frontier++];
    for (const auto& g : generators) {
      SymmetryElement next = current.compose(g);
      if (contains(next)) continue;
      if (elements.size() >= max_size) {
        throw PreconditionViolation("group closure exceeds max_size " +
                                    std::to_string(max_size));
      }
      elements.push_back(std::move(next));
    }
  }
  return SymmetryGroup(std::move(elements));
}

DensityMatrix apply_symmetry(const SymmetryElement& g, const DensityMatrix& rho) {
  return DensityMatrix(hermitian_part(g.act(rho.matrix())));
}

bool is_invariant(const DensityMatrix& rho, const SymmetryGroup& group,
                  double tol) {
  if (rho.dim() != group.dim()) throw DimensionMismatch(rho.dim(), group.dim());
  for (const auto& g : group.elements()) {
    if ((g.act(rho.matrix()) - rho.matrix()).cwiseAbs().maxCoeff() > tol) {
      return false;
    }
  }
  return true;
}

bool is_closed_under(std::span<const DensityMatrix> states,
                     const SymmetryGroup& group, double tol) {
  for (const auto& g : group.elements()) {
    for (const auto& s : states) {
      if (s.dim() != group.dim()) throw DimensionMismatch(s.dim(), group.dim());
      const CMatrix image = g.act(s.matrix());
      bool found = false;
      for (const auto& t : states) {
        if ((image - t.matrix()).cwiseAbs().maxCoeff() <= tol) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace probsynth
