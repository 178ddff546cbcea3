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

// Primal-dual path following for
//
//   min tr(Y)  s.t.  Y - Z + sum_x p_x rho_x = rho,  sum_x p_x = 1,
//                    Y, Z >= 0,  p >= 0,
//
// whose optimum is min_p T(rho - sum_x p_x rho_x). The dual variable of the
// d^2 Hermitian equality rows is the witness M; S_Y = 1 - M and S_Z = M.
// HKM search direction with a Mehrotra predictor-corrector.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "probsynth/approx_solver.hpp"
#include "probsynth/errors.hpp"

namespace probsynth::detail {

namespace {

constexpr int kDefaultIterations = 100;
constexpr double kStepFraction = 0.98;

// Coordinates in the orthonormal basis E_ii, (E_ij + E_ji)/sqrt2,
// i(E_ij - E_ji)/sqrt2 of the Hermitian matrices.
RVector hvec(const CMatrix& h) {
  const auto d = h.rows();
  RVector v(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) v[k++] = h(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const Complex hij = 0.5 * (h(i, j) + std::conj(h(j, i)));
      v[k++] = std::numbers::sqrt2 * hij.real();
      v[k++] = std::numbers::sqrt2 * hij.imag();
    }
  }
  return v;
}

CMatrix hmat(const RVector& v, Eigen::Index d) {
  CMatrix h = CMatrix::Zero(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) h(i, i) = v[k++];
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const Complex hij(v[k] / std::numbers::sqrt2, v[k + 1] / std::numbers::sqrt2);
      k += 2;
      h(i, j) = hij;
      h(j, i) = std::conj(hij);
    }
  }
  return h;
}

struct Point {
  CMatrix y;
  CMatrix z;
  RVector p;
};

Point operator+(const Point& a, const Point& b) {
  return {a.y + b.y, a.z + b.z, a.p + b.p};
}
Point operator-(const Point& a, const Point& b) {
  return {a.y - b.y, a.z - b.z, a.p - b.p};
}
Point operator*(double s, const Point& a) { return {s * a.y, s * a.z, s * a.p}; }

double inner(const Point& a, const Point& b) {
  return trace_product(a.y, b.y) + trace_product(a.z, b.z) + a.p.dot(b.p);
}

class Ipm {
 public:
  Ipm(const ConvexApproxProblem& problem) : problem_(problem) {
    d_ = problem.dim();
    n_ = static_cast<Eigen::Index>(problem.candidates.size());
    dd_ = d_ * d_;
    m_ = dd_ + 1;
    a_.resize(m_, n_);
    for (Eigen::Index x = 0; x < n_; ++x) {
      a_.col(x).head(dd_) = hvec(problem.candidates[static_cast<std::size_t>(x)].matrix());
      a_(dd_, x) = 1.0;
    }
    b_.resize(m_);
    b_.head(dd_) = hvec(problem.target.matrix());
    b_[dd_] = 1.0;
    basis_.reserve(static_cast<std::size_t>(dd_));
    for (Eigen::Index k = 0; k < dd_; ++k) {
      basis_.push_back(hmat(RVector::Unit(dd_, k), d_));
    }
  }

  // A(X) for a possibly non-Hermitian point (only Hermitian parts count).
  RVector apply_a(const Point& x) const {
    RVector out(m_);
    out.head(dd_) = hvec(hermitian_part(x.y)) - hvec(hermitian_part(x.z));
    out[dd_] = 0.0;
    out += a_ * x.p;
    return out;
  }

  Point apply_at(const RVector& y) const {
    const CMatrix m = hmat(y.head(dd_), d_);
    return {m, -m, a_.transpose() * y};
  }

  Point cost() const {
    return {identity(static_cast<int>(d_)), CMatrix::Zero(d_, d_),
            RVector::Zero(n_)};
  }

  // X V S^{-1}, blockwise.
  static Point x_v_sinv(const Point& x, const Point& v, const Point& sinv) {
    return {x.y * v.y * sinv.y, x.z * v.z * sinv.z,
            x.p.cwiseProduct(v.p).cwiseProduct(sinv.p)};
  }

  static Point herm(const Point& a) {
    return {hermitian_part(a.y), hermitian_part(a.z), a.p};
  }

  Eigen::MatrixXd schur(const Point& x, const Point& sinv) const {
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m_, m_);
    for (Eigen::Index j = 0; j < dd_; ++j) {
      const CMatrix& bj = basis_[static_cast<std::size_t>(j)];
      const CMatrix w = x.y * bj * sinv.y + x.z * bj * sinv.z;
      mat.col(j).head(dd_) = hvec(hermitian_part(w));
    }
    const RVector weight = x.p.cwiseProduct(sinv.p);
    mat += a_ * weight.asDiagonal() * a_.transpose();
    return 0.5 * (mat + mat.transpose());
  }

  ConvexApproxSolution run(double tol, const SolverOptions& options) {
    const int budget =
        options.max_iterations > 0 ? options.max_iterations : kDefaultIterations;
    const double target_gap = std::max(1e-2 * tol, 1e-12);

    Point x{identity(static_cast<int>(d_)), identity(static_cast<int>(d_)),
            RVector::Ones(n_)};
    Point s = x;
    RVector y = RVector::Zero(m_);
    const double nu = static_cast<double>(2 * d_ + n_);

    Certificate best_low{};
    Certificate best_up{};
    best_low.lower = -std::numeric_limits<double>::infinity();
    best_up.upper = std::numeric_limits<double>::infinity();
    int iter = 0;

    auto record = [&](const Point& xp, const RVector& yv) {
      Certificate c = certify(problem_, {xp.p, hmat(yv.head(dd_), d_)});
      if (options.observer) options.observer({iter, c.lower, c.upper});
      if (c.lower > best_low.lower) best_low = c;
      if (c.upper < best_up.upper) best_up = c;
    };
    record(x, y);

    for (iter = 1; iter <= budget; ++iter) {
      if (best_up.upper - best_low.lower <= target_gap) break;
      const Point sinv = inverse(s);
      if (!sinv.p.allFinite() || !sinv.y.allFinite() || !sinv.z.allFinite()) break;
      const RVector rp = b_ - apply_a(x);
      const Point rd = cost() - apply_at(y) - s;
      const double mu = inner(x, s) / nu;

      const Eigen::MatrixXd schur_mat = schur(x, sinv);
      Eigen::LLT<Eigen::MatrixXd> llt(schur_mat);
      if (llt.info() != Eigen::Success) break;
      const Point x_rd = x_v_sinv(x, rd, sinv);

      auto direction = [&](const Point& k, Point& dx, RVector& dy, Point& ds) {
        const RVector rhs = rp - apply_a(k) + apply_a(x_rd);
        dy = llt.solve(rhs);
        ds = rd - apply_at(dy);
        dx = k - herm(x_v_sinv(x, ds, sinv));
      };

      Point dx_a;
      Point ds_a;
      RVector dy_a;
      direction(-1.0 * x, dx_a, dy_a, ds_a);
      const double ap_a = std::min(1.0, max_step(x, dx_a));
      const double ad_a = std::min(1.0, max_step(s, ds_a));
      const double mu_aff = inner(x + ap_a * dx_a, s + ad_a * ds_a) / nu;
      const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

      const Point corr = herm(x_v_sinv(dx_a, ds_a, sinv));
      const Point k = sigma * mu * sinv - x - corr;
      Point dx;
      Point ds;
      RVector dy;
      direction(k, dx, dy, ds);
      const double ap = std::min(1.0, kStepFraction * max_step(x, dx));
      const double ad = std::min(1.0, kStepFraction * max_step(s, ds));
      if (!(ap > 0.0) || !(ad > 0.0)) break;
      x = x + ap * dx;
      s = s + ad * ds;
      y += ad * dy;
      x = herm(x);
      s = herm(s);
      record(x, y);
    }

    // Targets inside (or on) the hull have value 0 and a non-unique optimum;
    // the central path reaches it only slowly. The Frobenius-nearest hull
    // point is then exact, so try it as a final upper certificate.
    if (best_up.upper - best_low.lower > target_gap) {
      const auto near = min_norm_point(a_.topRows(dd_), b_.head(dd_));
      record({x.y, x.z, near.weights}, y);
    }

    ConvexApproxSolution sol;
    sol.p = best_up.p;
    sol.dual_value = best_up.upper;
    sol.value = best_up.upper;
    sol.witness = best_low.witness;
    sol.primal_value = best_low.lower;
    sol.gap = std::max(0.0, sol.dual_value - sol.primal_value);
    sol.iterations = std::min(iter, budget);
    return sol;
  }

 private:
  static CMatrix hpd_inverse(const CMatrix& a) {
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) {
      return CMatrix::Constant(a.rows(), a.cols(),
                               std::numeric_limits<double>::quiet_NaN());
    }
    return hermitian_part(llt.solve(CMatrix::Identity(a.rows(), a.cols())));
  }

  static Point inverse(const Point& s) {
    return {hpd_inverse(s.y), hpd_inverse(s.z), s.p.cwiseInverse()};
  }

  // Largest alpha with X + alpha dX still positive semidefinite (infinity if
  // unbounded).
  static double max_step_psd(const CMatrix& x, const CMatrix& dx) {
    Eigen::LLT<CMatrix> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    const CMatrix l = llt.matrixL();
    const CMatrix tmp = l.triangularView<Eigen::Lower>().solve(dx);
    const CMatrix scaled =
        l.triangularView<Eigen::Lower>().solve(CMatrix(tmp.adjoint())).adjoint();
    const double lmin = hermitian_eigen(scaled).values.minCoeff();
    return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
  }

  static double max_step(const Point& x, const Point& dx) {
    double alpha = std::min(max_step_psd(x.y, dx.y), max_step_psd(x.z, dx.z));
    for (Eigen::Index i = 0; i < x.p.size(); ++i) {
      if (dx.p[i] < 0.0) alpha = std::min(alpha, -x.p[i] / dx.p[i]);
    }
    return alpha;
  }

  const ConvexApproxProblem& problem_;
  Eigen::Index d_ = 0;
  Eigen::Index n_ = 0;
  Eigen::Index dd_ = 0;
  Eigen::Index m_ = 0;
  Eigen::MatrixXd a_;
  RVector b_;
  std::vector<CMatrix> basis_;
};

}  // namespace

ConvexApproxSolution solve_interior_point(const ConvexApproxProblem& problem,
                                          double tol,
                                          const SolverOptions& options) {
  Ipm ipm(problem);
  ConvexApproxSolution sol = ipm.run(tol, options);
  if (sol.gap > tol) {
    throw SolverNonConvergence("interior point did not certify gap " +
                                   std::to_string(sol.gap) + " <= " +
                                   std::to_string(tol),
                               sol.primal_value, sol.dual_value);
  }
  return sol;
}

}  // namespace probsynth::detail
