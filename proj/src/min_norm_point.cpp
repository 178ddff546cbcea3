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

#include <algorithm>
#include <vector>

#include "probsynth/approx_solver.hpp"
#include "probsynth/errors.hpp"

namespace probsynth {

namespace {

// Affine minimizer of |sum_i mu_i q_i| subject to sum_i mu_i = 1.
RVector affine_min(const Eigen::MatrixXd& q) {
  const Eigen::Index k = q.cols();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = q.transpose() * q;
  kkt.block(0, k, k, 1).setOnes();
  kkt.block(k, 0, 1, k).setOnes();
  RVector rhs = RVector::Zero(k + 1);
  rhs[k] = 1.0;
  return kkt.completeOrthogonalDecomposition().solve(rhs).head(k);
}

}  // namespace

NearestHullPoint min_norm_point(const Eigen::MatrixXd& points,
                                const RVector& query) {
  const Eigen::Index n = points.cols();
  if (n == 0) throw PreconditionViolation("min_norm_point needs points");
  if (points.rows() != query.size()) {
    throw DimensionMismatch(static_cast<int>(points.rows()),
                            static_cast<int>(query.size()));
  }
  const Eigen::MatrixXd q = points.colwise() - query;
  const double scale = std::max(1.0, q.colwise().squaredNorm().maxCoeff());
  constexpr double kTol = 1e-14;

  Eigen::Index start = 0;
  q.colwise().squaredNorm().minCoeff(&start);
  std::vector<Eigen::Index> active{start};
  std::vector<double> lambda{1.0};
  RVector x = q.col(start);

  for (int major = 0; major < 10000; ++major) {
    Eigen::Index j = 0;
    const double best = (q.transpose() * x).minCoeff(&j);
    if (best >= x.squaredNorm() - kTol * scale) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      Eigen::MatrixXd qa(q.rows(), static_cast<Eigen::Index>(active.size()));
      for (std::size_t i = 0; i < active.size(); ++i) {
        qa.col(static_cast<Eigen::Index>(i)) = q.col(active[i]);
      }
      const RVector mu = affine_min(qa);
      if (mu.minCoeff() > kTol) {
        lambda.assign(mu.data(), mu.data() + mu.size());
        x = qa * mu;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        if (mu[ii] <= kTol && lambda[i] - mu[ii] > 0.0) {
          theta = std::min(theta, lambda[i] / (lambda[i] - mu[ii]));
        }
      }
      std::vector<Eigen::Index> next_active;
      std::vector<double> next_lambda;
      for (std::size_t i = 0; i < active.size(); ++i) {
        const double l =
            lambda[i] + theta * (mu[static_cast<Eigen::Index>(i)] - lambda[i]);
        if (l > kTol) {
          next_active.push_back(active[i]);
          next_lambda.push_back(l);
        }
      }
      active = std::move(next_active);
      lambda = std::move(next_lambda);
      double total = 0.0;
      for (double l : lambda) total += l;
      x.setZero();
      for (std::size_t i = 0; i < active.size(); ++i) {
        lambda[i] /= total;
        x += lambda[i] * q.col(active[i]);
      }
    }
  }

  NearestHullPoint out{x.norm(), RVector::Zero(n)};
  for (std::size_t i = 0; i < active.size(); ++i) out.weights[active[i]] = lambda[i];
  return out;
}

}  // namespace probsynth
