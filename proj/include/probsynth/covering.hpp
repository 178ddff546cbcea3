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
#include <string>
#include <variant>
#include <vector>

#include "probsynth/states.hpp"

namespace probsynth {

/// All pure states of C^d.
struct FullSphere {
  int d;
};
/// Real qubit states cos t|0> + sin t|1>.
struct Meridian {};
/// Meridian states within trace distance `radius` of meridian_state(center_t).
struct MeridianBall {
  double center_t;
  double radius;
};
/// Pure states within trace distance `radius` of `center`.
struct SphereBall {
  PureState center;
  double radius;
};

using Family = std::variant<FullSphere, Meridian, MeridianBall, SphereBall>;

std::string family_name(const Family& family);
int family_dim(const Family& family);
bool family_contains(const Family& family, const PureState& state,
                     double tol = 1e-10);

struct CoveringReport {
  std::vector<PureState> points;
  double radius = 0.0;
  Family family = Meridian{};
  bool verified = false;
  double worst_observed = 0.0;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
};

/// Meridian distance |sin(t1 - t2)|.
double meridian_distance(double t1, double t2);

/// ceil(pi / (2 asin eps)) equally spaced meridian states, verified on a
/// grid that contains every midpoint.
CoveringReport meridian_covering(double eps);

/// Meridian states center + k * 2 asin(r), |k| <= K, with the smallest K
/// such that they r-cover the meridian ball of trace radius R about center.
CoveringReport meridian_arc_covering(double center_t, double ball_radius,
                                     double cover_radius);

/// {t, t +- 2 asin(0.7 sqrt eps)}: a 0.7 sqrt(eps)-covering of the meridian
/// ball of radius 2 sqrt(eps). Throws PreconditionViolation for eps > 0.07.
CoveringReport meridian_ball_covering(double center_t, double eps);

struct GreedyOptions {
  std::size_t max_points = 100000;
  std::int64_t verify_samples = 100000;
  /// Consecutive rejections that count as saturation.
  int patience = 20000;
};

/// Greedy maximal eps-separated subset of a seeded sample stream, patched with
/// any violators found on a second stream, then verified on a third.
/// Throws PreconditionViolation if more than max_points would be needed or
/// the family is unsupported (full sphere with d > 4).
CoveringReport greedy_net(const Family& family, double eps, std::uint64_t seed,
                          const GreedyOptions& options = {});

/// Product states a (x) b over the grid of two greedy qubit-or-qudit nets
/// whose factor radius r satisfies 1 - (1 - r^2)^2 = eps^2, so every product
/// state lies within eps of the grid.
struct ProductCovering {
  std::vector<PureState> factors_a;
  std::vector<PureState> factors_b;
  double factor_radius;
  std::vector<PureState> states() const;
};
ProductCovering product_covering(int d, double eps, std::uint64_t seed,
                                 const GreedyOptions& options = {});

/// Haar measure of a trace-distance ball about a pure state: eps^{2(d-1)}.
double ball_volume(int d, double eps);

struct VolumeEstimate {
  double estimate;
  double std_error;
  std::int64_t hits;
  std::int64_t n_samples;
  std::uint64_t seed;
};

/// Fraction of Haar-random pure states within trace distance eps of center.
/// Samples are drawn in chunks of 2^16, each from its own derived seed, so
/// the result does not depend on the thread count.
VolumeEstimate mc_ball_volume(int d, double eps, const DensityMatrix& center,
                              std::int64_t n_samples, std::uint64_t seed);

/// Upper bound on the ball measure about diag(p0, 1 - p0, 0, 0) in d = 4.
/// Returns 0 for p0 <= 1 - eps and eps^6 at p0 = 1.
double g4_bound(double eps, double p0);

/// The integrand of g_{d,eps}(p0) = (d-2) int_0^1 (1-x)^{d-3}
/// delta((1-p0)x)^{2(d-1)} dx, exposed for quadrature checks.
double g_integrand(int d, double eps, double p0, double x);

struct BoundsReport {
  int d = 0;
  double eps = 0.0;
  double l = 0.0;
  double log2_iin_lower = 0.0;
  double log2_iin_upper = 0.0;
  double log2_iex_lower = 0.0;
  double n_det_lower = 0.0;
  double n_det_upper = 0.0;
  double n_prob_lower = 0.0;
  double n_prob_upper = 0.0;
  /// Rigorous range of n_prob / n_det given the bounds above.
  double ratio_lower = 0.0;
  double ratio_upper = 0.0;
  /// Diagnostics: lower/lower and upper/upper.
  double ratio_aligned_lower = 0.0;
  double ratio_aligned_upper = 0.0;
  double ratio_midpoint = 0.0;
};

BoundsReport bounds_report(int d, double eps);

}  // namespace probsynth
