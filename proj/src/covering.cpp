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

#include "probsynth/covering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "probsynth/errors.hpp"
#include "probsynth/random.hpp"

namespace probsynth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVerifySlack = 1e-12;

void require_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw PreconditionViolation("eps must lie in (0, 1]");
  }
}

// Flat amplitude storage for fast nearest-point queries.
class PointSet {
 public:
  explicit PointSet(int dim) : dim_(dim) {}

  void add(const PureState& s) {
    for (int k = 0; k < dim_; ++k) amps_.push_back(s.amplitudes()[k]);
  }
  std::size_t size() const { return amps_.size() / static_cast<std::size_t>(dim_); }

  // max_x |<x|s>|^2, with early exit once it exceeds `stop`.
  double best_overlap(const PureState& s, double stop = 2.0) const {
    const Complex* a = s.amplitudes().data();
    double best = 0.0;
    for (std::size_t i = 0; i < amps_.size(); i += static_cast<std::size_t>(dim_)) {
      Complex dot = 0.0;
      for (int k = 0; k < dim_; ++k) dot += std::conj(amps_[i + static_cast<std::size_t>(k)]) * a[k];
      const double ov = std::norm(dot);
      if (ov > best) {
        best = ov;
        if (best >= stop) break;
      }
    }
    return best;
  }

  double min_distance(const PureState& s) const {
    return std::sqrt(std::max(0.0, 1.0 - best_overlap(s)));
  }

 private:
  int dim_;
  std::vector<Complex> amps_;
};

double ball_half_angle(double radius) {
  return radius >= 1.0 ? 0.5 * kPi : std::asin(radius);
}

// Haar-restricted sample of the trace ball of radius r about center.
PureState sample_sphere_ball(const PureState& center, double radius, Rng& rng) {
  const int d = center.dim();
  if (d == 1) return center;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r2 = std::min(1.0, radius * radius);
  const double y = r2 * std::pow(unif(rng), 1.0 / static_cast<double>(d - 1));
  CVector chi = gaussian_vector(d, rng);
  const CVector& c = center.amplitudes();
  chi -= c * c.dot(chi);
  chi.normalize();
  return PureState::from_amplitudes(std::sqrt(1.0 - y) * c + std::sqrt(y) * chi);
}

PureState sample_family(const Family& family, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return std::visit(
      [&](const auto& f) -> PureState {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullSphere>) {
          return haar_state(f.d, rng);
        } else if constexpr (std::is_same_v<F, Meridian>) {
          return meridian_state(kPi * unif(rng));
        } else if constexpr (std::is_same_v<F, MeridianBall>) {
          const double half = ball_half_angle(f.radius);
          return meridian_state(f.center_t + half * (2.0 * unif(rng) - 1.0));
        } else {
          return sample_sphere_ball(f.center, f.radius, rng);
        }
      },
      family);
}

// Worst min-distance over a uniform t-grid on [lo, hi].
double meridian_grid_worst(const std::vector<double>& ts, double lo, double hi,
                           std::int64_t n) {
  double worst = 0.0;
  for (std::int64_t j = 0; j <= n; ++j) {
    const double t = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n);
    double best = 1.0;
    for (double s : ts) best = std::min(best, meridian_distance(t, s));
    worst = std::max(worst, best);
  }
  return worst;
}

CoveringReport meridian_points_report(std::vector<double> ts, double radius,
                                      Family family, double lo, double hi,
                                      std::int64_t grid) {
  CoveringReport report;
  for (double t : ts) report.points.push_back(meridian_state(t));
  report.radius = radius;
  report.family = std::move(family);
  report.worst_observed = meridian_grid_worst(ts, lo, hi, grid);
  report.sample_count = grid + 1;
  report.verified = report.worst_observed <= radius + kVerifySlack;
  return report;
}

}  // namespace

std::string family_name(const Family& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullSphere>) {
          return "full-sphere(" + std::to_string(f.d) + ")";
        } else if constexpr (std::is_same_v<F, Meridian>) {
          return "meridian";
        } else if constexpr (std::is_same_v<F, MeridianBall>) {
          return "meridian-ball";
        } else {
          return "sphere-ball";
        }
      },
      family);
}

int family_dim(const Family& family) {
  if (const auto* f = std::get_if<FullSphere>(&family)) return f->d;
  if (const auto* f = std::get_if<SphereBall>(&family)) return f->center.dim();
  return 2;
}

bool family_contains(const Family& family, const PureState& state, double tol) {
  if (state.dim() != family_dim(family)) return false;
  const CVector& a = state.amplitudes();
  const bool real = state.dim() == 2 && std::abs(a[0].imag()) <= tol &&
                    std::abs(a[1].imag()) <= tol;
  return std::visit(
      [&](const auto& f) -> bool {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FullSphere>) {
          return true;
        } else if constexpr (std::is_same_v<F, Meridian>) {
          return real;
        } else if constexpr (std::is_same_v<F, MeridianBall>) {
          return real && trace_distance(state, meridian_state(f.center_t)) <=
                             f.radius + tol;
        } else {
          return trace_distance(state, f.center) <= f.radius + tol;
        }
      },
      family);
}

double meridian_distance(double t1, double t2) { return std::abs(std::sin(t1 - t2)); }

CoveringReport meridian_covering(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionViolation("eps must lie in (0, 1)");
  }
  const auto n = static_cast<int>(std::ceil(kPi / (2.0 * std::asin(eps)) - 1e-9));
  std::vector<double> ts;
  for (int k = 0; k < n; ++k) ts.push_back(kPi * k / n);
  // A multiple of 2n grid cells lands exactly on every midpoint.
  const std::int64_t cells = 2LL * n * std::max<std::int64_t>(1, 100000 / (2LL * n));
  return meridian_points_report(std::move(ts), eps, Meridian{}, 0.0, kPi, cells);
}

CoveringReport meridian_arc_covering(double center_t, double ball_radius,
                                     double cover_radius) {
  if (!(ball_radius > 0.0) || !(cover_radius > 0.0 && cover_radius < 1.0)) {
    throw PreconditionViolation("arc covering needs positive radii below 1");
  }
  const double half = ball_half_angle(ball_radius);
  const double step = std::asin(cover_radius);
  int k_max = 0;
  while ((2.0 * k_max + 1.0) * step < half) ++k_max;
  std::vector<double> ts{center_t};
  for (int k = 1; k <= k_max; ++k) {
    ts.push_back(center_t - 2.0 * k * step);
    ts.push_back(center_t + 2.0 * k * step);
  }
  std::sort(ts.begin(), ts.end());
  return meridian_points_report(std::move(ts), cover_radius,
                                MeridianBall{center_t, ball_radius},
                                center_t - half, center_t + half, 100000);
}

CoveringReport meridian_ball_covering(double center_t, double eps) {
  if (!(eps > 0.0 && eps <= 0.07)) {
    throw PreconditionViolation("meridian_ball_covering needs eps in (0, 0.07]");
  }
  const double root = std::sqrt(eps);
  return meridian_arc_covering(center_t, 2.0 * root, 0.7 * root);
}

CoveringReport greedy_net(const Family& family, double eps, std::uint64_t seed,
                          const GreedyOptions& options) {
  if (!(eps > 0.0 && eps < 1.0 + 1e-15)) {
    throw PreconditionViolation("eps must lie in (0, 1]");
  }
  if (const auto* f = std::get_if<FullSphere>(&family); f && (f->d < 1 || f->d > 4)) {
    throw PreconditionViolation("greedy_net supports full-sphere(d) for d <= 4");
  }
  const int dim = family_dim(family);
  // Separated means distance >= eps, i.e. overlap <= 1 - eps^2.
  const double accept_overlap = 1.0 - eps * eps;
  PointSet set(dim);
  CoveringReport report;
  report.family = family;
  report.radius = eps;
  report.seed = seed;

  auto accept = [&](const PureState& s) {
    if (set.size() > 0 && set.best_overlap(s, accept_overlap + 1e-15) > accept_overlap) {
      return false;
    }
    if (report.points.size() >= options.max_points) {
      throw PreconditionViolation("greedy_net exceeded max_points " +
                                  std::to_string(options.max_points));
    }
    set.add(s);
    report.points.push_back(s);
    return true;
  };

  Rng stream(derive_seed(seed, 0));
  for (int rejections = 0; rejections < options.patience;) {
    rejections = accept(sample_family(family, stream)) ? 0 : rejections + 1;
  }
  // Second stream: adopt anything still uncovered (it is eps-separated too).
  Rng repair(derive_seed(seed, 1));
  for (std::int64_t k = 0; k < options.verify_samples; ++k) {
    const PureState s = sample_family(family, repair);
    if (set.min_distance(s) > eps) accept(s);
  }
  Rng verify(derive_seed(seed, 2));
  double worst = 0.0;
  for (std::int64_t k = 0; k < options.verify_samples; ++k) {
    worst = std::max(worst, set.min_distance(sample_family(family, verify)));
  }
  report.worst_observed = worst;
  report.sample_count = options.verify_samples;
  report.verified = worst <= eps + kVerifySlack;
  return report;
}

std::vector<PureState> ProductCovering::states() const {
  std::vector<PureState> out;
  out.reserve(factors_a.size() * factors_b.size());
  for (const auto& a : factors_a) {
    for (const auto& b : factors_b) {
      out.push_back(PureState::from_amplitudes(
          kron(a.amplitudes(), b.amplitudes())));
    }
  }
  return out;
}

ProductCovering product_covering(int d, double eps, std::uint64_t seed,
                                 const GreedyOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionViolation("eps must lie in (0, 1)");
  }
  const double r = std::sqrt(1.0 - std::sqrt(1.0 - eps * eps));
  ProductCovering out;
  out.factor_radius = r;
  out.factors_a = greedy_net(FullSphere{d}, r, derive_seed(seed, 10), options).points;
  out.factors_b = greedy_net(FullSphere{d}, r, derive_seed(seed, 11), options).points;
  return out;
}

double ball_volume(int d, double eps) {
  if (d < 1) throw PreconditionViolation("d must be positive");
  require_eps(eps);
  return std::pow(eps, 2.0 * (d - 1));
}

VolumeEstimate mc_ball_volume(int d, double eps, const DensityMatrix& center,
                              std::int64_t n_samples, std::uint64_t seed) {
  if (d < 1 || d > 4) throw PreconditionViolation("mc_ball_volume needs d <= 4");
  if (center.dim() != d) throw DimensionMismatch(center.dim(), d);
  require_eps(eps);
  if (n_samples < 10000) {
    throw PreconditionViolation("mc_ball_volume needs at least 1e4 samples");
  }
  constexpr std::int64_t kChunk = 1 << 16;
  const std::int64_t chunks = (n_samples + kChunk - 1) / kChunk;
  const bool pure = std::abs(center.purity() - 1.0) < 1e-12;
  // Pure center: T = sqrt(1 - <psi|rho|psi>); otherwise lambda_max(psi - rho),
  // the only positive eigenvalue of a rank-one minus PSD operator.
  const CMatrix& rho = center.matrix();
  std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
  std::atomic<std::int64_t> next{0};

  auto worker = [&] {
    for (std::int64_t c = next++; c < chunks; c = next++) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
      const std::int64_t count = std::min(kChunk, n_samples - c * kChunk);
      std::int64_t h = 0;
      for (std::int64_t k = 0; k < count; ++k) {
        const PureState psi = haar_state(d, rng);
        double t = 0.0;
        if (pure) {
          const double f = (psi.amplitudes().adjoint() * rho * psi.amplitudes())(0, 0).real();
          t = std::sqrt(std::max(0.0, 1.0 - f));
        } else {
          t = hermitian_eigen(psi.projector() - rho).values.maxCoeff();
        }
        if (t <= eps) ++h;
      }
      hits[static_cast<std::size_t>(c)] = h;
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(chunks)));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k + 1 < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::int64_t total = 0;
  for (auto h : hits) total += h;
  const double n = static_cast<double>(n_samples);
  const double p = static_cast<double>(total) / n;
  return {p, std::sqrt(p * (1.0 - p) / n), total, n_samples, seed};
}

double g_integrand(int d, double eps, double p0, double x) {
  const double q = (1.0 - p0) * x;
  const double delta2 = (eps + q) * (p0 + eps - 1.0) / (p0 - q);
  return (d - 2) * std::pow(1.0 - x, d - 3) * std::pow(delta2, d - 1);
}

double g4_bound(double eps, double p0) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw PreconditionViolation("g4_bound needs eps in (0, 1/2]");
  }
  if (!(p0 <= 1.0)) throw PreconditionViolation("g4_bound needs p0 <= 1");
  if (p0 <= 1.0 - eps) return 0.0;
  if (p0 == 1.0) return std::pow(eps, 6);
  const double a = (2.0 * p0 - 1.0) / (eps + p0);
  const double b = p0 / (eps + p0);
  // The closed form cancels catastrophically as p0 -> 1 (b - a -> 0) and as
  // a -> 0; fall back to Gauss-Legendre on the smooth integrand there.
  if (1.0 - p0 < 1e-2 || a < 1e-2) {
    return boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double x) { return g_integrand(4, eps, p0, x); }, 0.0, 1.0);
  }
  const double c = p0 + eps - 1.0;
  return 2.0 * c * c * c *
         ((1.0 - 6.0 * b - a * b * b) / (2.0 * a * b * b) +
          3.0 * (a + 1.0) / (a * (b - a)) *
              (1.0 - a / (b - a) * std::log(b / a)));
}

BoundsReport bounds_report(int d, double eps) {
  if (d < 2) throw PreconditionViolation("bounds_report needs d >= 2");
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw PreconditionViolation("bounds_report needs eps in (0, 1/2]");
  }
  BoundsReport r;
  r.d = d;
  r.eps = eps;
  r.l = (d - 1) * std::log2(1.0 / eps);
  const double extra = std::log2(5.0 * d * std::log(static_cast<double>(d)));
  r.log2_iin_lower = 2.0 * r.l;
  r.log2_iin_upper = 2.0 * r.l + extra;
  r.log2_iex_lower = d >= 4 ? 2.0 * r.l : 2.0 * (d - 1) * std::log2(1.0 / (2.0 * eps));
  r.n_det_lower = r.log2_iex_lower;
  r.n_det_upper = r.log2_iin_upper;
  r.n_prob_lower = r.l - std::log2(static_cast<double>(d));
  r.n_prob_upper = r.l + extra;
  r.ratio_lower = r.n_det_upper > 0.0 ? r.n_prob_lower / r.n_det_upper : 0.0;
  r.ratio_upper = r.n_det_lower > 0.0 ? r.n_prob_upper / r.n_det_lower
                                      : std::numeric_limits<double>::infinity();
  r.ratio_aligned_lower = r.n_det_lower > 0.0 ? r.n_prob_lower / r.n_det_lower : 0.0;
  r.ratio_aligned_upper = r.n_det_upper > 0.0 ? r.n_prob_upper / r.n_det_upper : 0.0;
  r.ratio_midpoint = 0.5 * (r.n_prob_lower + r.n_prob_upper) /
                     (0.5 * (r.n_det_lower + r.n_det_upper));
  return r;
}

}  // namespace probsynth
