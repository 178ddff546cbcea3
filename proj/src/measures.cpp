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

#include "probsynth/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "probsynth/errors.hpp"
#include "probsynth/random.hpp"

namespace probsynth {

namespace {

void require_werner_q(int d, double q) {
  if (d < 2) throw PreconditionViolation("d must be >= 2");
  if (!(q >= 0.0 && q <= 1.0)) throw PreconditionViolation("q must lie in [0, 1]");
}

void require_isotropic_q(int d, double q) {
  if (d < 2) throw PreconditionViolation("d must be >= 2");
  const double dd = d;
  if (!(q >= -1.0 / (dd * dd - 1.0) - 1e-12 && q <= 1.0 + 1e-12)) {
    throw PreconditionViolation("q must lie in [-1/(d^2-1), 1]");
  }
}

template <typename Objective>
WitnessScan scan(int grid_n, Objective objective) {
  if (grid_n < 2) throw PreconditionViolation("grid_n must be >= 2");
  WitnessScan best{objective(0.0, 1.0), 0.0, 1.0};
  auto consider = [&](double a, double b) {
    const double v = objective(a, b);
    if (v > best.value) best = {v, a, b};
  };
  consider(0.0, 0.0);
  for (int i = 0; i < grid_n; ++i) {
    const double a = static_cast<double>(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) consider(a, static_cast<double>(j) / (grid_n - 1));
  }
  return best;
}

RVector project_simplex(const RVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double candidate = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0);
}

// Best p with max_i p_i <= m: p_i = min(m, lambda a_i^2), leftover mass on
// coordinates with a_i = 0.
RVector water_fill(const RVector& a, double m) {
  const auto d = a.size();
  RVector p = RVector::Zero(d);
  auto mass = [&](double lambda) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) s += std::min(m, lambda * a[i] * a[i]);
    return s;
  };
  int saturated_cap = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (a[i] > 0.0) ++saturated_cap;
  }
  if (saturated_cap * m <= 1.0) {
    for (Eigen::Index i = 0; i < d; ++i) p[i] = a[i] > 0.0 ? m : 0.0;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    while (mass(hi) < 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mass(mid) < 1.0 ? lo : hi) = mid;
    }
    for (Eigen::Index i = 0; i < d; ++i) p[i] = std::min(m, hi * a[i] * a[i]);
  }
  double left = 1.0 - p.sum();
  for (Eigen::Index i = 0; i < d && left > 0.0; ++i) {
    if (a[i] == 0.0) {
      const double add = std::min(m, left);
      p[i] += add;
      left -= add;
    }
  }
  return p / p.sum();
}

}  // namespace

double werner_distance(int d, double q) {
  require_werner_q(d, q);
  return std::max(0.0, q - 0.5);
}

double isotropic_distance(int d, double q) {
  require_isotropic_q(d, q);
  const double dd = d;
  return std::max(0.0, (dd * dd - 1.0) / (dd * dd) * (q - 1.0 / (dd + 1.0)));
}

double werner_witness_objective(int d, double q, double a, double b) {
  require_werner_q(d, q);
  const auto [sym, anti] = sym_projectors(d);
  const double expectation = trace_product(a * sym + b * anti, werner(d, q).matrix());
  // tr(Pi_sym phi(x)psi) = (1 + F)/2 and tr(Pi_anti phi(x)psi) = (1 - F)/2
  // with F in [0, 1].
  const double product_max = 0.5 * (a + b) + std::max(0.0, 0.5 * (a - b));
  return expectation - product_max;
}

double isotropic_witness_objective(int d, double q, double a, double b) {
  require_isotropic_q(d, q);
  const CMatrix phi_plus = max_entangled(d).projector();
  const CMatrix m = a * identity(d * d) + (b - a) * phi_plus;
  const double expectation = trace_product(m, isotropic(d, q).matrix());
  // <Phi+|phi(x)psi>|^2 ranges over [0, 1/d].
  const double product_max = a + std::max(0.0, (b - a) / d);
  return expectation - product_max;
}

WitnessScan werner_witness_scan(int d, double q, int grid_n) {
  require_werner_q(d, q);
  const auto [sym, anti] = sym_projectors(d);
  const CMatrix rho = werner(d, q).matrix();
  const double e_sym = trace_product(sym, rho);
  const double e_anti = trace_product(anti, rho);
  return scan(grid_n, [&](double a, double b) {
    return a * e_sym + b * e_anti - 0.5 * (a + b) - std::max(0.0, 0.5 * (a - b));
  });
}

WitnessScan isotropic_witness_scan(int d, double q, int grid_n) {
  require_isotropic_q(d, q);
  const double e_phi = trace_product(max_entangled(d).projector(), isotropic(d, q).matrix());
  return scan(grid_n, [&](double a, double b) {
    return a + (b - a) * e_phi - a - std::max(0.0, (b - a) / d);
  });
}

void require_product(const PureState& state, int d) {
  if (state.dim() != d * d) throw DimensionMismatch(state.dim(), d * d);
  CMatrix reshaped(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) reshaped(i, j) = state.amplitudes()[i * d + j];
  }
  const RVector sv = Eigen::JacobiSVD<CMatrix>(reshaped).singularValues();
  if (sv.size() > 1 && sv[1] > 1e-8) {
    throw PreconditionViolation("candidate is not a product state");
  }
}

ConvexApproxSolution separable_upper(const DensityMatrix& rho,
                                     const std::vector<PureState>& product_covering,
                                     double solver_tol) {
  if (product_covering.empty()) {
    throw PreconditionViolation("product covering must be nonempty");
  }
  const int d = static_cast<int>(std::lround(std::sqrt(rho.dim())));
  if (d * d != rho.dim()) {
    throw PreconditionViolation("separable_upper needs a bipartite d x d state");
  }
  ConvexApproxProblem problem{rho, {}, std::nullopt};
  problem.candidates.reserve(product_covering.size());
  for (const auto& s : product_covering) {
    require_product(s, d);
    problem.candidates.emplace_back(s);
  }
  return solve(problem, solver_tol);
}

SchmidtVector::SchmidtVector(CVector alpha) : alpha_(std::move(alpha)) {
  if (alpha_.size() < 2) throw PreconditionViolation("Schmidt vector needs d >= 2");
  if (std::abs(alpha_.norm() - 1.0) > 1e-12) {
    throw PreconditionViolation("Schmidt vector must have unit norm");
  }
}

SchmidtVector SchmidtVector::normalized(const CVector& alpha) {
  const double n = alpha.norm();
  if (!(n > 0.0)) throw PreconditionViolation("Schmidt vector must be nonzero");
  return SchmidtVector(alpha / n);
}

ConvexApproxSolution coherence_distance(const SchmidtVector& alpha,
                                        double solver_tol) {
  ConvexApproxProblem problem{PureState::from_amplitudes(alpha.alpha()), {},
                              std::nullopt};
  for (int i = 0; i < alpha.d(); ++i) {
    problem.candidates.emplace_back(PureState::basis(alpha.d(), i));
  }
  return solve(problem, solver_tol);
}

double simplex_objective(const SchmidtVector& alpha, const RVector& p) {
  if (p.size() != alpha.d()) {
    throw DimensionMismatch(static_cast<int>(p.size()), alpha.d());
  }
  double w = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    w += std::sqrt(std::max(0.0, p[i])) * std::abs(alpha.alpha()[i]);
  }
  return w * w - p.maxCoeff();
}

SimplexResult simplex_formula(const SchmidtVector& alpha, int restarts,
                              std::uint64_t seed) {
  const int d = alpha.d();
  const RVector a = alpha.alpha().cwiseAbs();
  SimplexResult best{-std::numeric_limits<double>::infinity(), RVector(), 0.0};
  auto consider = [&](const RVector& p) {
    const double v = simplex_objective(alpha, p);
    if (v > best.value) {
      best.value = v;
      best.p = p;
    }
    return v;
  };

  // Projected-gradient ascent from the uniform point and random starts.
  Rng rng(seed);
  std::exponential_distribution<double> expo(1.0);
  double restart_lo = std::numeric_limits<double>::infinity();
  double restart_hi = -std::numeric_limits<double>::infinity();
  for (int r = 0; r <= restarts; ++r) {
    RVector p(d);
    if (r == 0) {
      p.setConstant(1.0 / d);
    } else {
      for (int i = 0; i < d; ++i) p[i] = expo(rng);
      p /= p.sum();
    }
    double run_best = simplex_objective(alpha, p);
    RVector run_p = p;
    for (int it = 0; it < 3000; ++it) {
      double w = 0.0;
      for (int i = 0; i < d; ++i) w += std::sqrt(std::max(p[i], 0.0)) * a[i];
      RVector g(d);
      for (int i = 0; i < d; ++i) g[i] = w * a[i] / std::sqrt(std::max(p[i], 1e-12));
      Eigen::Index top = 0;
      p.maxCoeff(&top);
      g[top] -= 1.0;
      p = project_simplex(p + (0.05 / std::sqrt(it + 1.0)) * g / std::max(1.0, g.norm()));
      const double v = simplex_objective(alpha, p);
      if (v > run_best) {
        run_best = v;
        run_p = p;
      }
    }
    consider(run_p);
    restart_lo = std::min(restart_lo, run_best);
    restart_hi = std::max(restart_hi, run_best);
  }
  best.restart_spread = restart_hi - restart_lo;

  if (d <= 3) {
    constexpr int kGrid = 400;
    for (int i = 0; i <= kGrid; ++i) {
      if (d == 2) {
        RVector p(2);
        p << static_cast<double>(i) / kGrid, 1.0 - static_cast<double>(i) / kGrid;
        consider(p);
        continue;
      }
      for (int j = 0; i + j <= kGrid; ++j) {
        RVector p(3);
        p << static_cast<double>(i) / kGrid, static_cast<double>(j) / kGrid,
            static_cast<double>(kGrid - i - j) / kGrid;
        consider(p);
      }
    }
  }

  // One-dimensional reduction over m = max_i p_i.
  auto value_at = [&](double m) { return simplex_objective(alpha, water_fill(a, m)); };
  const double lo = 1.0 / d;
  constexpr int kSteps = 4000;
  int best_k = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kSteps; ++k) {
    const double v = value_at(lo + (1.0 - lo) * k / kSteps);
    if (v > best_v) {
      best_v = v;
      best_k = k;
    }
  }
  double left = lo + (1.0 - lo) * std::max(0, best_k - 1) / kSteps;
  double right = lo + (1.0 - lo) * std::min(kSteps, best_k + 1) / kSteps;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    const double m1 = right - phi * (right - left);
    const double m2 = left + phi * (right - left);
    if (value_at(m1) < value_at(m2)) {
      left = m1;
    } else {
      right = m2;
    }
  }
  consider(water_fill(a, 0.5 * (left + right)));
  consider(water_fill(a, lo + (1.0 - lo) * best_k / kSteps));
  return best;
}

}  // namespace probsynth
