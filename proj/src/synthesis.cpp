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

#include "probsynth/synthesis.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "probsynth/approx_solver.hpp"
#include "probsynth/covering.hpp"
#include "probsynth/errors.hpp"
#include "probsynth/serialize.hpp"
#include "probsynth/symmetry.hpp"

namespace probsynth {

namespace {

constexpr double kDedupTol = 1e-9;
constexpr double kBlochCell = 1e-7;
constexpr std::string_view kCliffordLetters = "HSXYZ";

bool in_alphabet(char c) { return kGateAlphabet.find(c) != std::string_view::npos; }

// Projective dedup through a hash grid on Bloch vectors. Trace distance is
// half the Bloch distance, so a 1e-9 state tolerance is 2e-9 in the grid.
class StateIndex {
 public:
  using Key = std::array<long long, 3>;

  // Index of a stored state within tolerance, or -1.
  long find(const Eigen::Vector3d& v) const {
    const Key k = key(v);
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dz = -1; dz <= 1; ++dz) {
          const auto it = cells_.find({k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == cells_.end()) continue;
          for (long idx : it->second) {
            if ((vectors_[static_cast<std::size_t>(idx)] - v).norm() <= 2.0 * kDedupTol) {
              return idx;
            }
          }
        }
      }
    }
    return -1;
  }

  long insert(const Eigen::Vector3d& v) {
    const long idx = static_cast<long>(vectors_.size());
    vectors_.push_back(v);
    cells_[key(v)].push_back(idx);
    return idx;
  }

 private:
  static Key key(const Eigen::Vector3d& v) {
    return {std::llround(v.x() / kBlochCell), std::llround(v.y() / kBlochCell),
            std::llround(v.z() / kBlochCell)};
  }
  std::map<Key, std::vector<long>> cells_;
  std::vector<Eigen::Vector3d> vectors_;
};

double pure_distance(const PureState& a, const PureState& b) {
  return trace_distance(a, b);
}

}  // namespace

CMatrix gate_matrix(char gate) {
  const Complex i(0.0, 1.0);
  CMatrix g(2, 2);
  switch (gate) {
    case 'H': {
      const double h = 1.0 / std::numbers::sqrt2;
      g << h, h, h, -h;
      break;
    }
    case 'T':
      g << 1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0);
      break;
    case 'S':
      g << 1.0, 0.0, 0.0, i;
      break;
    case 'X':
      g << 0.0, 1.0, 1.0, 0.0;
      break;
    case 'Y':
      g << 0.0, -i, i, 0.0;
      break;
    case 'Z':
      g << 1.0, 0.0, 0.0, -1.0;
      break;
    default:
      throw PreconditionViolation(std::string("unknown gate '") + gate + "'");
  }
  return g;
}

Circuit Circuit::parse(std::string_view word) {
  Circuit c;
  for (char ch : word) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (!in_alphabet(ch)) {
      throw PreconditionViolation(std::string("unknown gate '") + ch + "'");
    }
    c.word_.push_back(ch);
    if (ch == 'T') ++c.t_count_;
  }
  return c;
}

CMatrix Circuit::unitary() const {
  CMatrix u = identity(2);
  for (char ch : word_) u = u * gate_matrix(ch);
  return u;
}

PureState Circuit::realized_state() const {
  CVector v = CVector::Zero(2);
  v[0] = 1.0;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) v = gate_matrix(*it) * v;
  return PureState::from_amplitudes(v);
}

Circuit Circuit::prepend(char gate) const {
  if (!in_alphabet(gate)) {
    throw PreconditionViolation(std::string("unknown gate '") + gate + "'");
  }
  Circuit c = *this;
  c.word_.insert(c.word_.begin(), gate);
  if (gate == 'T') ++c.t_count_;
  return c;
}

Circuit conjugate_circuit(const Circuit& circuit) {
  std::string out;
  for (char ch : circuit.word()) {
    switch (ch) {
      case 'T':
        out += "ZST";
        break;
      case 'S':
        out += "ZS";
        break;
      case 'Y':
        out += "ZYZ";
        break;
      default:
        out += ch;
    }
  }
  return Circuit::parse(out);
}

SynthesisLibrary::SynthesisLibrary(std::vector<LibraryEntry> entries,
                                   int max_t_count, bool partial)
    : entries_(std::move(entries)), max_t_count_(max_t_count), partial_(partial) {
  for (const auto& e : entries_) {
    if (e.state.dim() != 2) throw DimensionMismatch(e.state.dim(), 2);
  }
}

double SynthesisLibrary::max_realization_error() const {
  double worst = 0.0;
  for (const auto& e : entries_) {
    worst = std::max(worst, pure_distance(e.state, e.circuit.realized_state()));
  }
  return worst;
}

void SynthesisLibrary::save_jsonl(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw PreconditionViolation("cannot write library file " + path);
  for (const auto& e : entries_) {
    Json state = to_json(e.state);
    state.erase("dim");
    const Json line = {{"state", state},
                       {"word", e.circuit.word()},
                       {"t_count", e.circuit.t_count()}};
    out << line.dump() << '\n';
  }
}

SynthesisLibrary SynthesisLibrary::load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionViolation("cannot read library file " + path);
  std::vector<LibraryEntry> entries;
  int max_t = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      Circuit c = Circuit::parse(j.at("word").get<std::string>());
      if (c.t_count() != j.at("t_count").get<int>()) {
        throw PreconditionViolation("library t_count disagrees with word " + c.word());
      }
      PureState s = state_from_json(j.at("state"));
      if (pure_distance(s, c.realized_state()) > 1e-9) {
        throw PreconditionViolation("library word does not realize its state: " +
                                    c.word());
      }
      max_t = std::max(max_t, c.t_count());
      entries.push_back({std::move(s), std::move(c)});
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionViolation(std::string("malformed library line: ") + e.what());
    }
  }
  return SynthesisLibrary(std::move(entries), max_t, false);
}

SynthesisLibrary enumerate_library(int max_t_count, int max_word_length) {
  if (max_t_count < 0 || max_word_length < 0) {
    throw PreconditionViolation("library budgets must be non-negative");
  }
  std::vector<LibraryEntry> entries;
  StateIndex index;
  bool partial = false;

  auto try_add = [&](const Circuit& c) -> bool {
    PureState s = c.realized_state();
    const Eigen::Vector3d v = bloch_vector(s);
    if (index.find(v) >= 0) return false;
    if (static_cast<int>(c.length()) > max_word_length) {
      partial = true;
      return false;
    }
    index.insert(v);
    entries.push_back({std::move(s), c});
    return true;
  };

  std::vector<std::size_t> layer;  // entry indices with the current T-count
  std::deque<std::size_t> queue;
  auto close_layer = [&] {
    while (!queue.empty()) {
      const std::size_t idx = queue.front();
      queue.pop_front();
      for (char g : kCliffordLetters) {
        if (try_add(entries[idx].circuit.prepend(g))) {
          layer.push_back(entries.size() - 1);
          queue.push_back(entries.size() - 1);
        }
      }
    }
  };

  try_add(Circuit{});
  layer.push_back(0);
  queue.push_back(0);
  close_layer();

  for (int t = 1; t <= max_t_count; ++t) {
    const std::vector<std::size_t> previous = std::move(layer);
    layer.clear();
    for (std::size_t idx : previous) {
      if (try_add(entries[idx].circuit.prepend('T'))) {
        layer.push_back(entries.size() - 1);
        queue.push_back(entries.size() - 1);
      }
    }
    close_layer();
  }
  return SynthesisLibrary(std::move(entries), max_t_count, partial);
}

DeterministicResult deterministic_synthesize(const SynthesisLibrary& library,
                                             const PureState& phi, double eps,
                                             SelectionRule rule) {
  if (phi.dim() != 2) throw DimensionMismatch(phi.dim(), 2);
  if (library.size() == 0) throw PreconditionViolation("library is empty");
  double best_any = std::numeric_limits<double>::infinity();
  const LibraryEntry* chosen = nullptr;
  double chosen_dist = std::numeric_limits<double>::infinity();
  for (const auto& e : library.entries()) {
    const double dist = pure_distance(phi, e.state);
    best_any = std::min(best_any, dist);
    if (dist > eps) continue;
    bool better = false;
    if (chosen == nullptr) {
      better = true;
    } else if (rule == SelectionRule::kNearest) {
      better = dist < chosen_dist;
    } else {
      better = e.circuit.t_count() < chosen->circuit.t_count() ||
               (e.circuit.t_count() == chosen->circuit.t_count() && dist < chosen_dist);
    }
    if (better) {
      chosen = &e;
      chosen_dist = dist;
    }
  }
  if (chosen == nullptr) throw InsufficientLibrary(eps, best_any);
  return {chosen->circuit, chosen->state, chosen_dist};
}

void SynthesisConfig::validate() const {
  if (!(c > 0.0) || !(c_prime > 0.0) || c + c_prime > 1.0 + 1e-12) {
    throw PreconditionViolation("need c > 0, c' > 0 and c + c' <= 1");
  }
  if (!(delta > 0.0)) throw PreconditionViolation("delta must be positive");
}

int Ensemble::max_t_count() const {
  int m = 0;
  for (const auto& item : items) m = std::max(m, item.circuit.t_count());
  return m;
}

Ensemble probabilistic_synthesize(const SynthesisLibrary& library,
                                  const PureState& phi, double eps,
                                  const SynthesisConfig& config,
                                  double solver_tol) {
  config.validate();
  if (phi.dim() != 2) throw DimensionMismatch(phi.dim(), 2);
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionViolation("eps must lie in (0, 1)");
  const SymmetryGroup group = config.group == SymmetryFamily::kMeridian
                                  ? SymmetryGroup::conjugation_group(2)
                                  : SymmetryGroup::trivial(2);
  if (!is_invariant(DensityMatrix(phi), group, 1e-9)) {
    throw PreconditionViolation("target is not in the symmetric family");
  }

  Ensemble out;
  out.oracle_error = config.c_prime * eps;

  // Exact hit: a point mass.
  const DeterministicResult direct =
      deterministic_synthesize(library, phi, 1.0, SelectionRule::kNearest);
  if (direct.error <= 1e-12) {
    out.items.push_back({1.0, direct.circuit, direct.state});
    out.achieved_error = direct.error;
    out.solver_value = direct.error;
    out.geometric_error = direct.error;
    out.candidate_count = 1;
    return out;
  }

  // Step 2: a (c eps)-covering of the 2 eps ball about phi.
  CoveringReport cover;
  if (config.group == SymmetryFamily::kMeridian) {
    cover = meridian_arc_covering(meridian_angle(phi), 2.0 * eps, config.c * eps);
  } else {
    GreedyOptions opts;
    opts.verify_samples = 20000;
    opts.patience = 5000;
    cover = greedy_net(SphereBall{phi, 2.0 * eps}, config.c * eps, config.seed, opts);
  }
  if (!cover.verified) {
    throw PreconditionViolation("step-2 covering failed verification");
  }

  // Step 3: oracle calls, plus theta-images for the meridian group.
  std::vector<Circuit> circuits;
  std::vector<PureState> states;
  auto add_candidate = [&](const Circuit& c, const PureState& s) {
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (pure_distance(states[k], s) <= kDedupTol) {
        if (c.t_count() < circuits[k].t_count()) circuits[k] = c;
        return;
      }
    }
    circuits.push_back(c);
    states.push_back(s);
  };
  for (const auto& point : cover.points) {
    const DeterministicResult r =
        deterministic_synthesize(library, point, out.oracle_error, config.oracle_rule);
    add_candidate(r.circuit, r.state);
    if (config.group == SymmetryFamily::kMeridian) {
      const Circuit conj = conjugate_circuit(r.circuit);
      add_candidate(conj, conj.realized_state());
    }
  }

  // Step 4: restrict to the 2 eps ball and solve.
  ConvexApproxProblem full{phi, {}, std::nullopt};
  for (const auto& s : states) full.candidates.emplace_back(s);
  RestrictedProblem restricted = restrict_support(full, eps);
  restricted.problem.symmetry = group;
  const double tol = std::max(1e-9, std::min(solver_tol, config.delta));
  const ConvexApproxSolution sol = solve(restricted.problem, tol);
  out.solver_value = sol.value;
  out.certified_gap = sol.gap;
  out.candidate_count = restricted.indices.size();
  out.geometric_error = bloch_hull_distance(restricted.problem.target,
                                            restricted.problem.candidates);

  // Step 5: drop weights below the solver resolution (interior-point
  // residue) and renormalize; the error is recomputed from what is kept.
  double kept = 0.0;
  for (std::size_t k = 0; k < restricted.indices.size(); ++k) {
    const double p = sol.p[static_cast<Eigen::Index>(k)];
    if (p < tol) continue;
    const std::size_t idx = restricted.indices[k];
    out.items.push_back({p, circuits[idx], states[idx]});
    kept += p;
  }
  CMatrix mix = CMatrix::Zero(2, 2);
  for (auto& item : out.items) {
    item.probability /= kept;
    mix += item.probability * item.state.projector();
  }
  out.achieved_error = half_trace_norm(phi.projector() - mix);
  return out;
}

const EnsembleItem& sample_circuit(const Ensemble& ensemble, Rng& rng) {
  if (ensemble.items.empty()) throw PreconditionViolation("empty ensemble");
  std::vector<double> w;
  for (const auto& item : ensemble.items) w.push_back(item.probability);
  std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
  return ensemble.items[dist(rng)];
}

std::vector<TCountRow> tcount_experiment(const std::vector<double>& targets,
                                         const std::vector<double>& target_errors,
                                         const SynthesisLibrary& library,
                                         const SynthesisConfig& config,
                                         double solver_tol) {
  config.validate();
  std::vector<TCountRow> rows;
  for (double t : targets) {
    const PureState phi = meridian_state(t);
    for (double e : target_errors) {
      if (!(e > 0.0 && e < 1.0)) {
        throw PreconditionViolation("target errors must lie in (0, 1)");
      }
      TCountRow row{t, e, {}, {}, {}, {}, {}, config.c_prime * std::sqrt(e)};
      try {
        const DeterministicResult det =
            deterministic_synthesize(library, phi, e, SelectionRule::kMinTCount);
        row.det_tcount = det.circuit.t_count();
        row.det_error = det.error;
      } catch (const InsufficientLibrary&) {
      }
      try {
        const Ensemble ens =
            probabilistic_synthesize(library, phi, std::sqrt(e), config, solver_tol);
        row.prob_max_tcount = ens.max_t_count();
        row.prob_error = ens.achieved_error;
        row.support_size = ens.items.size();
      } catch (const InsufficientLibrary&) {
      }
      rows.push_back(row);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const TCountRow& a, const TCountRow& b) {
    return std::tie(a.target_t, a.target_error) < std::tie(b.target_t, b.target_error);
  });
  return rows;
}

std::string tcount_csv(const std::vector<TCountRow>& rows) {
  std::ostringstream out;
  out << kTCountCsvHeader << '\n';
  auto field = [&](const auto& opt) {
    if (!opt) return std::string("NA");
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(*opt)>>) {
      return format_number(*opt);
    } else {
      return std::to_string(*opt);
    }
  };
  for (const auto& r : rows) {
    out << format_number(r.target_t) << ',' << format_number(r.target_error) << ','
        << field(r.det_tcount) << ',' << field(r.det_error) << ','
        << field(r.prob_max_tcount) << ',' << field(r.prob_error) << ','
        << field(r.support_size) << '\n';
  }
  return out.str();
}

}  // namespace probsynth
