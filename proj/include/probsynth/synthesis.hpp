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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probsynth/linalg.hpp"
#include "probsynth/random.hpp"
#include "probsynth/states.hpp"

namespace probsynth {

/// H = [[1,1],[1,-1]]/sqrt2, T = diag(1, e^{i pi/4}), S = diag(1, i) and the
/// Paulis. Throws PreconditionViolation for any other symbol.
CMatrix gate_matrix(char gate);

inline constexpr std::string_view kGateAlphabet = "HTSXYZ";

/// A word w1 w2 ... wn over the Clifford+T alphabet. It realizes the state
/// w1 w2 ... wn |0>, i.e. the rightmost gate acts first.
class Circuit {
 public:
  Circuit() = default;
  /// Whitespace is ignored; other symbols outside the alphabet throw.
  static Circuit parse(std::string_view word);

  const std::string& word() const { return word_; }
  int t_count() const { return t_count_; }
  std::size_t length() const { return word_.size(); }

  CMatrix unitary() const;
  PureState realized_state() const;

  /// Circuit for g followed by this word: "g" + word.
  Circuit prepend(char gate) const;

  bool operator==(const Circuit&) const = default;

 private:
  std::string word_;
  int t_count_ = 0;
};

/// Rewrites T -> ZST, S -> ZS, Y -> ZYZ (exact identities for the entrywise
/// conjugates) so the result realizes the conjugate state with the same
/// T-count.
Circuit conjugate_circuit(const Circuit& circuit);

struct LibraryEntry {
  PureState state;
  Circuit circuit;
};

/// States reachable by enumerated words, each with the smallest T-count
/// among the words that were enumerated (not a proof of optimality).
class SynthesisLibrary {
 public:
  SynthesisLibrary() = default;
  SynthesisLibrary(std::vector<LibraryEntry> entries, int max_t_count,
                   bool partial);

  const std::vector<LibraryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  int max_t_count() const { return max_t_count_; }
  bool partial() const { return partial_; }
  std::string_view gate_alphabet() const { return kGateAlphabet; }

  /// Largest trace distance between an entry and the state its word realizes.
  double max_realization_error() const;

  /// One JSON object per line: {"state":{"re":[],"im":[]},"word":"","t_count":n}.
  void save_jsonl(const std::string& path) const;
  static SynthesisLibrary load_jsonl(const std::string& path);

 private:
  std::vector<LibraryEntry> entries_;
  int max_t_count_ = 0;
  bool partial_ = false;
};

/// Layered enumeration: layer 0 is the Clifford orbit of |0>, layer k+1 the
/// Clifford orbit of T applied to layer k. States are deduplicated
/// projectively (tolerance 1e-9); words longer than max_word_length are
/// dropped and the library is flagged partial.
SynthesisLibrary enumerate_library(int max_t_count, int max_word_length);

enum class SelectionRule {
  kNearest,    // the entry closest to the target
  kMinTCount,  // smallest T-count within eps, nearest among ties
};

struct DeterministicResult {
  Circuit circuit;
  PureState state;
  double error;
};

/// Throws InsufficientLibrary if no entry lies within eps of phi.
DeterministicResult deterministic_synthesize(
    const SynthesisLibrary& library, const PureState& phi, double eps,
    SelectionRule rule = SelectionRule::kNearest);

enum class SymmetryFamily {
  kMeridian,  // G = {1, theta}
  kTrivial,
};

struct SynthesisConfig {
  double c = 0.7;
  double c_prime = 0.3;
  double delta = 1e-6;
  SymmetryFamily group = SymmetryFamily::kMeridian;
  SelectionRule oracle_rule = SelectionRule::kMinTCount;
  std::uint64_t seed = 0;  // used by the trivial-group covering

  void validate() const;
};

struct EnsembleItem {
  double probability;
  Circuit circuit;
  PureState state;
};

struct Ensemble {
  std::vector<EnsembleItem> items;
  double achieved_error = 0.0;  // T(phi - sum p state), recomputed from items
  double certified_gap = 0.0;
  double solver_value = 0.0;
  /// Half the Bloch distance from phi to the hull of the candidates that
  /// survived support restriction.
  double geometric_error = 0.0;
  std::size_t candidate_count = 0;
  double oracle_error = 0.0;  // c' eps, the accuracy requested from the oracle

  int max_t_count() const;
};

/// Deterministic-to-probabilistic conversion. `eps` is the deterministic
/// error parameter; the achieved error is at most eps^2 + delta.
Ensemble probabilistic_synthesize(const SynthesisLibrary& library,
                                  const PureState& phi, double eps,
                                  const SynthesisConfig& config,
                                  double solver_tol = 1e-9);

/// Draws one item according to the ensemble probabilities.
const EnsembleItem& sample_circuit(const Ensemble& ensemble, Rng& rng);

struct TCountRow {
  double target_t;
  double target_error;
  std::optional<int> det_tcount;
  std::optional<double> det_error;
  std::optional<int> prob_max_tcount;
  std::optional<double> prob_error;
  std::optional<std::size_t> support_size;
  /// c' sqrt(target_error): the oracle accuracy the probabilistic leg used.
  double prob_oracle_error;
};

/// For each (t, e): the deterministic leg is the min-T-count entry within e;
/// the probabilistic leg runs probabilistic_synthesize at deterministic
/// parameter sqrt(e) (so its bound is e + delta). Failures leave fields empty.
std::vector<TCountRow> tcount_experiment(const std::vector<double>& targets,
                                         const std::vector<double>& target_errors,
                                         const SynthesisLibrary& library,
                                         const SynthesisConfig& config,
                                         double solver_tol = 1e-9);

inline constexpr std::string_view kTCountCsvHeader =
    "target_t,target_error,det_tcount,det_error,prob_max_tcount,prob_error,"
    "support_size";

std::string tcount_csv(const std::vector<TCountRow>& rows);

}  // namespace probsynth
