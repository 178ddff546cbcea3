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
#include <ostream>
#include <string>
#include <vector>

#include "probsynth/serialize.hpp"

namespace probsynth::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class Format { kJson, kCsv };

struct OutputFile {
  std::string name;  // file name inside --out
  std::string body;
};

struct CommandResult {
  std::string subcommand;
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<OutputFile> files;
};

CommandResult cmd_fig1(double tol);

CommandResult cmd_library(int max_t_count, int max_word_length,
                          const std::string& library_path);

CommandResult cmd_synth(double t, double eps, double delta,
                        const std::string& library_path, std::uint64_t seed,
                        const std::string& group, double tol, Format format);

CommandResult cmd_tcount(const std::string& library_path,
                         const std::vector<double>& targets,
                         const std::vector<double>& errors, double tol,
                         Format format);

struct CoveringArgs {
  std::string kind;  // meridian | meridian-ball | greedy
  double eps = 0.1;
  double t = 0.0;
  std::string family = "full-sphere";  // for greedy: full-sphere | meridian
  int d = 2;
  std::int64_t verify_samples = 100000;
  std::optional<std::uint64_t> seed;
};
CommandResult cmd_covering(const CoveringArgs& args);

CommandResult cmd_volume(int d, double eps, std::optional<double> p0,
                         std::int64_t n_samples, std::uint64_t seed);

CommandResult cmd_bounds(int d, double eps);

struct MeasuresArgs {
  std::string kind;  // werner | isotropic | coherence
  int d = 2;
  std::vector<double> q;
  int grid = 101;
  std::vector<double> alpha;  // Schmidt magnitudes, normalized on use
  std::optional<double> product_eps;
  std::optional<std::uint64_t> seed;
  double tol = 1e-7;
  Format format = Format::kJson;
};
CommandResult cmd_measures(const MeasuresArgs& args);

/// Writes every file plus manifest.json into out_dir, or prints the files to
/// `out` when out_dir is empty.
void emit(const CommandResult& result, const std::string& out_dir,
          std::ostream& out);

Json manifest(const CommandResult& result, const std::string& out_dir);

}  // namespace probsynth::cli
