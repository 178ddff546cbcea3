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

// Command-line driver. Every subcommand writes its outputs to --out (plus a
// manifest.json) or, without --out, prints them to stdout.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "probsynth/errors.hpp"

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitSolver = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace probsynth;
  using namespace probsynth::cli;

  CLI::App app{"probsynth: probabilistic state synthesis experiments"};
  app.require_subcommand(1);

  std::string out_dir;
  double tol = 1e-7;
  std::string format_name = "json";
  std::optional<std::uint64_t> seed;
  app.add_option("--out", out_dir, "Output directory (stdout if omitted)");
  app.add_option("--tol", tol, "Solver gap tolerance")->capture_default_str();
  app.add_option("--format", format_name, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "RNG seed (required by stochastic commands)");

  auto* fig1 = app.add_subcommand("fig1", "Octahedron example: deterministic vs mixed error");

  auto* library = app.add_subcommand("library", "Enumerate a Clifford+T state library");
  int lib_max_t = 10;
  int lib_max_len = 64;
  std::string lib_path;
  library->add_option("--max-t", lib_max_t)->capture_default_str();
  library->add_option("--max-len", lib_max_len)->capture_default_str();
  library->add_option("--library", lib_path, "JSONL file to write")->required();

  auto* synth = app.add_subcommand("synth", "Probabilistic synthesis of a meridian target");
  double synth_t = 1.0;
  double synth_eps = 0.1;
  double synth_delta = 1e-6;
  std::string synth_lib;
  std::string synth_group = "meridian";
  synth->add_option("--t", synth_t, "Target angle: cos t|0> + sin t|1>")->capture_default_str();
  synth->add_option("--eps", synth_eps, "Deterministic error parameter")->capture_default_str();
  synth->add_option("--delta", synth_delta)->capture_default_str();
  synth->add_option("--library", synth_lib)->required();
  synth->add_option("--group", synth_group)
      ->check(CLI::IsMember({"meridian", "trivial"}))
      ->capture_default_str();

  auto* tcount = app.add_subcommand("tcount", "T-count vs error sweep");
  std::string tc_lib;
  std::vector<double> tc_targets{1.0};
  std::vector<double> tc_errors{0.07, 0.06, 0.05, 0.04, 0.03, 0.025, 0.02, 0.015, 0.01, 0.008};
  tcount->add_option("--library", tc_lib)->required();
  tcount->add_option("--targets", tc_targets, "Meridian angles")->delimiter(',');
  tcount->add_option("--errors", tc_errors, "Target errors")->delimiter(',');

  auto* covering = app.add_subcommand("covering", "Coverings and their verification");
  CoveringArgs cov;
  covering->add_option("--kind", cov.kind)
      ->required()
      ->check(CLI::IsMember({"meridian", "meridian-ball", "greedy", "product"}));
  covering->add_option("--eps", cov.eps)->capture_default_str();
  covering->add_option("--t", cov.t, "Ball center angle")->capture_default_str();
  covering->add_option("--family", cov.family)
      ->check(CLI::IsMember({"full-sphere", "meridian"}))
      ->capture_default_str();
  covering->add_option("--d", cov.d)->capture_default_str();
  covering->add_option("--verify-samples", cov.verify_samples)->capture_default_str();

  auto* volume = app.add_subcommand("volume", "Monte Carlo ball volume");
  int vol_d = 2;
  double vol_eps = 0.5;
  std::optional<double> vol_p0;
  double vol_n = 1e6;
  volume->add_option("--d", vol_d)->capture_default_str();
  volume->add_option("--eps", vol_eps)->capture_default_str();
  volume->add_option("--p0", vol_p0, "Mixed center diag(p0, 1 - p0, 0, ...)");
  volume->add_option("--n", vol_n, "Sample count")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Counting bounds on library sizes");
  int b_d = 2;
  double b_eps = 0.25;
  bounds->add_option("--d", b_d)->capture_default_str();
  bounds->add_option("--eps", b_eps)->capture_default_str();

  auto* measures = app.add_subcommand("measures", "Entanglement and coherence measures");
  MeasuresArgs meas;
  meas.q = {1.0};
  measures->add_option("--kind", meas.kind)
      ->required()
      ->check(CLI::IsMember({"werner", "isotropic", "coherence"}));
  measures->add_option("--d", meas.d)->capture_default_str();
  measures->add_option("--q", meas.q)->delimiter(',');
  measures->add_option("--grid", meas.grid)->capture_default_str();
  measures->add_option("--alpha", meas.alpha, "Schmidt coefficients")->delimiter(',');
  measures->add_option("--product-eps", meas.product_eps,
                       "Also bound from above with a product covering of this radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }

  const Format format = format_name == "csv" ? Format::kCsv : Format::kJson;
  auto need_seed = [&]() {
    if (!seed) throw PreconditionViolation("--seed is required for this command");
    return *seed;
  };
  auto json_only = [&]() {
    if (format != Format::kJson) throw PreconditionViolation("this command only writes JSON");
  };

  try {
    CommandResult result;
    if (*fig1) {
      json_only();
      result = cmd_fig1(tol);
    } else if (*library) {
      json_only();
      result = cmd_library(lib_max_t, lib_max_len, lib_path);
    } else if (*synth) {
      result = cmd_synth(synth_t, synth_eps, synth_delta, synth_lib, need_seed(), synth_group,
                         tol, format);
    } else if (*tcount) {
      result = cmd_tcount(tc_lib, tc_targets, tc_errors, tol, format);
    } else if (*covering) {
      json_only();
      cov.seed = seed;
      result = cmd_covering(cov);
    } else if (*volume) {
      json_only();
      result = cmd_volume(vol_d, vol_eps, vol_p0, static_cast<std::int64_t>(vol_n), need_seed());
    } else if (*bounds) {
      json_only();
      result = cmd_bounds(b_d, b_eps);
    } else if (*measures) {
      meas.seed = seed;
      meas.tol = tol;
      meas.format = format;
      result = cmd_measures(meas);
    }
    emit(result, out_dir, std::cout);
  } catch (const SolverNonConvergence& e) {
    std::cerr << "solver did not converge: " << e.what() << " (lower " << e.lower()
              << ", upper " << e.upper() << ")\n";
    return kExitSolver;
  } catch (const InsufficientLibrary& e) {
    std::cerr << "insufficient library: requested " << e.requested() << ", best achievable "
              << e.best_error() << "\n";
    return kExitPrecondition;
  } catch (const PreconditionViolation& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
