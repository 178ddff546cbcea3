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

#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "probsynth/approx_solver.hpp"
#include "probsynth/covering.hpp"
#include "probsynth/errors.hpp"
#include "probsynth/measures.hpp"
#include "probsynth/random.hpp"
#include "probsynth/synthesis.hpp"

namespace probsynth::cli {

namespace {

Json sandwich_json(const SandwichReport& r) {
  return {{"eps_phi", number(r.eps_phi)},
          {"value", number(r.value)},
          {"eps_g", number(r.eps_g)},
          {"lower_holds", r.lower_holds},
          {"upper_holds", r.upper_holds}};
}

Json number_list(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

std::string optional_cell(const std::optional<double>& x) {
  return x ? format_number(*x) : "NA";
}

// Eight octant directions (the face centers of the eigenstate octahedron)
// plus a Fibonacci lattice on the sphere.
std::vector<PureState> sphere_grid(int n) {
  std::vector<PureState> out;
  const double r = 1.0 / std::sqrt(3.0);
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) out.push_back(pure_from_bloch({sx * r, sy * r, sz * r}));
    }
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / n;
    const double rho = std::sqrt(1.0 - z * z);
    out.push_back(pure_from_bloch({rho * std::cos(golden * k), rho * std::sin(golden * k), z}));
  }
  return out;
}

std::vector<PureState> meridian_grid(int n) {
  std::vector<PureState> out;
  for (int k = 0; k < n; ++k) out.push_back(meridian_state(std::numbers::pi * k / n));
  return out;
}

}  // namespace

CommandResult cmd_fig1(double tol) {
  const auto pauli = pauli_eigenstates();
  const double r = 1.0 / std::sqrt(3.0);
  const auto a = sandwich_check(pure_from_bloch({r, r, r}), pauli, sphere_grid(4096),
                                std::max(tol, 1e-9));
  const auto b = sandwich_check(meridian_state(std::numbers::pi / 8.0), pauli,
                                meridian_grid(4096), std::max(tol, 1e-9));
  const double s3 = std::sqrt(3.0);
  Json report = {
      {"eps_a", number(a.eps_phi)},
      {"eps2_a", number(a.value)},
      {"eps_b", number(b.eps_phi)},
      {"eps2_b", number(b.value)},
      {"anchors",
       {{"eps_a", number(std::sqrt((s3 - 1.0) / (2.0 * s3)))},
        {"eps2_a", number((s3 - 1.0) / (2.0 * s3))},
        {"eps_b", number(std::sin(std::numbers::pi / 8.0))},
        {"eps2_b", number((1.0 - 1.0 / std::numbers::sqrt2) / 2.0)}}},
      {"sandwich_a", sandwich_json(a)},
      {"sandwich_b", sandwich_json(b)}};
  CommandResult result{"fig1", {{"tol", number(tol)}}, std::nullopt, {}};
  result.files.push_back({"fig1.json", dump(report)});
  return result;
}

CommandResult cmd_library(int max_t_count, int max_word_length,
                          const std::string& library_path) {
  const auto lib = enumerate_library(max_t_count, max_word_length);
  lib.save_jsonl(library_path);
  Json summary = {{"path", library_path},
                  {"size", lib.size()},
                  {"max_t_count", lib.max_t_count()},
                  {"partial", lib.partial()},
                  {"gate_alphabet", std::string(lib.gate_alphabet())},
                  {"max_realization_error", number(lib.max_realization_error())}};
  CommandResult result{"library",
                       {{"max_t_count", max_t_count},
                        {"max_word_length", max_word_length},
                        {"library", library_path}},
                       std::nullopt,
                       {}};
  result.files.push_back({"library.json", dump(summary)});
  return result;
}

CommandResult cmd_synth(double t, double eps, double delta,
                        const std::string& library_path, std::uint64_t seed,
                        const std::string& group, double tol, Format format) {
  if (!std::filesystem::exists(library_path)) {
    throw PreconditionViolation("library file not found: " + library_path);
  }
  SynthesisConfig config;
  config.delta = delta;
  config.seed = seed;
  if (group == "meridian") {
    config.group = SymmetryFamily::kMeridian;
  } else if (group == "trivial") {
    config.group = SymmetryFamily::kTrivial;
  } else {
    throw PreconditionViolation("unknown group '" + group + "'");
  }
  const auto lib = SynthesisLibrary::load_jsonl(library_path);
  const auto ensemble = probabilistic_synthesize(lib, meridian_state(t), eps, config, tol);
  Rng rng(seed);
  const auto& drawn = sample_circuit(ensemble, rng);

  CommandResult result{"synth",
                       {{"t", number(t)},
                        {"eps", number(eps)},
                        {"delta", number(delta)},
                        {"library", library_path},
                        {"group", group},
                        {"tol", number(tol)}},
                       seed,
                       {}};
  Json report = to_json(ensemble);
  report["sampled"] = {{"word", drawn.circuit.word()}, {"t_count", drawn.circuit.t_count()}};
  result.files.push_back({"synth.json", dump(report)});
  if (format == Format::kCsv) {
    std::ostringstream csv;
    csv << "probability,word,t_count\n";
    for (const auto& item : ensemble.items) {
      csv << format_number(item.probability) << ',' << item.circuit.word() << ','
          << item.circuit.t_count() << '\n';
    }
    result.files.push_back({"synth.csv", csv.str()});
  }
  return result;
}

CommandResult cmd_tcount(const std::string& library_path,
                         const std::vector<double>& targets,
                         const std::vector<double>& errors, double tol,
                         Format format) {
  if (!std::filesystem::exists(library_path)) {
    throw PreconditionViolation("library file not found: " + library_path);
  }
  const auto lib = SynthesisLibrary::load_jsonl(library_path);
  const auto rows = tcount_experiment(targets, errors, lib, SynthesisConfig{}, tol);
  CommandResult result{"tcount",
                       {{"library", library_path},
                        {"targets", number_list(targets)},
                        {"errors", number_list(errors)},
                        {"tol", number(tol)}},
                       std::nullopt,
                       {}};
  if (format == Format::kCsv) {
    result.files.push_back({"tcount.csv", tcount_csv(rows)});
    return result;
  }
  Json out = Json::array();
  auto opt = [](const auto& x) -> Json {
    if (!x) return nullptr;
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(*x)>>) {
      return number(*x);
    } else {
      return *x;
    }
  };
  for (const auto& row : rows) {
    out.push_back({{"target_t", number(row.target_t)},
                   {"target_error", number(row.target_error)},
                   {"det_tcount", opt(row.det_tcount)},
                   {"det_error", opt(row.det_error)},
                   {"prob_max_tcount", opt(row.prob_max_tcount)},
                   {"prob_error", opt(row.prob_error)},
                   {"support_size", opt(row.support_size)}});
  }
  result.files.push_back({"tcount.json", dump(out)});
  return result;
}

CommandResult cmd_covering(const CoveringArgs& args) {
  CommandResult result{"covering",
                       {{"kind", args.kind}, {"eps", number(args.eps)}},
                       std::nullopt,
                       {}};
  Json report;
  if (args.kind == "meridian") {
    report = to_json(meridian_covering(args.eps));
  } else if (args.kind == "meridian-ball") {
    result.parameters["t"] = number(args.t);
    report = to_json(meridian_ball_covering(args.t, args.eps));
  } else if (args.kind == "greedy" || args.kind == "product") {
    if (!args.seed) throw PreconditionViolation("--seed is required for " + args.kind);
    result.seed = args.seed;
    result.parameters["d"] = args.d;
    result.parameters["verify_samples"] = args.verify_samples;
    GreedyOptions opts;
    opts.verify_samples = args.verify_samples;
    if (args.kind == "product") {
      const auto pc = product_covering(args.d, args.eps, *args.seed, opts);
      report = {{"d", args.d},
                {"eps", number(args.eps)},
                {"factor_radius", number(pc.factor_radius)},
                {"factors_a", pc.factors_a.size()},
                {"factors_b", pc.factors_b.size()},
                {"size", pc.factors_a.size() * pc.factors_b.size()}};
    } else {
      result.parameters["family"] = args.family;
      Family family = FullSphere{args.d};
      if (args.family == "meridian") {
        family = Meridian{};
      } else if (args.family != "full-sphere") {
        throw PreconditionViolation("unknown family '" + args.family + "'");
      }
      report = to_json(greedy_net(family, args.eps, *args.seed, opts));
    }
  } else {
    throw PreconditionViolation("unknown covering kind '" + args.kind + "'");
  }
  result.files.push_back({"covering.json", dump(report)});
  return result;
}

CommandResult cmd_volume(int d, double eps, std::optional<double> p0,
                         std::int64_t n_samples, std::uint64_t seed) {
  if (d < 2) throw PreconditionViolation("d must be >= 2");
  CommandResult result{"volume",
                       {{"d", d}, {"eps", number(eps)}, {"n", n_samples}},
                       seed,
                       {}};
  CMatrix center = CMatrix::Zero(d, d);
  if (p0) {
    if (!(*p0 >= 0.0 && *p0 <= 1.0)) throw PreconditionViolation("p0 must lie in [0, 1]");
    result.parameters["p0"] = number(*p0);
    center(0, 0) = *p0;
    center(1, 1) = 1.0 - *p0;
  } else {
    center(0, 0) = 1.0;
  }
  const auto est = mc_ball_volume(d, eps, DensityMatrix(center), n_samples, seed);
  Json report = to_json(est);
  report["pure_ball_volume"] = number(ball_volume(d, eps));
  if (d == 4 && p0) report["g4_bound"] = number(g4_bound(eps, *p0));
  result.files.push_back({"volume.json", dump(report)});
  return result;
}

CommandResult cmd_bounds(int d, double eps) {
  CommandResult result{"bounds", {{"d", d}, {"eps", number(eps)}}, std::nullopt, {}};
  result.files.push_back({"bounds.json", dump(to_json(bounds_report(d, eps)))});
  return result;
}

CommandResult cmd_measures(const MeasuresArgs& args) {
  CommandResult result{"measures",
                       {{"kind", args.kind}, {"d", args.d}, {"tol", number(args.tol)}},
                       args.seed,
                       {}};
  Json rows = Json::array();
  std::ostringstream csv;

  if (args.kind == "werner" || args.kind == "isotropic") {
    const bool is_werner = args.kind == "werner";
    result.parameters["q"] = number_list(args.q);
    result.parameters["grid"] = args.grid;
    std::vector<PureState> products;
    if (args.product_eps) {
      if (!args.seed) throw PreconditionViolation("--seed is required with --product-eps");
      result.parameters["product_eps"] = number(*args.product_eps);
      products = product_covering(args.d, *args.product_eps, *args.seed).states();
    }
    csv << "q,closed_form,scan,scan_a,scan_b,upper\n";
    for (double q : args.q) {
      const double closed = is_werner ? werner_distance(args.d, q) : isotropic_distance(args.d, q);
      const auto s = is_werner ? werner_witness_scan(args.d, q, args.grid)
                               : isotropic_witness_scan(args.d, q, args.grid);
      Json row = {{"q", number(q)},
                  {"closed_form", number(closed)},
                  {"scan", number(s.value)},
                  {"scan_a", number(s.a)},
                  {"scan_b", number(s.b)}};
      std::optional<double> upper;
      if (!products.empty()) {
        const auto rho = is_werner ? werner(args.d, q) : isotropic(args.d, q);
        upper = separable_upper(rho, products, args.tol).value;
        row["upper"] = number(*upper);
      }
      rows.push_back(row);
      csv << format_number(q) << ',' << format_number(closed) << ',' << format_number(s.value)
          << ',' << format_number(s.a) << ',' << format_number(s.b) << ','
          << optional_cell(upper) << '\n';
    }
  } else if (args.kind == "coherence") {
    if (!args.seed) throw PreconditionViolation("--seed is required for coherence");
    result.parameters["alpha"] = number_list(args.alpha);
    CVector v(static_cast<Eigen::Index>(args.alpha.size()));
    for (std::size_t i = 0; i < args.alpha.size(); ++i) v[i] = args.alpha[i];
    const auto alpha = SchmidtVector::normalized(v);
    const auto sol = coherence_distance(alpha, args.tol);
    const auto simplex = simplex_formula(alpha, 20, *args.seed);
    rows.push_back({{"coherence", number(sol.value)},
                    {"gap", number(sol.gap)},
                    {"simplex", number(simplex.value)},
                    {"simplex_p", to_json(simplex.p)},
                    {"restart_spread", number(simplex.restart_spread)}});
    csv << "coherence,gap,simplex,restart_spread\n"
        << format_number(sol.value) << ',' << format_number(sol.gap) << ','
        << format_number(simplex.value) << ',' << format_number(simplex.restart_spread) << '\n';
  } else {
    throw PreconditionViolation("unknown measure '" + args.kind + "'");
  }

  if (args.format == Format::kCsv) {
    result.files.push_back({"measures.csv", csv.str()});
  } else {
    result.files.push_back({"measures.json", dump(rows)});
  }
  return result;
}

Json manifest(const CommandResult& result, const std::string& out_dir) {
  Json outputs = Json::array();
  for (const auto& f : result.files) {
    outputs.push_back(out_dir.empty() ? f.name
                                      : (std::filesystem::path(out_dir) / f.name).string());
  }
  return {{"subcommand", result.subcommand},
          {"parameters", result.parameters},
          {"seed", result.seed ? Json(*result.seed) : Json(nullptr)},
          {"artifact_version", kArtifactVersion},
          {"outputs", outputs}};
}

void emit(const CommandResult& result, const std::string& out_dir, std::ostream& out) {
  if (out_dir.empty()) {
    for (const auto& f : result.files) out << f.body;
    return;
  }
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream file(std::filesystem::path(out_dir) / name, std::ios::binary);
    if (!file) throw PreconditionViolation("cannot write " + name + " in " + out_dir);
    file << body;
  };
  for (const auto& f : result.files) write(f.name, f.body);
  write("manifest.json", dump(manifest(result, out_dir)));
}

}  // namespace probsynth::cli
