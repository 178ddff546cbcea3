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

#include "probsynth/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "probsynth/errors.hpp"

namespace probsynth {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

Json to_json(const PureState& state) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k) {
    re.push_back(number(state.amplitudes()[k].real()));
    im.push_back(number(state.amplitudes()[k].imag()));
  }
  return {{"dim", state.dim()}, {"re", re}, {"im", im}};
}

PureState state_from_json(const Json& j) {
  try {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
      throw PreconditionViolation("state JSON needs equal-length re/im arrays");
    }
    CVector v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t k = 0; k < re.size(); ++k) {
      v[static_cast<Eigen::Index>(k)] = Complex(re[k].get<double>(), im[k].get<double>());
    }
    return PureState::from_amplitudes(v);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionViolation(std::string("malformed state JSON: ") + e.what());
  }
}

Json to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(number(m(i, j).real()));
      ir.push_back(number(m(i, j).imag()));
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"re", re}, {"im", im}};
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(number(v[k]));
  return out;
}

Json to_json(const ConvexApproxSolution& sol) {
  return {{"value", number(sol.value)},         {"gap", number(sol.gap)},
          {"p", to_json(sol.p)},                {"witness", to_json(sol.witness)},
          {"primal", number(sol.primal_value)}, {"dual", number(sol.dual_value)},
          {"iterations", sol.iterations}};
}

Json to_json(const CoveringReport& report) {
  Json points = Json::array();
  for (const auto& p : report.points) points.push_back(to_json(p));
  return {{"family", family_name(report.family)},
          {"radius", number(report.radius)},
          {"size", report.points.size()},
          {"verified", report.verified},
          {"worst_observed", number(report.worst_observed)},
          {"sample_count", report.sample_count},
          {"seed", report.seed},
          {"points", points}};
}

Json to_json(const BoundsReport& r) {
  return {{"d", r.d},
          {"eps", number(r.eps)},
          {"l", number(r.l)},
          {"log2_Iin_lower", number(r.log2_iin_lower)},
          {"log2_Iin_upper", number(r.log2_iin_upper)},
          {"log2_Iex_lower", number(r.log2_iex_lower)},
          {"n_det_lower", number(r.n_det_lower)},
          {"n_det_upper", number(r.n_det_upper)},
          {"n_prob_lower", number(r.n_prob_lower)},
          {"n_prob_upper", number(r.n_prob_upper)},
          {"ratio_lower", number(r.ratio_lower)},
          {"ratio_upper", number(r.ratio_upper)},
          {"ratio_aligned_lower", number(r.ratio_aligned_lower)},
          {"ratio_aligned_upper", number(r.ratio_aligned_upper)},
          {"ratio_midpoint", number(r.ratio_midpoint)}};
}

Json to_json(const VolumeEstimate& e) {
  return {{"estimate", number(e.estimate)},
          {"std_error", number(e.std_error)},
          {"hits", e.hits},
          {"n_samples", e.n_samples},
          {"seed", e.seed}};
}

Json to_json(const Ensemble& ensemble) {
  Json items = Json::array();
  for (const auto& item : ensemble.items) {
    items.push_back({{"probability", number(item.probability)},
                     {"word", item.circuit.word()},
                     {"t_count", item.circuit.t_count()},
                     {"state", to_json(item.state)}});
  }
  return {{"achieved_error", number(ensemble.achieved_error)},
          {"certified_gap", number(ensemble.certified_gap)},
          {"solver_value", number(ensemble.solver_value)},
          {"geometric_error", number(ensemble.geometric_error)},
          {"oracle_error", number(ensemble.oracle_error)},
          {"candidate_count", ensemble.candidate_count},
          {"max_t_count", ensemble.max_t_count()},
          {"items", items}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace probsynth
