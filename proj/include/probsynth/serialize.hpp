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

#include <string>

#include <json.hpp>

#include "probsynth/approx_solver.hpp"
#include "probsynth/covering.hpp"
#include "probsynth/linalg.hpp"
#include "probsynth/states.hpp"
#include "probsynth/synthesis.hpp"

namespace probsynth {

using Json = nlohmann::ordered_json;

/// Round to 15 significant digits; non-finite values become null.
Json number(double x);
/// "%.15g"
std::string format_number(double x);

Json to_json(const PureState& state);
PureState state_from_json(const Json& j);
Json to_json(const CMatrix& m);
Json to_json(const RVector& v);
Json to_json(const ConvexApproxSolution& sol);
Json to_json(const CoveringReport& report);
Json to_json(const BoundsReport& report);
Json to_json(const VolumeEstimate& estimate);
Json to_json(const Ensemble& ensemble);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace probsynth
