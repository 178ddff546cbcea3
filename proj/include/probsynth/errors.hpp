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

#include <stdexcept>
#include <string>

namespace probsynth {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-side contract violations: bad dimensions, out-of-range parameters,
// malformed inputs. The CLI maps these to exit code 2.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public PreconditionViolation {
 public:
  DimensionMismatch(int lhs, int rhs)
      : PreconditionViolation("dimension mismatch: " + std::to_string(lhs) +
                              " vs " + std::to_string(rhs)) {}
};

// The solver ran out of budget before certifying the requested gap. The
// best certified interval [lower, upper] for the optimum is carried along.
class SolverNonConvergence : public Error {
 public:
  SolverNonConvergence(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

// No library entry lies within the requested error of the target.
class InsufficientLibrary : public Error {
 public:
  InsufficientLibrary(double requested, double best)
      : Error("no library entry within " + std::to_string(requested) +
              " (best achievable " + std::to_string(best) + ")"),
        requested_(requested),
        best_(best) {}
  double requested() const { return requested_; }
  double best_error() const { return best_; }

 private:
  double requested_;
  double best_;
};

}  // namespace probsynth
