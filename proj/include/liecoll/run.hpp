// Copyright 2026 The liecoll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liecoll/scenario.hpp"

namespace liecoll {

enum class RunMode { kIntegrate, kSolve, kVerify, kOracle, kAll };

/// Throws kInvalidInput for anything but integrate/solve/verify/oracle/all.
RunMode parse_mode(const std::string& name);
const char* to_string(RunMode mode);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// "<=", ">=" or "in" (value within [threshold, upper]).
  std::string comparison;
  double upper = 0.0;
  bool passed = false;
};

struct RunResult {
  RunMode mode = RunMode::kSolve;
  std::vector<Check> checks;
  /// Set when an inner module failed; the summary still describes what ran.
  std::optional<ErrorCode> error;
  std::string error_message;
  std::string summary_json;
  std::string trajectory_csv;

  bool passed() const;
};

/// t, agent, group coordinates (row-major), xi0, xi1, xi2, all printed with %.17g.
std::string trajectory_csv(const LieAlgebra& algebra, const Trajectory& traj);

/// Smallest pairwise Riemannian distance over all samples and agent pairs.
struct ClosestApproach {
  double distance = 0.0;
  int first = -1;
  int second = -1;
  double time = 0.0;
};
ClosestApproach min_pairwise_distance(const Metric& metric, const Trajectory& traj,
                                      const GeodesicSettings& settings = {});

/// Max position error against the per-coordinate Hermite cubic (abelian groups only).
double hermite_error(const BoundaryConditions& bc, const Trajectory& traj);

RunResult run(const Scenario& scenario, RunMode mode);

/// Writes trajectory.csv and summary.json into `directory`, creating it if needed.
void write_run(const RunResult& result, const std::string& directory);

}  // namespace liecoll
