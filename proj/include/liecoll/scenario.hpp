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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liecoll/bvp.hpp"
#include "liecoll/verification.hpp"

namespace liecoll {

struct AgentConfig {
  GroupElement start;
  GroupElement end;
  Vector start_velocity;
  Vector end_velocity;
  /// Initial xi1, xi2 for integrate mode; zero when absent.
  std::optional<Vector> initial_xi1;
  std::optional<Vector> initial_xi2;
};

struct VerifySettings {
  /// Coarse finite-difference step of the residual order test (halved once).
  double h_fd = 1e-2;
  /// Step at which the absolute residual bound is checked.
  double h_fd_check = 1e-3;
  double residual_bound = 1e-4;
};

/// A fully validated scenario. See docs in the README for the file grammar.
struct Scenario {
  std::string group = "so3";
  /// Abelian dimension; ignored otherwise.
  int dimension = 3;
  /// Generic matrix groups only.
  std::vector<Matrix> basis;
  double cut_margin = 1e-6;

  bool metric_identity = true;
  Matrix metric_matrix;
  /// Flag the metric bi-invariant even under the left-invariant formulation.
  bool metric_bi_invariant = false;
  Formulation formulation = Formulation::kLeftInvariant;

  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<AgentConfig> agents;
  std::vector<Graph::Edge> edges;

  PotentialField field;
  IntegratorSettings integrator;
  ShootingSettings shooting;
  OracleSettings oracle;
  VerifySettings verify;
  std::string output_directory = "out";
  std::uint64_t seed = 0;

  /// Re-checks every invariant; call after editing fields directly.
  void validate() const;

  LieAlgebra algebra() const;
  Metric metric() const;
  Graph graph() const;
  Problem problem() const;
  BoundaryConditions boundary() const;
  SystemState initial_state() const;
};

/// Parses and validates YAML text. Errors carry kParse or kValidation and a line number.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// YAML text that load_scenario maps back to an identical scenario.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace liecoll
