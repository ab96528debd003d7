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

// Command-line front end. Exit codes: 0 success, 1 usage, 2 scenario
// rejected, 3 a run stage failed (e.g. no convergence), 4 a check failed,
// 5 output could not be written.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "liecoll/liecoll.h"

namespace {

struct ScenarioDeleter {
  void operator()(liecoll_scenario* s) const { liecoll_scenario_free(s); }
};
struct RunDeleter {
  void operator()(liecoll_run* r) const { liecoll_run_free(r); }
};

int report(liecoll_status status, const char* what) {
  std::fprintf(stderr, "liecoll: %s: %s: %s\n", what, liecoll_status_string(status), liecoll_last_error());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-avoiding cubic trajectories for agents on Lie groups"};
  std::string scenario_path;
  std::string mode = "solve";
  std::string out_dir;
  std::optional<double> step;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  app.add_option("--scenario", scenario_path, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "integrate, solve, verify, oracle or all")
      ->check(CLI::IsMember({"integrate", "solve", "verify", "oracle", "all"}));
  app.add_option("--out", out_dir, "Output directory (default: the scenario's output.directory)");
  app.add_option("--step", step, "Override the integrator step")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "Override the shooting tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Override the multistart / perturbation seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other usage problem exits 1.
    return app.exit(e) == 0 ? 0 : 1;
  }

  liecoll_scenario* raw = nullptr;
  liecoll_status st = liecoll_scenario_load_file(scenario_path.c_str(), &raw);
  if (st != LIECOLL_OK) {
    report(st, scenario_path.c_str());
    return 2;
  }
  std::unique_ptr<liecoll_scenario, ScenarioDeleter> scenario(raw);
  if (step && (st = liecoll_scenario_set_step(scenario.get(), *step)) != LIECOLL_OK) {
    report(st, "--step");
    return 2;
  }
  if (tol && (st = liecoll_scenario_set_tolerance(scenario.get(), *tol)) != LIECOLL_OK) {
    report(st, "--tol");
    return 2;
  }
  if (seed && (st = liecoll_scenario_set_seed(scenario.get(), *seed)) != LIECOLL_OK) {
    report(st, "--seed");
    return 2;
  }
  if (out_dir.empty()) out_dir = liecoll_scenario_output_directory(scenario.get());

  liecoll_run* run_raw = nullptr;
  const liecoll_status run_status = liecoll_run_mode(scenario.get(), mode.c_str(), &run_raw);
  std::unique_ptr<liecoll_run, RunDeleter> run(run_raw);
  if (!run) {
    report(run_status, mode.c_str());
    return 3;
  }
  if (run_status != LIECOLL_OK) report(run_status, mode.c_str());

  const int checks = liecoll_run_check_count(run.get());
  for (int i = 0; i < checks; ++i) {
    const char* name = nullptr;
    double value = 0.0;
    int passed = 0;
    liecoll_run_check(run.get(), i, &name, &value, &passed);
    std::printf("%s %-34s %.6g\n", passed ? "PASS" : "FAIL", name, value);
  }
  if ((st = liecoll_run_write(run.get(), out_dir.c_str())) != LIECOLL_OK) {
    report(st, out_dir.c_str());
    return 5;
  }
  std::printf("wrote %s\n", out_dir.c_str());
  if (run_status != LIECOLL_OK) return 3;
  return liecoll_run_passed(run.get()) ? 0 : 4;
}
