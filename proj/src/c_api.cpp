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

#include "liecoll/liecoll.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "liecoll/run.hpp"

struct liecoll_scenario {
  liecoll::Scenario value;
};

struct liecoll_run {
  liecoll::RunResult value;
};

namespace {

thread_local std::string g_last_error;

liecoll_status from_code(liecoll::ErrorCode code) {
  using liecoll::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidInput: return LIECOLL_ERR_INVALID_ARGUMENT;
    case ErrorCode::kCutLocus: return LIECOLL_ERR_CUT_LOCUS;
    case ErrorCode::kNoConvergence: return LIECOLL_ERR_NO_CONVERGENCE;
    case ErrorCode::kBiInvariantRequired: return LIECOLL_ERR_BI_INVARIANT_REQUIRED;
    case ErrorCode::kInsufficientSamples: return LIECOLL_ERR_INSUFFICIENT_SAMPLES;
    case ErrorCode::kMaxIterations: return LIECOLL_ERR_MAX_ITERATIONS;
    case ErrorCode::kNonFinite: return LIECOLL_ERR_NON_FINITE;
    case ErrorCode::kParse: return LIECOLL_ERR_PARSE;
    case ErrorCode::kValidation: return LIECOLL_ERR_VALIDATION;
    case ErrorCode::kIo: return LIECOLL_ERR_IO;
  }
  return LIECOLL_ERR_INTERNAL;
}

liecoll_status set_error(liecoll_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

/// Runs `body` and converts any exception into a status.
template <class F>
liecoll_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const liecoll::Error& e) {
    return set_error(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LIECOLL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LIECOLL_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(LIECOLL_ERR_INTERNAL, "unknown failure");
  }
}

liecoll_status null_argument(const char* name) {
  return set_error(LIECOLL_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Edit>
liecoll_status edit_scenario(liecoll_scenario* scenario, Edit&& edit) {
  if (!scenario) return null_argument("scenario");
  return guarded([&] {
    liecoll::Scenario copy = scenario->value;
    edit(copy);
    copy.validate();
    scenario->value = std::move(copy);
    return LIECOLL_OK;
  });
}

}  // namespace

extern "C" {

const char* liecoll_version(void) { return "0.1.0"; }

const char* liecoll_status_string(liecoll_status status) {
  switch (status) {
    case LIECOLL_OK: return "ok";
    case LIECOLL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LIECOLL_ERR_PARSE: return "parse error";
    case LIECOLL_ERR_VALIDATION: return "validation error";
    case LIECOLL_ERR_CUT_LOCUS: return "cut locus";
    case LIECOLL_ERR_NO_CONVERGENCE: return "no convergence";
    case LIECOLL_ERR_BI_INVARIANT_REQUIRED: return "bi-invariant metric required";
    case LIECOLL_ERR_INSUFFICIENT_SAMPLES: return "insufficient samples";
    case LIECOLL_ERR_MAX_ITERATIONS: return "max iterations";
    case LIECOLL_ERR_NON_FINITE: return "non-finite value";
    case LIECOLL_ERR_IO: return "i/o error";
    case LIECOLL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* liecoll_last_error(void) { return g_last_error.c_str(); }

void liecoll_string_free(char* text) { std::free(text); }

liecoll_status liecoll_scenario_load_file(const char* path, liecoll_scenario** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new liecoll_scenario{liecoll::load_scenario_file(path)};
    return LIECOLL_OK;
  });
}

liecoll_status liecoll_scenario_load_string(const char* text, liecoll_scenario** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new liecoll_scenario{liecoll::load_scenario(text)};
    return LIECOLL_OK;
  });
}

void liecoll_scenario_free(liecoll_scenario* scenario) { delete scenario; }

liecoll_status liecoll_scenario_set_step(liecoll_scenario* scenario, double step) {
  return edit_scenario(scenario, [&](liecoll::Scenario& s) { s.integrator.step = step; });
}

liecoll_status liecoll_scenario_set_tolerance(liecoll_scenario* scenario, double tolerance) {
  return edit_scenario(scenario, [&](liecoll::Scenario& s) { s.shooting.tolerance = tolerance; });
}

liecoll_status liecoll_scenario_set_seed(liecoll_scenario* scenario, uint64_t seed) {
  return edit_scenario(scenario, [&](liecoll::Scenario& s) {
    s.seed = seed;
    s.shooting.seed = seed;
  });
}

const char* liecoll_scenario_output_directory(const liecoll_scenario* scenario) {
  return scenario ? scenario->value.output_directory.c_str() : "";
}

liecoll_status liecoll_scenario_serialize(const liecoll_scenario* scenario, char** out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = copy_string(liecoll::serialize_scenario(scenario->value));
    return LIECOLL_OK;
  });
}

liecoll_status liecoll_run_mode(const liecoll_scenario* scenario, const char* mode, liecoll_run** out) {
  if (!scenario) return null_argument("scenario");
  if (!mode) return null_argument("mode");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto* run = new liecoll_run{liecoll::run(scenario->value, liecoll::parse_mode(mode))};
    *out = run;
    if (run->value.error) return set_error(from_code(*run->value.error), run->value.error_message);
    return LIECOLL_OK;
  });
}

void liecoll_run_free(liecoll_run* run) { delete run; }

liecoll_status liecoll_run_write(const liecoll_run* run, const char* directory) {
  if (!run) return null_argument("run");
  if (!directory) return null_argument("directory");
  return guarded([&] {
    liecoll::write_run(run->value, directory);
    return LIECOLL_OK;
  });
}

const char* liecoll_run_summary_json(const liecoll_run* run) {
  return run ? run->value.summary_json.c_str() : "";
}

const char* liecoll_run_trajectory_csv(const liecoll_run* run) {
  return run ? run->value.trajectory_csv.c_str() : "";
}

int liecoll_run_passed(const liecoll_run* run) { return run && run->value.passed() ? 1 : 0; }

int liecoll_run_check_count(const liecoll_run* run) {
  return run ? static_cast<int>(run->value.checks.size()) : 0;
}

liecoll_status liecoll_run_check(const liecoll_run* run, int index, const char** name, double* value,
                                 int* passed) {
  if (!run) return null_argument("run");
  if (index < 0 || index >= static_cast<int>(run->value.checks.size())) {
    return set_error(LIECOLL_ERR_INVALID_ARGUMENT, "check index out of range");
  }
  const auto& c = run->value.checks[static_cast<std::size_t>(index)];
  if (name) *name = c.name.c_str();
  if (value) *value = c.value;
  if (passed) *passed = c.passed ? 1 : 0;
  return LIECOLL_OK;
}

}  // extern "C"
