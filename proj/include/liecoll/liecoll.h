/*
 * Copyright 2026 The liecoll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the liecoll shared library.
 *
 * Handles are opaque. Every fallible call returns a liecoll_status; on
 * failure liecoll_last_error() describes what went wrong on the calling
 * thread. Strings returned through out-parameters are owned by the caller
 * and released with liecoll_string_free. Strings returned directly are
 * owned by the handle they came from.
 */
#ifndef LIECOLL_LIECOLL_H_
#define LIECOLL_LIECOLL_H_

#include <stdint.h>

#if defined(LIECOLL_BUILDING_LIBRARY)
#define LIECOLL_API __attribute__((visibility("default")))
#else
#define LIECOLL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct liecoll_scenario liecoll_scenario;
typedef struct liecoll_run liecoll_run;

typedef enum liecoll_status {
  LIECOLL_OK = 0,
  LIECOLL_ERR_INVALID_ARGUMENT = 1,
  LIECOLL_ERR_PARSE = 2,
  LIECOLL_ERR_VALIDATION = 3,
  LIECOLL_ERR_CUT_LOCUS = 4,
  LIECOLL_ERR_NO_CONVERGENCE = 5,
  LIECOLL_ERR_BI_INVARIANT_REQUIRED = 6,
  LIECOLL_ERR_INSUFFICIENT_SAMPLES = 7,
  LIECOLL_ERR_MAX_ITERATIONS = 8,
  LIECOLL_ERR_NON_FINITE = 9,
  LIECOLL_ERR_IO = 10,
  LIECOLL_ERR_INTERNAL = 11
} liecoll_status;

LIECOLL_API const char* liecoll_version(void);
LIECOLL_API const char* liecoll_status_string(liecoll_status status);
/* Message of the last failed call on this thread; "" if none. */
LIECOLL_API const char* liecoll_last_error(void);
LIECOLL_API void liecoll_string_free(char* text);

LIECOLL_API liecoll_status liecoll_scenario_load_file(const char* path, liecoll_scenario** out);
LIECOLL_API liecoll_status liecoll_scenario_load_string(const char* text, liecoll_scenario** out);
LIECOLL_API void liecoll_scenario_free(liecoll_scenario* scenario);

/* Overrides; each re-validates the scenario and leaves it unchanged on failure. */
LIECOLL_API liecoll_status liecoll_scenario_set_step(liecoll_scenario* scenario, double step);
LIECOLL_API liecoll_status liecoll_scenario_set_tolerance(liecoll_scenario* scenario, double tolerance);
LIECOLL_API liecoll_status liecoll_scenario_set_seed(liecoll_scenario* scenario, uint64_t seed);
/* Output directory named in the scenario file. Owned by the scenario. */
LIECOLL_API const char* liecoll_scenario_output_directory(const liecoll_scenario* scenario);
LIECOLL_API liecoll_status liecoll_scenario_serialize(const liecoll_scenario* scenario, char** out);

/* Runs one mode: "integrate", "solve", "verify", "oracle" or "all".
 * When an inner stage fails (e.g. no convergence) *out still receives a
 * run describing the partial result, and the failure status is returned. */
LIECOLL_API liecoll_status liecoll_run_mode(const liecoll_scenario* scenario, const char* mode,
                                            liecoll_run** out);
LIECOLL_API void liecoll_run_free(liecoll_run* run);
/* Writes trajectory.csv (when a trajectory exists) and summary.json. */
LIECOLL_API liecoll_status liecoll_run_write(const liecoll_run* run, const char* directory);
LIECOLL_API const char* liecoll_run_summary_json(const liecoll_run* run);
LIECOLL_API const char* liecoll_run_trajectory_csv(const liecoll_run* run);
/* 1 when the run finished without error and every check passed. */
LIECOLL_API int liecoll_run_passed(const liecoll_run* run);
LIECOLL_API int liecoll_run_check_count(const liecoll_run* run);
/* Name and verdict of check i; returns LIECOLL_ERR_INVALID_ARGUMENT when out of range. */
LIECOLL_API liecoll_status liecoll_run_check(const liecoll_run* run, int index, const char** name,
                                             double* value, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* LIECOLL_LIECOLL_H_ */
