/* Copyright 2026 The liecoll Authors
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

/* The public header must compile as C and link against the shared library. */

#include <stdio.h>

#include "liecoll/liecoll.h"

int main(void) {
  liecoll_scenario* scenario = NULL;
  liecoll_run* run = NULL;
  const char* text =
      "group: abelian\n"
      "dimension: 1\n"
      "agents:\n"
      "  - start: [0]\n"
      "    end: [1]\n"
      "integrator:\n"
      "  step: 0.01\n";
  if (liecoll_scenario_load_string(text, &scenario) != LIECOLL_OK) {
    fprintf(stderr, "load failed: %s\n", liecoll_last_error());
    return 1;
  }
  if (liecoll_run_mode(scenario, "solve", &run) != LIECOLL_OK || !liecoll_run_passed(run)) {
    fprintf(stderr, "solve failed: %s\n", liecoll_last_error());
    liecoll_run_free(run);
    liecoll_scenario_free(scenario);
    return 1;
  }
  printf("liecoll %s: solve ok\n", liecoll_version());
  liecoll_run_free(run);
  liecoll_scenario_free(scenario);
  return 0;
}
