/*
 * Copyright 2026 The cakecut Authors
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

/*
 * C interface to the cakecut solver.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Strings returned through char** are heap copies released
 * with cakecut_string_free. Every call returns a cakecut_status; on failure
 * cakecut_last_error() describes the problem (per thread, valid until the
 * next call on that thread).
 */
#ifndef CAKECUT_CAKECUT_H_
#define CAKECUT_CAKECUT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CAKECUT_BUILDING_LIBRARY)
#    define CAKECUT_API __declspec(dllexport)
#  else
#    define CAKECUT_API __declspec(dllimport)
#  endif
#else
#  define CAKECUT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cakecut_status {
  CAKECUT_OK = 0,
  CAKECUT_INPUT_ERROR = 1,
  CAKECUT_BUDGET_EXCEEDED = 2,
  CAKECUT_CONTRACT_VIOLATION = 3,
  CAKECUT_ENVY_EXCEEDS_EPSILON = 4,
  CAKECUT_RESOURCE_LIMIT = 5,
  CAKECUT_INTERNAL_ERROR = 6
} cakecut_status;

typedef enum cakecut_search_mode {
  CAKECUT_MODE_AUTO = 0,
  CAKECUT_MODE_SCAN = 1,
  CAKECUT_MODE_WALK = 2
} cakecut_search_mode;

typedef struct cakecut_instance cakecut_instance;
typedef struct cakecut_result cakecut_result;

/* Zero / NULL fields fall back to the instance's config, then to defaults. */
typedef struct cakecut_solve_options {
  int64_t mesh;
  int mode; /* cakecut_search_mode; -1 keeps the instance's mode */
  unsigned workers;
  uint64_t budget_cells;
  uint64_t seed;
  const char* epsilon; /* rational string, e.g. "1/100" */
} cakecut_solve_options;

typedef struct cakecut_bench_options {
  const int64_t* meshes; /* NULL: n, 2n, 4n */
  size_t mesh_count;
  int mode; /* scan, walk, or auto meaning both */
  int timing;
  unsigned workers;
} cakecut_bench_options;

CAKECUT_API const char* cakecut_version(void);
CAKECUT_API const char* cakecut_last_error(void);
CAKECUT_API void cakecut_string_free(char* s);

CAKECUT_API void cakecut_solve_options_init(cakecut_solve_options* options);
CAKECUT_API void cakecut_bench_options_init(cakecut_bench_options* options);

CAKECUT_API cakecut_status cakecut_instance_parse(const char* json, cakecut_instance** out);
CAKECUT_API cakecut_status cakecut_instance_load(const char* path, cakecut_instance** out);
/* Random valuations with unit group sizes; uniform != 0 gives identical uniform players. */
CAKECUT_API cakecut_status cakecut_instance_generate(uint64_t seed, size_t players, size_t segments,
                                                     int uniform, cakecut_instance** out);
CAKECUT_API void cakecut_instance_free(cakecut_instance* instance);
CAKECUT_API size_t cakecut_instance_players(const cakecut_instance* instance);
CAKECUT_API size_t cakecut_instance_groups(const cakecut_instance* instance);
CAKECUT_API cakecut_status cakecut_instance_to_json(const cakecut_instance* instance, char** out);

/*
 * Solves the instance. CAKECUT_OK means the allocation is epsilon-envy-free.
 * CAKECUT_BUDGET_EXCEEDED still yields a result (best found, flagged) when at
 * least one mesh level completed; otherwise *out is NULL.
 */
CAKECUT_API cakecut_status cakecut_solve(const cakecut_instance* instance,
                                         const cakecut_solve_options* options,
                                         cakecut_result** out);
CAKECUT_API void cakecut_result_free(cakecut_result* result);
CAKECUT_API cakecut_status cakecut_result_to_json(const cakecut_result* result, char** out);
/* Exact maximum envy as "p/q". */
CAKECUT_API cakecut_status cakecut_result_max_envy(const cakecut_result* result, char** out);
CAKECUT_API size_t cakecut_result_group_of(const cakecut_result* result, size_t player);

/*
 * Recomputes envy for a result file against the instance. Returns CAKECUT_OK
 * when max envy <= epsilon, CAKECUT_ENVY_EXCEEDS_EPSILON otherwise; the report
 * is produced in both cases. epsilon may be NULL.
 */
CAKECUT_API cakecut_status cakecut_verify(const cakecut_instance* instance, const char* result_json,
                                          const char* epsilon, char** report_json);

/* mode: "individual", "variable" or "fixed". */
CAKECUT_API cakecut_status cakecut_oracle(const cakecut_instance* instance, const char* mode,
                                          int64_t resolution, unsigned workers, char** out_json);

CAKECUT_API cakecut_status cakecut_bench(const cakecut_instance* instance,
                                         const cakecut_bench_options* options, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* CAKECUT_CAKECUT_H_ */
