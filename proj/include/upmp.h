/* Copyright 2026 The upmp Authors
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

/* C interface of libupmp: an exact solver for sorting unit loads in a block
 * stacking storage bay with up to four access directions. Objects are opaque
 * handles; every function that can fail returns a status code and leaves a
 * human-readable detail in upmp_last_error() (thread-local). Strings returned
 * through char** are heap-allocated and released with upmp_string_free().
 */

#ifndef UPMP_H_
#define UPMP_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum upmp_status {
  UPMP_OK = 0,
  UPMP_ERROR_ARGUMENT = 1,
  UPMP_ERROR_IO = 2,
  UPMP_ERROR_PARSE = 3,
  UPMP_ERROR_INVALID_INSTANCE = 4,
  UPMP_ERROR_GENERATE = 5,
  UPMP_ERROR_INTERNAL = 6
} upmp_status;

typedef enum upmp_outcome {
  UPMP_OUTCOME_SOLVED = 0,
  UPMP_OUTCOME_INFEASIBLE = 1,
  UPMP_OUTCOME_TIMEOUT = 2,
  UPMP_OUTCOME_CAP_EXCEEDED = 3 /* oracle only */
} upmp_outcome;

typedef struct upmp_instance upmp_instance;
typedef struct upmp_result upmp_result;

typedef struct upmp_move {
  int from_i, from_j, from_t;
  int to_i, to_j, to_t;
  int group;
} upmp_move;

typedef struct upmp_solve_options {
  double timeout_seconds; /* <= 0: unlimited */
  uint64_t node_cap;      /* 0: library default */
  int trace;              /* nonzero: expansion trace on stderr */
} upmp_solve_options;

typedef struct upmp_gen_params {
  int columns, rows, tiers;
  const char* variant; /* "single", "corner", "opposite", "three", "four",
                          or a comma-separated direction list */
  int fill_percent;
  int groups; /* 0: default 5 */
  uint64_t seed;
} upmp_gen_params;

/* Components of the root evaluation: the access fixing objective and the
 * admissible move bound. h_infinite is set when the bound certifies that no
 * completion exists from the root arrangement. */
typedef struct upmp_root_info {
  int fixing_objective; /* 0 for single-direction variants */
  int lane_count;
  int h;
  int h_infinite;
  int blocking;
  int forced_extra;
  int shuffle_moves;
} upmp_root_info;

const char* upmp_version(void);
const char* upmp_status_name(upmp_status status);
const char* upmp_last_error(void);
void upmp_string_free(char* text);

/* --- instances ------------------------------------------------------- */

upmp_status upmp_instance_load(const char* path, upmp_instance** out);
upmp_status upmp_instance_from_text(const char* text, upmp_instance** out);
upmp_status upmp_instance_save(const upmp_instance* inst, const char* path);
upmp_status upmp_instance_text(const upmp_instance* inst, char** out_text);
upmp_status upmp_instance_generate(const upmp_gen_params* params, int index,
                                   upmp_instance** out);
void upmp_instance_free(upmp_instance* inst);

uint64_t upmp_instance_hash(const upmp_instance* inst);
int upmp_instance_columns(const upmp_instance* inst);
int upmp_instance_rows(const upmp_instance* inst);
int upmp_instance_tiers(const upmp_instance* inst);
int upmp_instance_groups(const upmp_instance* inst);
int upmp_instance_load_count(const upmp_instance* inst);
const char* upmp_instance_variant(const upmp_instance* inst);

/* --- root bound and access network ------------------------------------ */

upmp_status upmp_root_bound(const upmp_instance* inst, upmp_root_info* out);

/* Plain-text adjacency listing of the access network, one "from to cost"
 * line per edge. */
upmp_status upmp_network_dump(const upmp_instance* inst, char** out_text);

/* --- solving ----------------------------------------------------------- */

upmp_status upmp_solve(const upmp_instance* inst, const upmp_solve_options* options,
                       upmp_result** out);

/* Exhaustive breadth-first reference search; returns the optimum move count
 * without a move list. node_cap 0 means the library default. */
upmp_status upmp_oracle(const upmp_instance* inst, uint64_t node_cap,
                        upmp_result** out);

void upmp_result_free(upmp_result* result);
upmp_outcome upmp_result_outcome(const upmp_result* result);
int upmp_result_move_count(const upmp_result* result);
upmp_status upmp_result_move(const upmp_result* result, int index, upmp_move* out);
uint64_t upmp_result_nodes(const upmp_result* result);
double upmp_result_runtime_seconds(const upmp_result* result);
int upmp_result_root_h(const upmp_result* result); /* -1 when infinite */
int upmp_result_best_f(const upmp_result* result); /* timeout only */

/* Canonical solution file contents for this result. */
upmp_status upmp_result_solution_text(const upmp_result* result,
                                      const upmp_instance* inst, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* UPMP_H_ */
