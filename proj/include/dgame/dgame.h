// Copyright 2026 The dgame Authors
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

// C interface of the dgame library. All strings are UTF-8 and NUL-terminated.
// Strings returned through `char**` are owned by the caller and released with
// dgame_string_free. On failure a function returns a nonzero status and
// dgame_last_error() describes the problem (per thread).

#ifndef DGAME_DGAME_H_
#define DGAME_DGAME_H_

#include <stdint.h>

#if defined(_WIN32)
#define DGAME_API __declspec(dllexport)
#else
#define DGAME_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dgame_status {
  DGAME_OK = 0,
  DGAME_ERR_PARSE = 1,
  DGAME_ERR_INVALID_ARGUMENT = 2,
  DGAME_ERR_INADMISSIBLE = 3,
  DGAME_ERR_VOCABULARY = 4,
  DGAME_ERR_BUDGET = 5,
  DGAME_ERR_ILLEGAL_MOVE = 6,
  DGAME_ERR_IO = 7,
  DGAME_ERR_INTERNAL = 8
} dgame_status;

typedef enum dgame_player { DGAME_EVE = 0, DGAME_ADAM = 1 } dgame_player;

typedef struct dgame_structure dgame_structure;
typedef struct dgame_session dgame_session;

// Game parameters; beta and alpha are ordinals in Cantor normal form text
// such as "3", "w" or "w+2".
typedef struct dgame_params {
  const char* beta;
  int theta;
  const char* alpha;
} dgame_params;

// Solver options. mode is "lazy", "normalized" or "full" (NULL = lazy);
// node_budget 0 selects the default of 10^7.
typedef struct dgame_options {
  const char* mode;
  uint64_t node_budget;
  int symmetry;
  int include_strategy;
} dgame_options;

DGAME_API const char* dgame_version(void);
DGAME_API const char* dgame_last_error(void);
DGAME_API void dgame_string_free(char* s);
DGAME_API void dgame_options_init(dgame_options* options);

// Structures.
DGAME_API dgame_status dgame_structure_from_json(const char* json, dgame_structure** out);
DGAME_API dgame_status dgame_structure_generate(const char* spec, uint64_t seed,
                                                dgame_structure** out);
DGAME_API dgame_status dgame_structure_to_json(const dgame_structure* s, char** out);
DGAME_API void dgame_structure_free(dgame_structure* s);
// JSON array of the structures described by a family spec.
DGAME_API dgame_status dgame_family_generate(const char* spec, uint64_t seed, char** out);

// Game solving. `report` receives a JSON result (may be NULL).
DGAME_API dgame_status dgame_solve(const dgame_structure* m0, const dgame_structure* m1,
                                   const dgame_params* params, const dgame_options* options,
                                   dgame_player* winner, char** report);
DGAME_API dgame_status dgame_verify_strategy(const dgame_structure* m0,
                                             const dgame_structure* m1,
                                             const dgame_params* params,
                                             const char* strategy_json, int full_width,
                                             int* ok, char** reason);
DGAME_API dgame_status dgame_trivial_strategy(const dgame_structure* m0,
                                              const dgame_structure* m1,
                                              const dgame_params* params, char** out);
// Composes a strategy for (m0, m1) at params with one for (m1, m2) at
// (beta, theta, alpha2); the result is for (m0, m2) at alpha (+) alpha2.
DGAME_API dgame_status dgame_compose(const dgame_structure* m0, const dgame_structure* m1,
                                     const dgame_structure* m2, const dgame_params* params,
                                     const char* alpha2, const char* kab_json,
                                     const char* kbc_json, char** out);
DGAME_API dgame_status dgame_winning_heights(const dgame_structure* m0,
                                             const dgame_structure* m1, int theta,
                                             const char* alpha, const dgame_options* options,
                                             char** out);
DGAME_API dgame_status dgame_solve_infinite(const dgame_structure* m0,
                                            const dgame_structure* m1, int theta,
                                            const char* alpha, const dgame_options* options,
                                            dgame_player* winner);

// Back-and-forth levels; up_to < 0 computes until stabilization.
DGAME_API dgame_status dgame_karp(const dgame_structure* m0, const dgame_structure* m1,
                                  int theta, int up_to, uint64_t node_budget, char** out);

// Catalog-level operations; catalogs and families are JSON arrays of
// structures.
DGAME_API dgame_status dgame_classify(const char* catalog_json, const dgame_params* params,
                                      const dgame_options* options, char** out);
DGAME_API dgame_status dgame_search_intransitive(const char* family_json,
                                                 const dgame_params* params,
                                                 const dgame_options* options, char** out);

// Interactive play. human is the side played by the caller.
DGAME_API dgame_status dgame_session_new(const dgame_structure* m0, const dgame_structure* m1,
                                         const dgame_params* params, dgame_player human,
                                         const dgame_options* options, dgame_session** out);
DGAME_API dgame_status dgame_session_replay(const char* transcript_json,
                                            const dgame_options* options, dgame_session** out);
DGAME_API dgame_status dgame_session_state(const dgame_session* s, char** out);
DGAME_API dgame_status dgame_session_transcript(const dgame_session* s, char** out);
// Illegal moves return DGAME_ERR_ILLEGAL_MOVE and leave the session as is.
DGAME_API dgame_status dgame_session_adam_move(dgame_session* s, const char* move_json);
DGAME_API dgame_status dgame_session_eve_reply(dgame_session* s, const char* position_json);
DGAME_API void dgame_session_free(dgame_session* s);

#ifdef __cplusplus
}
#endif

#endif  // DGAME_DGAME_H_
