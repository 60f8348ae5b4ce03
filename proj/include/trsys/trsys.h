/*
 * Copyright 2026 The trsys Authors
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
 * C interface to the trsys shared library.
 *
 * Every fallible call returns a trs_status. On failure, trs_last_error()
 * holds a message for the calling thread until its next failing call.
 * Strings returned through char** are owned by the caller and must be
 * released with trs_string_free(). Handles are released with their own
 * _free function; passing NULL to any _free function is a no-op.
 */

#ifndef TRSYS_TRSYS_H_
#define TRSYS_TRSYS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TRSYS_BUILDING)
#define TRS_API __declspec(dllexport)
#else
#define TRS_API __declspec(dllimport)
#endif
#else
#define TRS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values are stable. */
typedef enum trs_status {
  TRS_OK = 0,
  TRS_NOT_A_LATTICE = 1,
  TRS_NOT_BOUNDED = 2,
  TRS_CYCLE_DETECTED = 3,
  TRS_SIZE_LIMIT = 4,
  TRS_NOT_PRIME = 5,
  TRS_NOT_GRADED = 6,
  TRS_AMBIENT_MISMATCH = 7,
  TRS_NOT_MODULAR = 8,
  TRS_NOT_SATURATED = 9,
  TRS_UNSUPPORTED_SUBPOSET = 10,
  TRS_INVARIANT_VIOLATION = 11,
  TRS_CLASSIFICATION_GAP = 12,
  TRS_NOT_COMPOSABLE = 13,
  TRS_NOT_MONOTONE = 14,
  TRS_INVALID_ARGUMENT = 15,
  TRS_PARSE_ERROR = 16,
  TRS_IO_ERROR = 17,
  TRS_INTERNAL = 99
} trs_status;

typedef enum trs_kind {
  TRS_KIND_TRANSFER = 0,
  TRS_KIND_SATURATED = 1,
  TRS_KIND_COVERS = 2,
  TRS_KIND_INTERIOR = 3
} trs_kind;

typedef struct trs_lattice trs_lattice;
typedef struct trs_collection trs_collection;

typedef struct trs_enum_options {
  size_t jobs;      /* 0 or 1: single-threaded */
  size_t max_pairs; /* strict-pair guard for full enumeration; 0: default 26 */
} trs_enum_options;

typedef struct trs_verify_options {
  int has_max;
  size_t max;
  size_t jobs;
  uint64_t seed;
} trs_verify_options;

TRS_API const char* trs_last_error(void);
TRS_API const char* trs_status_name(trs_status status);
TRS_API void trs_string_free(char* s);

/* Lattices ---------------------------------------------------------------- */

/*
 * family: "chain" ([n]), "cube" ([1]^n), "rect" ([m] x [n]),
 * "fuse2" ([2]^{*n}), "subcpcp" (Sub(C_n x C_n), n prime).
 */
TRS_API trs_status trs_lattice_family(const char* family, uint64_t m, uint64_t n,
                                      trs_lattice** out);
TRS_API trs_status trs_lattice_from_json(const char* json, trs_lattice** out);
TRS_API trs_status trs_lattice_fusion(const trs_lattice* p, const trs_lattice* q,
                                      trs_lattice** out);
TRS_API void trs_lattice_free(trs_lattice* lattice);
TRS_API size_t trs_lattice_size(const trs_lattice* lattice);
TRS_API size_t trs_lattice_strict_pairs(const trs_lattice* lattice);
TRS_API int trs_lattice_is_modular(const trs_lattice* lattice);
TRS_API trs_status trs_lattice_to_json(const trs_lattice* lattice, char** out);
TRS_API trs_status trs_lattice_to_dot(const trs_lattice* lattice, char** out);

/* Enumeration ------------------------------------------------------------- */

/* Items come out in canonical order, independent of opts->jobs. */
TRS_API trs_status trs_enumerate(const trs_lattice* lattice, trs_kind kind,
                                 const trs_enum_options* opts, trs_collection** out);
TRS_API void trs_collection_free(trs_collection* items);
TRS_API size_t trs_collection_size(const trs_collection* items);
/* Re-checks the axioms of item i; TRS_INVARIANT_VIOLATION if it fails. */
TRS_API trs_status trs_collection_validate(const trs_collection* items, size_t i);
TRS_API trs_status trs_collection_item_json(const trs_collection* items, size_t i, char** out);
/* Interior operators have no drawing; TRS_INVALID_ARGUMENT. */
TRS_API trs_status trs_collection_item_dot(const trs_collection* items, size_t i, char** out);

/* Reports, as JSON unless noted -------------------------------------------- */

/* DOT of the Hasse diagram of Tr(P). */
TRS_API trs_status trs_tr_hasse_dot(const trs_lattice* lattice, const trs_enum_options* opts,
                                    char** out);
/* Array of {"operator","least_pairs","greatest_pairs","size"}. */
TRS_API trs_status trs_fiber_report(const trs_lattice* lattice, const trs_enum_options* opts,
                                    char** out);
/* {"top_term","bottom_term","middle_terms_p","middle_terms_q","total"}; counts are strings. */
TRS_API trs_status trs_fusion_count(const trs_lattice* p, const trs_lattice* q,
                                    const trs_enum_options* opts, char** out);
/*
 * {"p","closed_form","census"}. The census enumerates Tr([2]^{*(p+1)}) and
 * is null when that breaks the pair guard.
 */
TRS_API trs_status trs_rank_two(uint64_t p, const trs_enum_options* opts, char** out);

/* Verification ------------------------------------------------------------ */

/* JSON array of check names in execution order. */
TRS_API trs_status trs_verify_checks(char** out);
/* report: one line per sub-check. *passed is 1 or 0. */
TRS_API trs_status trs_verify_run(const char* check, const trs_verify_options* opts, int* passed,
                                  char** report);

#ifdef __cplusplus
}
#endif

#endif /* TRSYS_TRSYS_H_ */
