/* Copyright 2026 The statsel Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* statsel — statistical test selection and execution.
 *
 * C API of the shared library. All handles are opaque; every fallible call
 * returns a statsel_status and, when a statsel_error** out-parameter is
 * given and non-NULL, a detailed error object the caller must free with
 * statsel_error_free(). Strings returned through char** are owned by the
 * caller and released with statsel_string_free(); strings returned as
 * const char* stay owned by the handle they came from.
 *
 * Typical flow:
 *
 *   statsel_spec*    spec = NULL;
 *   statsel_dataset* data = NULL;
 *   statsel_report*  rep  = NULL;
 *   statsel_error*   err  = NULL;
 *   statsel_options  opt  = statsel_options_default();
 *
 *   if (statsel_spec_parse_file("study.study", &spec, &err)) { ... }
 *   if (statsel_dataset_load(spec, "data.csv", &data, &err)) { ... }
 *   if (statsel_run(spec, data, &opt, &rep, &err)) { ... }
 *   puts(statsel_report_text(rep));
 *
 *   statsel_report_free(rep);
 *   statsel_dataset_free(data);
 *   statsel_spec_free(spec);
 */

#ifndef STATSEL_STATSEL_H
#define STATSEL_STATSEL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum statsel_status {
  STATSEL_OK = 0,
  STATSEL_ERR_INVALID_ARG = 1, /* NULL handle, bad option value */
  STATSEL_ERR_IO = 2,          /* unreadable file */
  STATSEL_ERR_PARSE = 3,       /* malformed study file */
  STATSEL_ERR_VALIDATE = 4,    /* cross-reference/invariant violation */
  STATSEL_ERR_DATA = 5,        /* CSV does not satisfy the declarations */
  STATSEL_ERR_EXEC = 6,        /* analysis could not be executed */
  STATSEL_ERR_INTERNAL = 7
} statsel_status;

typedef struct statsel_error statsel_error;
typedef struct statsel_spec statsel_spec;
typedef struct statsel_dataset statsel_dataset;
typedef struct statsel_report statsel_report;

/* ---- errors ---- */

statsel_status statsel_error_status(const statsel_error* err);
/* Human-readable message, e.g. "SyntaxError (line 4): expected key = value". */
const char* statsel_error_message(const statsel_error* err);
/* 1-based line for parse errors, 0 otherwise. */
int statsel_error_line(const statsel_error* err);
void statsel_error_free(statsel_error* err);

/* ---- study specs ---- */

/* Reads the sectioned text format, or the JSON encoding when the path ends
 * in ".json". */
statsel_status statsel_spec_parse_file(const char* path, statsel_spec** out,
                                       statsel_error** err);
statsel_status statsel_spec_parse_text(const char* text, int as_json,
                                       statsel_spec** out, statsel_error** err);
/* Canonical serialization (round-trips through the parser). */
statsel_status statsel_spec_render(const statsel_spec* spec, int as_json,
                                   char** out);
/* The data path declared inside the spec (owned by the spec). */
const char* statsel_spec_data_path(const statsel_spec* spec);
/* One line per variable: "name: role (dtype)". */
statsel_status statsel_spec_describe(const statsel_spec* spec, char** out);
void statsel_spec_free(statsel_spec* spec);

/* ---- datasets ---- */

statsel_status statsel_dataset_load(const statsel_spec* spec,
                                    const char* csv_path, statsel_dataset** out,
                                    statsel_error** err);
int statsel_dataset_rows(const statsel_dataset* ds);
void statsel_dataset_free(statsel_dataset* ds);

/* ---- running ---- */

typedef struct statsel_options {
  uint64_t seed;     /* resampling seed; ignored unless has_seed */
  int has_seed;      /* 0: use the library default */
  int strict;        /* reserved for callers; recorded, not interpreted */
  int resamples;     /* bootstrap resamples, >= 1000 */
  double ci_level;   /* confidence level in (0, 1) */
} statsel_options;

statsel_options statsel_options_default(void);

statsel_status statsel_run(const statsel_spec* spec, const statsel_dataset* ds,
                           const statsel_options* options, statsel_report** out,
                           statsel_error** err);

/* Rendered documents; owned by the report handle. */
const char* statsel_report_json(const statsel_report* rep);
const char* statsel_report_text(const statsel_report* rep);
/* Number of assumption-vs-computation conflicts attached to the report. */
int statsel_report_conflict_count(const statsel_report* rep);
/* 1 when no test satisfied its preconditions and the bootstrap ran. */
int statsel_report_fallback(const statsel_report* rep);
void statsel_report_free(statsel_report* rep);

/* ---- knowledge base ---- */

/* JSON listing of every supported test and its precondition atoms. */
statsel_status statsel_kb_json(char** out);

void statsel_string_free(char* s);
const char* statsel_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STATSEL_STATSEL_H */
