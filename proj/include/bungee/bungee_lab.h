/* Copyright 2026 The bungee-lab Authors
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

/* C interface of libbungee_lab.
 *
 * Every fallible call returns a bl_status. On failure the message is
 * available from bl_last_error() on the same thread until the next failing
 * call. Strings and byte buffers returned through `char**` are owned by the
 * caller and released with bl_string_free(). Handles are immutable after
 * creation and may be shared between threads. */

#ifndef BUNGEE_LAB_H
#define BUNGEE_LAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BL_API __declspec(dllexport)
#else
#define BL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bl_status {
  BL_OK = 0,
  BL_ERR_PARSE = 1,            /* malformed expression text */
  BL_ERR_INVALID_ARGUMENT = 2, /* precondition violated, unknown name, bad spec */
  BL_ERR_LIMIT = 3,            /* node-count or pixel cap exceeded */
  BL_ERR_IO = 4,               /* file could not be written */
  BL_ERR_NULL = 5,             /* required pointer argument was NULL */
  BL_ERR_INTERNAL = 6
} bl_status;

typedef struct bl_expr bl_expr;
typedef struct bl_grid bl_grid;

typedef struct bl_complex {
  double re;
  double im;
} bl_complex;

typedef enum bl_eval_kind { BL_EVAL_FINITE = 0, BL_EVAL_OVERFLOW = 1, BL_EVAL_POLE = 2 } bl_eval_kind;

typedef struct bl_eval_result {
  bl_eval_kind kind;
  bl_complex value; /* meaningful for BL_EVAL_FINITE only */
  int underflow;    /* nonzero: a finite zero standing for an underflowed value */
} bl_eval_result;

typedef struct bl_orbit_params {
  uint32_t max_iter;
  double escape_radius;
  double bound_radius;
  uint32_t min_oscillations;
  uint32_t tail_window;
} bl_orbit_params;

typedef enum bl_verdict {
  BL_ESCAPING = 0,
  BL_BOUNDED = 1,
  BL_BUNGEE = 2,
  BL_UNDECIDED = 3,
  BL_POLE = 4
} bl_verdict;

typedef enum bl_confidence { BL_CONFIDENT = 0, BL_HEURISTIC = 1 } bl_confidence;

typedef struct bl_classification {
  bl_verdict verdict;
  bl_confidence confidence;
} bl_classification;

typedef struct bl_grid_spec {
  bl_complex center;
  double width;
  double height;
  uint32_t nx;
  uint32_t ny;
} bl_grid_spec;

typedef enum bl_set_kind { BL_SET_I = 0, BL_SET_K = 1, BL_SET_BU = 2 } bl_set_kind;

typedef enum bl_combiner {
  BL_UNION = 0,
  BL_INTERSECTION = 1,
  BL_SYMMETRIC_DIFFERENCE = 2
} bl_combiner;

typedef struct bl_set_term {
  const bl_expr* f;
  bl_set_kind set;
} bl_set_term;

typedef enum bl_verify_kind {
  BL_VERIFY_CONTAINMENT = 0,
  BL_VERIFY_INVARIANCE = 1,
  BL_VERIFY_COMMUTE = 2,
  BL_VERIFY_TRANSLATE = 3,
  BL_VERIFY_PROPERTY_A = 4,
  BL_VERIFY_PARTITION = 5
} bl_verify_kind;

typedef struct bl_verify_request {
  bl_verify_kind kind;
  const bl_expr* f; /* invariance, commute, translate, property-a, partition */
  const bl_expr* g; /* invariance, commute, property-a */
  bl_set_kind set;  /* invariance */
  const bl_set_term* lhs; /* containment */
  size_t lhs_count;
  bl_combiner lhs_combiner;
  const bl_set_term* rhs; /* containment; zero terms under union = empty set */
  size_t rhs_count;
  bl_combiner rhs_combiner;
  bl_complex C;   /* translate */
  uint32_t n_max; /* translate */
  bl_grid_spec grid; /* partition */
  bl_orbit_params params;
  double xmin, xmax, ymin, ymax; /* sampling rectangle */
  uint32_t samples;
  uint64_t seed;
  double tol;
  int strict;
  unsigned threads; /* 0 = automatic, still capped by BUNGEE_LAB_THREADS */
} bl_verify_request;

BL_API const char* bl_version(void);

/* Message of the last failure on this thread ("" if none). */
BL_API const char* bl_last_error(void);
/* Byte offset of the last parse failure on this thread, or -1. */
BL_API long long bl_last_error_offset(void);

BL_API void bl_string_free(char* s);

BL_API void bl_orbit_params_default(bl_orbit_params* out);
BL_API bl_status bl_orbit_params_validate(const bl_orbit_params* p);

/* --- expressions --- */

BL_API bl_status bl_expr_parse(const char* text, bl_expr** out);
BL_API void bl_expr_free(bl_expr* e);
BL_API bl_status bl_expr_print(const bl_expr* e, char** out);
BL_API bl_status bl_expr_eval(const bl_expr* e, bl_complex z, bl_eval_result* out);
BL_API bl_status bl_expr_derivative(const bl_expr* e, bl_expr** out);
BL_API bl_status bl_expr_compose(const bl_expr* f, const bl_expr* g, bl_expr** out);
BL_API bl_status bl_expr_iterate(const bl_expr* f, int n, bl_expr** out);
BL_API bl_status bl_expr_translate(const bl_expr* f, bl_complex c, bl_expr** out);
BL_API bl_status bl_expr_scale(const bl_expr* f, bl_complex a, bl_expr** out);
BL_API bl_status bl_expr_is_entire(const bl_expr* e, int* out);
BL_API bl_status bl_expr_node_count(const bl_expr* e, uint64_t* out);
BL_API bl_status bl_expr_equal(const bl_expr* a, const bl_expr* b, int* out);

/* Value of a constant expression such as "2*pi*i". */
BL_API bl_status bl_constant_value(const char* text, bl_complex* out);

/* --- orbits --- */

BL_API bl_status bl_classify_point(const bl_expr* f, bl_complex z0, const bl_orbit_params* p,
                                   bl_classification* out);
/* Verdict plus trace summary as a JSON object. */
BL_API bl_status bl_classify_point_json(const bl_expr* f, bl_complex z0,
                                        const bl_orbit_params* p, char** json);
/* Fixed points in [xmin,xmax]x[ymin,ymax] from a starts x starts lattice. */
BL_API bl_status bl_fixed_points_json(const bl_expr* f, double xmin, double xmax, double ymin,
                                      double ymax, int starts, char** json);

/* --- grids --- */

BL_API bl_status bl_grid_spec_parse(const char* text, bl_grid_spec* out);
BL_API bl_status bl_grid_classify(const bl_expr* f, const bl_grid_spec* spec,
                                  const bl_orbit_params* p, unsigned threads, bl_grid** out);
BL_API void bl_grid_free(bl_grid* g);
BL_API bl_status bl_grid_verdict(const bl_grid* g, uint32_t j, uint32_t k,
                                 bl_classification* out);
BL_API bl_status bl_grid_stats_json(const bl_grid* g, char** json);
/* Binary PPM (P6) with the default palette; `*len` receives the byte count. */
BL_API bl_status bl_grid_render_ppm(const bl_grid* g, char** bytes, size_t* len);
BL_API bl_status bl_grid_write_ppm(const bl_grid* g, const char* path);
/* 64-bit FNV-1a of the PPM bytes. */
BL_API bl_status bl_grid_ppm_hash(const bl_grid* g, uint64_t* out);

/* --- verification --- */

BL_API void bl_verify_request_default(bl_verify_request* out);
/* Runs one check. `*violations` receives 1 when the check found a
 * counterexample (or the relation was refuted), else 0. */
BL_API bl_status bl_verify(const bl_verify_request* req, char** json, int* violations);
/* Runs a named preset (or "all-paper"); only params, samples, seed, tol,
 * strict and threads are read from `opts` (NULL = defaults). */
BL_API bl_status bl_verify_preset(const char* name, const bl_verify_request* opts, char** json,
                                  int* passed);
/* JSON array of {name, f, g, summary, conjectural}. */
BL_API bl_status bl_preset_list_json(char** json);

#ifdef __cplusplus
}
#endif

#endif /* BUNGEE_LAB_H */
