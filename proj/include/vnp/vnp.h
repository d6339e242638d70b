// Copyright 2026 The vnpointer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the vnpointer library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every function returns a vnp_status; on
 * failure vnp_last_error() describes the problem for the calling thread.
 * Complex numbers are passed as interleaved (re, im) double pairs, matrices
 * in row-major order.
 */
#ifndef VNP_VNP_H
#define VNP_VNP_H

#include <stddef.h>
#include <stdint.h>

#if defined(VNP_BUILDING_LIBRARY)
#define VNP_API __attribute__((visibility("default")))
#else
#define VNP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vnp_status {
    VNP_OK = 0,
    VNP_INVALID_STATE = 1,
    VNP_INVALID_PROJECTOR = 2,
    VNP_SHAPE_MISMATCH = 3,
    VNP_INVALID_ARGUMENT = 4,
    VNP_INVALID_GRID = 5,
    VNP_INVALID_CONFIG = 6,
    VNP_IO_ERROR = 7,
    VNP_ORTHOGONAL_POSTSELECTION = 20,
    VNP_NUMERICAL_DEGENERACY = 21,
    VNP_GRID_TOO_SMALL = 22,
    VNP_GRID_OVERFLOW = 23,
    VNP_POSTSELECTION_IMPOSSIBLE = 24,
    VNP_DEGENERATE_OVERLAP = 25,
    VNP_INVALID_MATRIX = 26,
    VNP_TOLERANCE_BREACH = 40,
    VNP_INTERNAL = 41
} vnp_status;

/* Process exit class of a status: 0 ok, 2 validation, 3 physics, 4 tolerance. */
VNP_API int vnp_status_exit_code(vnp_status status);
VNP_API const char *vnp_status_name(vnp_status status);
/* Message of the last failure on this thread; valid until the next call. */
VNP_API const char *vnp_last_error(void);
VNP_API const char *vnp_version(void);

/* Heap strings returned by the library. */
VNP_API void vnp_string_free(char *s);

typedef struct vnp_state vnp_state;
typedef struct vnp_projector vnp_projector;
typedef struct vnp_pointer vnp_pointer;
typedef struct vnp_entangled vnp_entangled;
typedef struct vnp_scenario vnp_scenario;

typedef struct vnp_grid {
    double q_min;
    double dq;
    size_t n;
} vnp_grid;

typedef struct vnp_measurement_config {
    double gamma;
    double hbar;
} vnp_measurement_config;

typedef struct vnp_projector_validation {
    double hermiticity_residual;
    double idempotency_residual;
    double spectrum_residual;
    int passed;
} vnp_projector_validation;

typedef struct vnp_weak_value_report {
    double weak_value[2];
    double overlap[2];
    double phase_chi;
    double normalization;
    double shifted_overlap[2];
    double postselection_probability;
} vnp_weak_value_report;

typedef struct vnp_interference_report {
    double cross_l1;
    double cross_signed;
    double max_abs_cross;
} vnp_interference_report;

/* ---- system states and projectors ------------------------------------- */

/* `amplitudes` holds 2*dim doubles. With renormalize == 0 the vector must
 * already have unit norm (1e-12). */
VNP_API vnp_status vnp_state_create(const double *amplitudes, size_t dim, int renormalize,
                                    vnp_state **out);
VNP_API void vnp_state_destroy(vnp_state *state);
VNP_API size_t vnp_state_dim(const vnp_state *state);
VNP_API vnp_status vnp_state_amplitudes(const vnp_state *state, double *out, size_t capacity);

VNP_API vnp_status vnp_projector_from_state(const vnp_state *v, vnp_projector **out);
/* `matrix` holds 2*dim*dim doubles, row-major. */
VNP_API vnp_status vnp_projector_from_matrix(const double *matrix, size_t dim,
                                             vnp_projector **out);
VNP_API void vnp_projector_destroy(vnp_projector *projector);
VNP_API size_t vnp_projector_dim(const vnp_projector *projector);
VNP_API vnp_status vnp_projector_matrix(const vnp_projector *projector, double *out,
                                        size_t capacity);
VNP_API vnp_status vnp_validate_projector(const double *matrix, size_t dim, double tol,
                                          vnp_projector_validation *out);

VNP_API vnp_status vnp_expectation(const vnp_projector *a, const vnp_state *psi, double *out);
VNP_API vnp_status vnp_weak_value(const vnp_projector *a, const vnp_state *pre,
                                  const vnp_state *post, double out[2]);
VNP_API vnp_status vnp_pancharatnam_phase(const vnp_state *pre, const vnp_state *post,
                                          double *chi, double overlap[2]);
VNP_API vnp_status vnp_normalization_constant(const double weak_value[2],
                                              const double shifted_overlap[2], double *out);

/* ---- pointer wavefunctions --------------------------------------------- */

VNP_API vnp_status vnp_grid_from_extent(double q_min, double q_max, size_t n, vnp_grid *out);
VNP_API vnp_status vnp_pointer_gaussian(const vnp_grid *grid, double center, double sigma,
                                        vnp_pointer **out);
/* `samples` holds 2*grid->n doubles. */
VNP_API vnp_status vnp_pointer_from_samples(const vnp_grid *grid, const double *samples,
                                            vnp_pointer **out);
VNP_API void vnp_pointer_destroy(vnp_pointer *pointer);
VNP_API vnp_status vnp_pointer_grid(const vnp_pointer *pointer, vnp_grid *out);
VNP_API vnp_status vnp_pointer_samples(const vnp_pointer *pointer, double *out, size_t capacity);
VNP_API vnp_status vnp_pointer_translate(const vnp_pointer *pointer, double gamma,
                                         vnp_pointer **out);
VNP_API vnp_status vnp_pointer_overlap(const vnp_pointer *a, const vnp_pointer *b,
                                       double out[2]);
VNP_API vnp_status vnp_pointer_momentum_expectation(const vnp_pointer *pointer, double hbar,
                                                    double *out);
VNP_API vnp_status vnp_pointer_density(const vnp_pointer *pointer, double *out, size_t capacity);

/* ---- measurement ------------------------------------------------------- */

VNP_API vnp_status vnp_ps_measure(const vnp_projector *a, const vnp_state *psi,
                                  const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                  vnp_entangled **out);
VNP_API void vnp_entangled_destroy(vnp_entangled *state);
VNP_API size_t vnp_entangled_dim(const vnp_entangled *state);
VNP_API vnp_status vnp_entangled_norm_squared(const vnp_entangled *state, double *out);
/* Row-major d x n, interleaved complex: 2*d*n doubles. */
VNP_API vnp_status vnp_entangled_amplitudes(const vnp_entangled *state, double *out,
                                            size_t capacity);
VNP_API vnp_status vnp_entangled_marginal(const vnp_entangled *state, double *out,
                                          size_t capacity);
VNP_API vnp_status vnp_postselect(const vnp_entangled *state, const vnp_state *post,
                                  vnp_pointer **pointer, double *probability);

/* Buffers hold grid n doubles. */
VNP_API vnp_status vnp_ps_pointer_density(const vnp_projector *a, const vnp_state *psi,
                                          const vnp_pointer *phi,
                                          const vnp_measurement_config *cfg, double *out,
                                          size_t capacity);
VNP_API vnp_status vnp_ps_cross_term(const vnp_projector *a, const vnp_state *psi,
                                     const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                     double *out, size_t capacity);
VNP_API vnp_status vnp_pps_pointer_state(const vnp_projector *a, const vnp_state *pre,
                                         const vnp_state *post, const vnp_pointer *phi,
                                         const vnp_measurement_config *cfg, vnp_pointer **pointer,
                                         vnp_weak_value_report *report);
/* Any of the four buffers may be NULL. */
VNP_API vnp_status vnp_pps_pointer_density(const vnp_projector *a, const vnp_state *pre,
                                           const vnp_state *post, const vnp_pointer *phi,
                                           const vnp_measurement_config *cfg, double *total,
                                           double *unshifted, double *shifted, double *cross,
                                           size_t capacity);
VNP_API vnp_status vnp_pps_interference(const vnp_projector *a, const vnp_state *pre,
                                        const vnp_state *post, const vnp_pointer *phi,
                                        const vnp_measurement_config *cfg,
                                        vnp_interference_report *out);
VNP_API vnp_status vnp_ps_interference(const vnp_projector *a, const vnp_state *psi,
                                       const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                       vnp_interference_report *out);

/* ---- oracle ------------------------------------------------------------ */

VNP_API vnp_status vnp_oracle_evolve(const vnp_projector *a, const vnp_state *psi,
                                     const vnp_pointer *phi, const vnp_measurement_config *cfg,
                                     vnp_entangled **out);
VNP_API vnp_status vnp_operator_identity_check(const vnp_projector *a,
                                               const vnp_measurement_config *cfg,
                                               const vnp_grid *grid, double *deviation);
VNP_API vnp_status vnp_inverse_identity_check(const vnp_projector *a,
                                              const vnp_measurement_config *cfg,
                                              const vnp_grid *grid, uint64_t seed,
                                              double *deviation);

/* ---- scenarios --------------------------------------------------------- */

VNP_API vnp_status vnp_scenario_load(const char *path, vnp_scenario **out);
VNP_API vnp_status vnp_scenario_parse(const char *json_text, vnp_scenario **out);
VNP_API void vnp_scenario_destroy(vnp_scenario *scenario);
/* Canonical JSON; free with vnp_string_free. */
VNP_API vnp_status vnp_scenario_dump(const vnp_scenario *scenario, char **json_out);
VNP_API vnp_status vnp_scenario_equal(const vnp_scenario *a, const vnp_scenario *b, int *out);

/* The run functions write artifacts into out_dir when it is non-NULL and
 * return the report JSON (free with vnp_string_free). VNP_TOLERANCE_BREACH is
 * returned, with the report still filled in, when an internal check fails. */
VNP_API vnp_status vnp_scenario_run(const vnp_scenario *scenario, const char *out_dir,
                                    char **report_json);
VNP_API vnp_status vnp_scenario_compare(const vnp_scenario *scenario, const char *out_dir,
                                        char **report_json);
VNP_API vnp_status vnp_scenario_sweep(const vnp_scenario *scenario, const char *param,
                                      const double *values, size_t count, const char *out_dir,
                                      char **report_json);
VNP_API vnp_status vnp_verify(size_t trials, uint64_t seed, char **report_json);

#ifdef __cplusplus
}
#endif

#endif /* VNP_VNP_H */
