// Copyright 2026 The ciss-frg Authors
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

/* C interface to the ciss library. All functions return a ciss_status and
 * report details through ciss_last_error(), which is thread-local. */
#ifndef CISS_CISS_H
#define CISS_CISS_H

#include <stddef.h>
#include <stdint.h>

#if defined(CISS_BUILDING_LIBRARY)
#define CISS_API __attribute__((visibility("default")))
#else
#define CISS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ciss_status {
  CISS_OK = 0,
  CISS_ERR_DOMAIN = 1,
  CISS_ERR_NUMERICAL = 2,
  CISS_ERR_INVALID_ARGUMENT = 3
} ciss_status;

CISS_API const char* ciss_version(void);
/* Message of the last failing call on this thread; "" if none. */
CISS_API const char* ciss_last_error(void);

/* ---- model and flow settings ---- */

typedef struct ciss_model {
  double t_s, t_p, delta;
  double u, j, jp;
  double temperature;
} ciss_model;

/* Zero for lambda0 and divergence_threshold selects the defaults. */
typedef struct ciss_flow_settings {
  int k_points;
  double l_max;
  double divergence_threshold;
  double lambda0;
  double ode_tolerance;
  double abs_tolerance;
  double initial_step;
  double min_step;
  long max_steps;
  double convergence_tolerance;
  int divergent_only;
} ciss_flow_settings;

CISS_API void ciss_model_default(ciss_model* m);
CISS_API void ciss_flow_settings_default(ciss_flow_settings* s);
/* Fills in defaults that depend on the model. */
CISS_API ciss_status ciss_flow_settings_resolve(const ciss_model* m, ciss_flow_settings* s);

enum { CISS_VERTEX_CLASSES = 8 };
CISS_API const char* ciss_vertex_class_name(int c);

/* ---- bubbles ---- */

typedef enum ciss_bubble_kind { CISS_BUBBLE_PP = 0, CISS_BUBBLE_PH = 1 } ciss_bubble_kind;
/* Bands: 0 = s, 1 = px, 2 = py. lambda may be INFINITY. */
CISS_API ciss_status ciss_bubble(const ciss_model* m, ciss_bubble_kind kind, int band_a, int band_b,
                                 double lambda, double* value);

/* ---- flow ---- */

typedef enum ciss_termination {
  CISS_CONVERGED = 0,
  CISS_DIVERGED = 1,
  CISS_MAX_L_REACHED = 2
} ciss_termination;
CISS_API const char* ciss_termination_name(int t);

typedef struct ciss_flow ciss_flow;

typedef struct ciss_flow_sample {
  double l, lambda;
  double v[CISS_VERTEX_CLASSES];
  double leakage;
} ciss_flow_sample;

typedef struct ciss_flow_summary {
  int termination;
  double l_div; /* NaN unless diverged */
  int dominant_class;
  double final_v[CISS_VERTEX_CLASSES];
  double max_leakage;
  long accepted_steps, rejected_steps;
  double grid_error;
  ciss_flow_settings settings; /* resolved */
} ciss_flow_summary;

CISS_API ciss_status ciss_flow_run(const ciss_model* m, const ciss_flow_settings* s, ciss_flow** out);
CISS_API size_t ciss_flow_sample_count(const ciss_flow* f);
CISS_API ciss_status ciss_flow_get_sample(const ciss_flow* f, size_t i, ciss_flow_sample* out);
CISS_API ciss_status ciss_flow_get_summary(const ciss_flow* f, ciss_flow_summary* out);
CISS_API void ciss_flow_free(ciss_flow* f);

/* ---- channels ---- */

CISS_API size_t ciss_channel_name_count(void);
CISS_API const char* ciss_channel_name(size_t i);
/* su2, parity and trs receive static strings. */
CISS_API ciss_status ciss_channel_signature(const char* name, int m_s, const char** su2,
                                            const char** parity, const char** trs);

typedef struct ciss_table ciss_table;
typedef struct ciss_table_row {
  int j_s, m_s, m_l;
  const char* operator_text; /* owned by the table */
  const char* su2;
  const char* parity;
  const char* trs;
} ciss_table_row;

CISS_API ciss_status ciss_symmetry_table(int m_s, ciss_table** out);
CISS_API size_t ciss_table_row_count(const ciss_table* t);
CISS_API ciss_status ciss_table_get_row(const ciss_table* t, size_t i, ciss_table_row* out);
CISS_API void ciss_table_free(ciss_table* t);

/* ---- susceptibilities ---- */

typedef struct ciss_sweep ciss_sweep;
typedef struct ciss_sweep_options {
  int m_s;
  int threads;
  double attribution_ratio;
} ciss_sweep_options;
typedef struct ciss_sweep_row {
  double temperature, delta;
  const char* channel; /* owned by the sweep */
  double chi;          /* NaN when diverged or failed */
  int diverged;
  double l_div;
  const char* error; /* "" unless this point failed numerically */
} ciss_sweep_row;

CISS_API void ciss_sweep_options_default(ciss_sweep_options* o);
CISS_API ciss_status ciss_sweep_run(const ciss_model* base, const ciss_flow_settings* s,
                                    const double* temperatures, size_t n_t, const double* deltas,
                                    size_t n_delta, const char* const* channels, size_t n_channels,
                                    const ciss_sweep_options* opt, ciss_sweep** out);
CISS_API size_t ciss_sweep_row_count(const ciss_sweep* w);
CISS_API ciss_status ciss_sweep_get_row(const ciss_sweep* w, size_t i, ciss_sweep_row* out);
CISS_API void ciss_sweep_free(ciss_sweep* w);

typedef enum ciss_chi0_source { CISS_CHI0_LATTICE = 0, CISS_CHI0_CONTINUUM = 1 } ciss_chi0_source;
typedef struct ciss_rpa_result {
  int diverged;
  double chi0;
  double value;
} ciss_rpa_result;
/* lambda = 0 uses the default flow start scale; INFINITY the bare bubble. */
CISS_API ciss_status ciss_rpa(const ciss_model* m, ciss_chi0_source source, double lambda,
                              int k_points, ciss_rpa_result* out);

/* ---- mean field ---- */

typedef struct ciss_gl {
  double r, c0, c2;
  double r_error, c0_error;
  double chi_tilde, k2;
} ciss_gl;

CISS_API ciss_status ciss_gl_coefficients(const ciss_model* m, ciss_gl* out);
CISS_API ciss_status ciss_order_amplitude(const ciss_gl* c, double* amplitude);
CISS_API ciss_status ciss_small_gap_amplitude(const ciss_model* m, double* amplitude);
/* phi[2*i], phi[2*i+1] are the real and imaginary parts of Phi_{+1,0,-1}. */
CISS_API ciss_status ciss_free_energy(const ciss_gl* c, const double phi[6], double delta_zeeman,
                                      double* f);
CISS_API ciss_status ciss_zeeman_selection(const ciss_gl* c, double delta_zeeman, double phi[6],
                                           int* degenerate, double* delta_f);
CISS_API ciss_status ciss_soi_band_edge(const ciss_model* m, double phi_amp, double* lambda_so);
/* lambda_so has n_k entries, energies 6 * n_k (ascending per k). */
CISS_API ciss_status ciss_soi_spectrum(const ciss_model* m, double phi_amp, const double* k,
                                       size_t n_k, double* lambda_so, double* energies);

/* ---- Coulomb estimates ---- */

typedef struct ciss_sampler {
  uint64_t n_samples;
  uint64_t seed;
  int has_seed;
  int substreams;
  double max_rel_error;
  int threads;
} ciss_sampler;

typedef struct ciss_estimate {
  double value, std_error;
  uint64_t n_samples, seed;
} ciss_estimate;

typedef struct ciss_interactions {
  ciss_estimate u, j, jp;
  ciss_estimate v_xzzx, v_zxzx, v_zzxx;
} ciss_interactions;

typedef struct ciss_wannier {
  double a_perp, a_par, e2;
} ciss_wannier;

CISS_API void ciss_sampler_default(ciss_sampler* s);
/* Orbitals: 0 = x, 1 = y, 2 = z. */
CISS_API ciss_status ciss_coulomb_element(int n1, int n2, int n3, int n4, const ciss_wannier* w,
                                          const ciss_sampler* s, ciss_estimate* out);
CISS_API ciss_status ciss_coulomb_interactions(const ciss_wannier* w, const ciss_sampler* s,
                                               ciss_interactions* out);

typedef struct ciss_zeta_sweep ciss_zeta_sweep;
typedef struct ciss_zeta_row {
  double zeta;
  ciss_interactions estimate; /* units of e0 */
  const char* error;          /* "" on success */
} ciss_zeta_row;

CISS_API ciss_status ciss_zeta_sweep_run(double e0, const double* zetas, size_t n,
                                         const ciss_sampler* s, ciss_zeta_sweep** out);
CISS_API size_t ciss_zeta_sweep_row_count(const ciss_zeta_sweep* z);
CISS_API ciss_status ciss_zeta_sweep_get_row(const ciss_zeta_sweep* z, size_t i, ciss_zeta_row* out);
CISS_API void ciss_zeta_sweep_free(ciss_zeta_sweep* z);

#ifdef __cplusplus
}
#endif

#endif
