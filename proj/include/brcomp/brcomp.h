/* Copyright 2026 The brcomp Authors.
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

/* C interface to the brcomp composition accountant.
 *
 * Every function returns a brcomp_status. On failure, brcomp_last_error()
 * returns a message for the calling thread, valid until the next call on
 * that thread. Strings returned through char** out-parameters are owned by
 * the caller and released with brcomp_string_free(). */

#ifndef BRCOMP_BRCOMP_H_
#define BRCOMP_BRCOMP_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BRCOMP_OK = 0,
  BRCOMP_E_DOMAIN = 1,       /* Argument outside the mathematical domain. */
  BRCOMP_E_PRECONDITION = 2, /* Method precondition not met. */
  BRCOMP_E_CAP = 3,          /* Size cap exceeded. */
  BRCOMP_E_UNSUPPORTED = 4,  /* Method does not support the request. */
  BRCOMP_E_IO = 5,
  BRCOMP_E_NULL = 6, /* Required pointer argument was NULL. */
  BRCOMP_E_INTERNAL = 7,
} brcomp_status;

const char* brcomp_last_error(void);
const char* brcomp_status_name(brcomp_status s);
void brcomp_string_free(char* s);

/* ---- Methods ---------------------------------------------------------- */

typedef enum {
  BRCOMP_METHOD_BASIC = 0,
  BRCOMP_METHOD_DP_OPTCOMP = 1,
  BRCOMP_METHOD_DP_OPTCOMP_HALF = 2,
  BRCOMP_METHOD_BR_OPTCOMP = 3,
  BRCOMP_METHOD_ADAPTIVE_LB = 4,
  BRCOMP_METHOD_DR19 = 5,
  BRCOMP_METHOD_DRV10 = 6,
  BRCOMP_METHOD_OPTKL = 7,
  BRCOMP_METHOD_MGF = 8,
  BRCOMP_METHOD_EDGE_HIGH = 9,
  BRCOMP_METHOD_EDGE_LOW = 10,
} brcomp_method;

int brcomp_method_count(void);
/* Returns NULL for an unknown id. */
const char* brcomp_method_name(brcomp_method m);
brcomp_status brcomp_method_from_name(const char* name, brcomp_method* out);

typedef struct {
  int t_grid;
  int refine_iters;
  int depth_cap;
  double lambda_max;
  int threads; /* <= 0: BRCOMP_THREADS or hardware concurrency. */
} brcomp_options;

void brcomp_options_default(brcomp_options* opts);

/* ---- Accountant ------------------------------------------------------- */

/* delta_g(eps_g) for eps[0..k). meta may be NULL. */
brcomp_status brcomp_compute_delta(brcomp_method m, const double* eps,
                                   size_t k, double eps_g,
                                   const brcomp_options* opts, double* out,
                                   char** meta);
/* eps_g(delta_g), delta_g in (0, 1). meta may be NULL. */
brcomp_status brcomp_compute_epsilon(brcomp_method m, const double* eps,
                                     size_t k, double delta_g,
                                     const brcomp_options* opts, double* out,
                                     char** meta);

typedef struct brcomp_curve brcomp_curve;

typedef struct {
  int64_t k;
  brcomp_method method;
  double eps;
  double delta_g;
  double eps_g;
  const char* solver_meta; /* Owned by the curve. */
} brcomp_curve_row;

brcomp_status brcomp_curve_compute(double eps, int64_t k_max, double delta_g,
                                   const brcomp_method* methods,
                                   size_t num_methods,
                                   const brcomp_options* opts,
                                   brcomp_curve** out);
size_t brcomp_curve_size(const brcomp_curve* c);
brcomp_status brcomp_curve_row_at(const brcomp_curve* c, size_t i,
                                  brcomp_curve_row* out);
void brcomp_curve_free(brcomp_curve* c);

brcomp_status brcomp_max_queries(brcomp_method m, double eps,
                                 double eps_g_budget, double delta_g,
                                 int64_t k_limit, const brcomp_options* opts,
                                 int64_t* out);

typedef enum { BRCOMP_VALIDATE_FAST = 0, BRCOMP_VALIDATE_FULL = 1 } brcomp_level;

/* Writes a JSON array of check records to *json. */
brcomp_status brcomp_validate(brcomp_level level, uint64_t seed, int threads,
                              char** json, int* all_pass);

/* ---- GRR and finite mechanisms --------------------------------------- */

typedef struct {
  double p;
  double q;
  double one_minus_p;
  double one_minus_q;
} brcomp_grr;

brcomp_status brcomp_grr_probs(double eps, double t, brcomp_grr* out);

/* *found = 0 when no witness exists. */
brcomp_status brcomp_br_witness(const double* px, const double* px_prime,
                                size_t n, double eps, int* found, double* t);
brcomp_status brcomp_hockey_stick(const double* px, const double* px_prime,
                                  size_t n, double eps_g, double* out);

typedef struct brcomp_quality_table brcomp_quality_table;

brcomp_status brcomp_quality_table_parse(const char* json,
                                         brcomp_quality_table** out);
void brcomp_quality_table_free(brcomp_quality_table* t);
brcomp_status brcomp_quality_range(const brcomp_quality_table* t,
                                   double* out);
brcomp_status brcomp_quality_sensitivity(const brcomp_quality_table* t,
                                         double* out);

typedef enum {
  BRCOMP_NORMALIZER_SENSITIVITY = 0,
  BRCOMP_NORMALIZER_RANGE = 1,
} brcomp_normalizer;

/* Writes up to cap probabilities; *n receives the outcome count. */
brcomp_status brcomp_exp_mech_probs(const brcomp_quality_table* t, double eps,
                                    int dataset, brcomp_normalizer normalizer,
                                    double* out, size_t cap, size_t* n,
                                    int* degenerate);

/* Bit matrices are row-major, rows * d bytes of 0/1. out has d entries. */
brcomp_status brcomp_counting_query_probs(const uint8_t* bits, size_t rows,
                                          int d, double eps, double* out);
brcomp_status brcomp_cq_t_value(const uint8_t* x, size_t x_rows,
                                const uint8_t* x_prime, size_t x_prime_rows,
                                int d, double eps, double* out);

/* ---- Nonadaptive composition ----------------------------------------- */

typedef struct {
  double delta;
  double t;
  int64_t ell; /* -1 for an endpoint or the constant region. */
  int constant_region;
} brcomp_nonadaptive;

brcomp_status brcomp_delta_hom_fixed_t(double eps, int64_t k, double t,
                                       double eps_g, double* out);
brcomp_status brcomp_delta_het_fixed_t(const double* eps, const double* t,
                                       size_t k, double eps_g, double* out);
brcomp_status brcomp_delta_opt_nonadaptive(double eps, int64_t k, double eps_g,
                                           brcomp_nonadaptive* out);
brcomp_status brcomp_f_ell(double eps, int64_t k, double eps_g, int64_t ell,
                           double t, double* out);
brcomp_status brcomp_df_ell_dt(double eps, int64_t k, double eps_g,
                               int64_t ell, double t, double* out);
brcomp_status brcomp_dp_optcomp_hom(double eps_dp, int64_t k, double eps_g,
                                    double* out);
brcomp_status brcomp_dp_optcomp_het(const double* eps_dp, size_t k,
                                    double eps_g, double* out);

/* ---- Adaptive composition -------------------------------------------- */

/* Heap-ordered thresholds: node n has children 2n+1 (outcome 0) and 2n+2. */
typedef struct brcomp_strategy brcomp_strategy;

brcomp_status brcomp_strategy_create(int depth, const double* t, size_t n,
                                     brcomp_strategy** out);
brcomp_status brcomp_strategy_constant(const double* t_per_level, int depth,
                                       brcomp_strategy** out);
int brcomp_strategy_depth(const brcomp_strategy* s);
size_t brcomp_strategy_size(const brcomp_strategy* s);
const double* brcomp_strategy_thresholds(const brcomp_strategy* s);
void brcomp_strategy_free(brcomp_strategy* s);

brcomp_status brcomp_strategy_value(const brcomp_strategy* s,
                                    const double* eps, size_t k, double eps_g,
                                    double* out);

/* strategy may be NULL. */
brcomp_status brcomp_adaptive_lb(const double* eps, size_t k, double eps_g,
                                 const brcomp_options* opts, double* out,
                                 brcomp_strategy** strategy);
brcomp_status brcomp_adaptive_edge_high(double eps, int64_t k, double eps_g,
                                        double* out);
brcomp_status brcomp_adaptive_edge_low(double eps, int64_t k, double eps_g,
                                       double* out);

typedef struct {
  double delta_nonadaptive;
  double t_nonadaptive;
  double delta_adaptive_lb;
  double gap;
  double tolerance;
  int strict;
} brcomp_gap;

/* strategy may be NULL. */
brcomp_status brcomp_gap_certificate(double eps, int64_t k, double eps_g,
                                     const brcomp_options* opts,
                                     brcomp_gap* out,
                                     brcomp_strategy** strategy);

/* ---- Moment bounds ----------------------------------------------------- */

typedef enum {
  BRCOMP_U_IMPROVED_DRV10 = 0,
  BRCOMP_U_DR19 = 1,
  BRCOMP_U_KL_IMPROVED_DR19 = 2,
  BRCOMP_U_GENERAL_MGF = 3,
} brcomp_u_kind;

typedef struct {
  double value;
  double lambda;
  int at_lambda_ceiling;
  int capped;
} brcomp_bound;

double brcomp_max_kl(double eps);
double brcomp_h_eps(double eps, double lambda);
brcomp_status brcomp_u_function(brcomp_u_kind kind, double eps, double lambda,
                                double* out);
brcomp_status brcomp_bound_delta(brcomp_u_kind kind, const double* eps,
                                 size_t k, double eps_g, double lambda_max,
                                 brcomp_bound* out);
brcomp_status brcomp_bound_epsilon(brcomp_u_kind kind, const double* eps,
                                   size_t k, double delta_g, double lambda_max,
                                   brcomp_bound* out);
brcomp_status brcomp_optkl_epsilon(const double* eps, size_t k, double delta_g,
                                   double* out);

/* ---- Oracles ------------------------------------------------------------ */

typedef struct {
  double delta;
  double grid_delta;
  double resolution_bound;
  double argmax[3];
  int k;
} brcomp_brute_force;

brcomp_status brcomp_brute_force_nonadaptive(const double* eps, size_t k,
                                             double eps_g, int grid_points,
                                             brcomp_brute_force* out);
brcomp_status brcomp_brute_force_edge(double eps, int k, double eps_g,
                                      int high, int grid_points,
                                      brcomp_brute_force* out);

typedef struct {
  double delta_hat;
  int64_t n_samples;
  uint64_t seed;
  double half_width_95;
  double p_tail;
  double q_tail;
} brcomp_sim_report;

brcomp_status brcomp_simulate(const brcomp_strategy* s, const double* eps,
                              size_t k, double eps_g, int64_t n, uint64_t seed,
                              int threads, brcomp_sim_report* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* BRCOMP_BRCOMP_H_ */
