/* C interface for the cyber-physical resilience library.
 *
 * Every function that can fail returns a cpsres_status; outputs are written
 * through pointers only on CPSRES_OK. cpsres_last_error() returns a
 * thread-local message for the most recent failure on the calling thread.
 * Handles are opaque and must be released with their matching _free call
 * (safe on NULL). */

#ifndef CPSRES_H
#define CPSRES_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpsres_status {
  CPSRES_OK = 0,
  CPSRES_INVALID_ARGUMENT = 1,
  CPSRES_EMPTY_DISTRIBUTION = 2,
  CPSRES_NEGATIVE_FRACTION = 3,
  CPSRES_NOT_NORMALIZED = 4,
  CPSRES_DEGREE_ZERO = 5,
  CPSRES_DEGENERATE_RANGE = 6,
  CPSRES_UNSOLVABLE = 7,
  CPSRES_DOMAIN_ERROR = 8,
  CPSRES_UNSUPPORTED_PARAMS = 9,
  CPSRES_NON_MONOTONE_INDICATOR = 10,
  CPSRES_EMPTY_DEGREES = 11,
  CPSRES_WRONG_DELAY = 12,
  CPSRES_IO_ERROR = 13,
  CPSRES_INTERNAL = 14
} cpsres_status;

typedef enum cpsres_verdict {
  CPSRES_VERDICT_HEALED = 0,
  CPSRES_VERDICT_COLLAPSED = 1,
  CPSRES_VERDICT_UNDECIDED = 2
} cpsres_verdict;

const char* cpsres_status_name(cpsres_status status);
const char* cpsres_last_error(void);

/* ---- degree distributions -------------------------------------------- */

typedef struct cpsres_dist cpsres_dist;

/* Literal forms: "z^k", "d:f,d:f,...", "sf(gamma,k_min,n)",
 * "er(mean,k_min,k_max)". */
cpsres_status cpsres_dist_parse(const char* literal, cpsres_dist** out);
cpsres_status cpsres_dist_from_pairs(const int* degrees,
                                     const double* fractions, size_t count,
                                     cpsres_dist** out);
cpsres_status cpsres_dist_scale_free(double gamma, int k_min, int n_nodes,
                                     cpsres_dist** out);
cpsres_status cpsres_dist_er_truncated(double mean_degree, int k_min,
                                       int k_max, cpsres_dist** out);

cpsres_status cpsres_dist_eval(const cpsres_dist* dist, double z, double* out);
cpsres_status cpsres_dist_mean_degree(const cpsres_dist* dist, double* out);
cpsres_status cpsres_dist_sample(const cpsres_dist* dist, double u, int* out);
cpsres_status cpsres_dist_size(const cpsres_dist* dist, size_t* out);
cpsres_status cpsres_dist_entry(const cpsres_dist* dist, size_t index,
                                int* degree, double* fraction);
/* Canonical literal; needed receives the full length (excluding NUL). The
 * buffer is always NUL-terminated when buflen > 0. */
cpsres_status cpsres_dist_format(const cpsres_dist* dist, char* buf,
                                 size_t buflen, size_t* needed);
void cpsres_dist_free(cpsres_dist* dist);

/* ---- system parameters ------------------------------------------------ */

typedef struct cpsres_params cpsres_params;

/* a >= 1; p and the three loss probabilities in [0,1]; lambda/rho copied. */
cpsres_status cpsres_params_create(int a, double p, double loss_phys,
                                   double loss_conn, double loss_inter,
                                   const cpsres_dist* lambda,
                                   const cpsres_dist* rho,
                                   cpsres_params** out);
void cpsres_params_free(cpsres_params* params);

/* ---- single-step recursions ------------------------------------------ */

cpsres_status cpsres_de_step(const cpsres_params* params, double x,
                             double* out);
cpsres_status cpsres_one_to_one_step(const cpsres_dist* rho, double x,
                                     double* out);
cpsres_status cpsres_epsilon_s(const cpsres_params* params, double* out);
/* Lossless only: de_step(x) = c2 x^2 + c3 x^3 + O(x^4). */
cpsres_status cpsres_taylor_coefficients(const cpsres_params* params,
                                         double* c2, double* c3);
cpsres_status cpsres_contagion_slot(const cpsres_params* params, double y,
                                    double* out);
/* delay_slots >= 0; 0 is the synchronous model. */
cpsres_status cpsres_delayed_de_step(const cpsres_params* params,
                                     int delay_slots, double x, double* out);
/* Valid only for delay_slots == 2. */
cpsres_status cpsres_delayed_step_closed_form(const cpsres_params* params,
                                              int delay_slots, double x,
                                              double* out);

/* ---- trajectories ------------------------------------------------------ */

typedef struct cpsres_trajectory cpsres_trajectory;

/* Pass max_iters/max_slots <= 0 or heal_tol <= 0 for the defaults
 * (10000, 1e-8). */
cpsres_status cpsres_de_trajectory(const cpsres_params* params, double epsilon,
                                   int max_iters, double heal_tol,
                                   cpsres_trajectory** out);
cpsres_status cpsres_one_to_one_trajectory(const cpsres_dist* rho,
                                           double epsilon, int max_iters,
                                           double heal_tol,
                                           cpsres_trajectory** out);
cpsres_status cpsres_delayed_trajectory(const cpsres_params* params,
                                        int delay_slots, double epsilon,
                                        int max_slots, double heal_tol,
                                        cpsres_trajectory** out);

cpsres_status cpsres_trajectory_size(const cpsres_trajectory* traj,
                                     size_t* out);
cpsres_status cpsres_trajectory_density(const cpsres_trajectory* traj,
                                        size_t index, double* out);
cpsres_status cpsres_trajectory_verdict(const cpsres_trajectory* traj,
                                        cpsres_verdict* out);
/* 1 for synchronous trajectories, d+1 for d delay slots. */
cpsres_status cpsres_trajectory_slots_per_iteration(
    const cpsres_trajectory* traj, int* out);
void cpsres_trajectory_free(cpsres_trajectory* traj);

/* ---- thresholds -------------------------------------------------------- */

typedef struct cpsres_threshold cpsres_threshold;

/* Pass resolution <= 0 for the default 1e-3. */
cpsres_status cpsres_epsilon_max(const cpsres_params* params,
                                 double resolution, cpsres_threshold** out);
cpsres_status cpsres_epsilon_max_delayed(const cpsres_params* params,
                                         int delay_slots, double resolution,
                                         cpsres_threshold** out);

cpsres_status cpsres_threshold_value(const cpsres_threshold* threshold,
                                     double* out);
cpsres_status cpsres_threshold_bracket(const cpsres_threshold* threshold,
                                       double* lo, double* hi);
cpsres_status cpsres_threshold_verdicts(const cpsres_threshold* threshold,
                                        cpsres_verdict* at_lo,
                                        cpsres_verdict* at_hi);
void cpsres_threshold_free(cpsres_threshold* threshold);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct cpsres_sweep cpsres_sweep;

/* axis: one of "a", "p", "P_mp", "P_mc", "P_mi", "lambda", "rho",
 * "delay_slots". values are parsed per axis: numbers for the scalar axes,
 * distribution literals for lambda/rho. A failing row is marked failed and
 * the sweep continues. */
cpsres_status cpsres_sweep_run(const cpsres_params* base, const char* axis,
                               const char* const* values, size_t count,
                               double resolution, cpsres_sweep** out);
cpsres_status cpsres_sweep_size(const cpsres_sweep* sweep, size_t* out);
/* epsilon_s/epsilon_max are NaN when unavailable; failed reports the row
 * error flag. Any output pointer may be NULL. */
cpsres_status cpsres_sweep_row(const cpsres_sweep* sweep, size_t index,
                               double* epsilon_s, double* epsilon_max,
                               int* failed);
cpsres_status cpsres_sweep_row_error(const cpsres_sweep* sweep, size_t index,
                                     cpsres_status* error);
void cpsres_sweep_free(cpsres_sweep* sweep);

/* ---- lambda optimization ----------------------------------------------- */

typedef struct cpsres_optimize cpsres_optimize;

/* Exhaustive simplex grid over the given degree support scored by the
 * bisection threshold, then local refinement at grid_step/10. lambda of
 * params is ignored. Pass grid_step <= 0 or resolution <= 0 for the
 * defaults (0.05, 1e-3). */
cpsres_status cpsres_optimize_lambda(const cpsres_params* params,
                                     const int* degrees, size_t count,
                                     double grid_step, double resolution,
                                     cpsres_optimize** out);
cpsres_status cpsres_optimize_best_lambda(const cpsres_optimize* opt,
                                          cpsres_dist** out);
cpsres_status cpsres_optimize_values(const cpsres_optimize* opt,
                                     double* epsilon_max, double* epsilon_s,
                                     long* evaluations);
void cpsres_optimize_free(cpsres_optimize* opt);

/* ---- Monte-Carlo simulation -------------------------------------------- */

typedef struct cpsres_graph cpsres_graph;
typedef struct cpsres_ensemble cpsres_ensemble;

cpsres_status cpsres_graph_build(int n_cyber, int a,
                                 const cpsres_dist* lambda,
                                 const cpsres_dist* rho, uint64_t seed,
                                 cpsres_graph** out);
cpsres_status cpsres_graph_counts(const cpsres_graph* graph, int* n_physical,
                                  int* n_cyber, size_t* physical_edges,
                                  size_t* cyber_edges);
/* Edge-list text: "# physical" section then "# cyber", one "u v" per line. */
cpsres_status cpsres_graph_write_edge_list(const cpsres_graph* graph,
                                           const char* path);
void cpsres_graph_free(cpsres_graph* graph);

/* Trial i derives its graph and dynamics seeds from (base_seed, i). When
 * reassign_links is nonzero (the default schedule), the block-to-node
 * assignment is redrawn every iteration; pass 0 to freeze the build-time
 * blocks.
 * delay_slots >= 1; max_iters <= 0 selects the default 100. */
cpsres_status cpsres_run_ensemble(const cpsres_params* params, int n_cyber,
                                  double epsilon, int delay_slots,
                                  int max_iters, int trials,
                                  uint64_t base_seed, int reassign_links,
                                  cpsres_ensemble** out);
cpsres_status cpsres_ensemble_slots(const cpsres_ensemble* ensemble,
                                    size_t* out);
cpsres_status cpsres_ensemble_stat(const cpsres_ensemble* ensemble,
                                   size_t slot, double* mean, double* stddev);
cpsres_status cpsres_ensemble_trials(const cpsres_ensemble* ensemble,
                                     int* out);
cpsres_status cpsres_ensemble_slots_per_iteration(
    const cpsres_ensemble* ensemble, int* out);
/* Per-trial records; a trial that absorbed early keeps its final value for
 * later slots. */
cpsres_status cpsres_ensemble_trial_length(const cpsres_ensemble* ensemble,
                                           int trial, size_t* out);
cpsres_status cpsres_ensemble_trial_fraction(const cpsres_ensemble* ensemble,
                                             int trial, size_t slot,
                                             double* physical, double* cyber);
void cpsres_ensemble_free(cpsres_ensemble* ensemble);

#ifdef __cplusplus
}
#endif

#endif /* CPSRES_H */
