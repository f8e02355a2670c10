#include "cpsres.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "core/de_engine.hpp"
#include "core/degree_dist.hpp"
#include "core/delay_de.hpp"
#include "core/mc_sim.hpp"
#include "core/threshold_opt.hpp"

struct cpsres_dist {
  cpsres::DegreeDistribution impl;
};
struct cpsres_params {
  cpsres::SystemParams impl;
};
struct cpsres_trajectory {
  std::vector<double> densities;
  cpsres::Verdict verdict;
  int slots_per_iteration;
};
struct cpsres_threshold {
  cpsres::ThresholdResult impl;
};
struct cpsres_sweep {
  std::vector<cpsres::SweepRow> rows;
};
struct cpsres_optimize {
  cpsres::OptimizeResult impl;
};
struct cpsres_graph {
  cpsres::CpsGraph impl;
};
struct cpsres_ensemble {
  cpsres::EnsembleResult impl;
};

namespace {

thread_local std::string g_last_error;

cpsres_status to_status(cpsres::ErrorCode code) {
  using cpsres::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument:
      return CPSRES_INVALID_ARGUMENT;
    case ErrorCode::empty_distribution:
      return CPSRES_EMPTY_DISTRIBUTION;
    case ErrorCode::negative_fraction:
      return CPSRES_NEGATIVE_FRACTION;
    case ErrorCode::not_normalized:
      return CPSRES_NOT_NORMALIZED;
    case ErrorCode::degree_zero:
      return CPSRES_DEGREE_ZERO;
    case ErrorCode::degenerate_range:
      return CPSRES_DEGENERATE_RANGE;
    case ErrorCode::unsolvable:
      return CPSRES_UNSOLVABLE;
    case ErrorCode::domain_error:
      return CPSRES_DOMAIN_ERROR;
    case ErrorCode::unsupported_params:
      return CPSRES_UNSUPPORTED_PARAMS;
    case ErrorCode::non_monotone_indicator:
      return CPSRES_NON_MONOTONE_INDICATOR;
    case ErrorCode::empty_degrees:
      return CPSRES_EMPTY_DEGREES;
    case ErrorCode::wrong_delay:
      return CPSRES_WRONG_DELAY;
    case ErrorCode::io_error:
      return CPSRES_IO_ERROR;
  }
  return CPSRES_INTERNAL;
}

cpsres_verdict to_c_verdict(cpsres::Verdict v) {
  switch (v) {
    case cpsres::Verdict::healed:
      return CPSRES_VERDICT_HEALED;
    case cpsres::Verdict::collapsed:
      return CPSRES_VERDICT_COLLAPSED;
    case cpsres::Verdict::undecided:
      return CPSRES_VERDICT_UNDECIDED;
  }
  return CPSRES_VERDICT_UNDECIDED;
}

template <typename Fn>
cpsres_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CPSRES_OK;
  } catch (const cpsres::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CPSRES_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CPSRES_INTERNAL;
  }
}

cpsres_status arg_error(const char* message) {
  g_last_error = message;
  return CPSRES_INVALID_ARGUMENT;
}

int effective_iters(int requested) {
  return requested <= 0 ? cpsres::kDefaultMaxIters : requested;
}

double effective_tol(double requested) {
  return requested <= 0.0 ? cpsres::kDefaultHealTol : requested;
}

double effective_resolution(double requested) {
  return requested <= 0.0 ? cpsres::kDefaultResolution : requested;
}

}  // namespace

extern "C" {

const char* cpsres_status_name(cpsres_status status) {
  switch (status) {
    case CPSRES_OK:
      return "Ok";
    case CPSRES_INVALID_ARGUMENT:
      return "InvalidArgument";
    case CPSRES_EMPTY_DISTRIBUTION:
      return "EmptyDistribution";
    case CPSRES_NEGATIVE_FRACTION:
      return "NegativeFraction";
    case CPSRES_NOT_NORMALIZED:
      return "NotNormalized";
    case CPSRES_DEGREE_ZERO:
      return "DegreeZero";
    case CPSRES_DEGENERATE_RANGE:
      return "DegenerateRange";
    case CPSRES_UNSOLVABLE:
      return "Unsolvable";
    case CPSRES_DOMAIN_ERROR:
      return "DomainError";
    case CPSRES_UNSUPPORTED_PARAMS:
      return "UnsupportedParams";
    case CPSRES_NON_MONOTONE_INDICATOR:
      return "NonMonotoneIndicator";
    case CPSRES_EMPTY_DEGREES:
      return "EmptyDegrees";
    case CPSRES_WRONG_DELAY:
      return "WrongDelay";
    case CPSRES_IO_ERROR:
      return "IoError";
    case CPSRES_INTERNAL:
      return "Internal";
  }
  return "Unknown";
}

const char* cpsres_last_error(void) { return g_last_error.c_str(); }

/* ---- degree distributions -------------------------------------------- */

cpsres_status cpsres_dist_parse(const char* literal, cpsres_dist** out) {
  if (literal == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_dist_parse");
  return guarded([&] { *out = new cpsres_dist{cpsres::parse_dist(literal)}; });
}

cpsres_status cpsres_dist_from_pairs(const int* degrees,
                                     const double* fractions, size_t count,
                                     cpsres_dist** out) {
  if (degrees == nullptr || fractions == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_dist_from_pairs");
  return guarded([&] {
    std::vector<cpsres::DegreeDistribution::Entry> entries;
    entries.reserve(count);
    for (size_t i = 0; i < count; ++i)
      entries.emplace_back(degrees[i], fractions[i]);
    *out = new cpsres_dist{
        cpsres::DegreeDistribution::from_coefficients(entries)};
  });
}

cpsres_status cpsres_dist_scale_free(double gamma, int k_min, int n_nodes,
                                     cpsres_dist** out) {
  if (out == nullptr) return arg_error("null output pointer");
  return guarded([&] {
    *out = new cpsres_dist{cpsres::build_scale_free(gamma, k_min, n_nodes)};
  });
}

cpsres_status cpsres_dist_er_truncated(double mean_degree, int k_min,
                                       int k_max, cpsres_dist** out) {
  if (out == nullptr) return arg_error("null output pointer");
  return guarded([&] {
    *out =
        new cpsres_dist{cpsres::build_er_truncated(mean_degree, k_min, k_max)};
  });
}

cpsres_status cpsres_dist_eval(const cpsres_dist* dist, double z,
                               double* out) {
  if (dist == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_dist_eval");
  return guarded([&] { *out = dist->impl.eval(z); });
}

cpsres_status cpsres_dist_mean_degree(const cpsres_dist* dist, double* out) {
  if (dist == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_dist_mean_degree");
  return guarded([&] { *out = dist->impl.derivative_at_one(); });
}

cpsres_status cpsres_dist_sample(const cpsres_dist* dist, double u, int* out) {
  if (dist == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_dist_sample");
  return guarded([&] { *out = dist->impl.sample(u); });
}

cpsres_status cpsres_dist_size(const cpsres_dist* dist, size_t* out) {
  if (dist == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_dist_size");
  *out = dist->impl.entries().size();
  return CPSRES_OK;
}

cpsres_status cpsres_dist_entry(const cpsres_dist* dist, size_t index,
                                int* degree, double* fraction) {
  if (dist == nullptr || degree == nullptr || fraction == nullptr)
    return arg_error("null argument to cpsres_dist_entry");
  if (index >= dist->impl.entries().size())
    return arg_error("distribution entry index out of range");
  *degree = dist->impl.entries()[index].first;
  *fraction = dist->impl.entries()[index].second;
  return CPSRES_OK;
}

cpsres_status cpsres_dist_format(const cpsres_dist* dist, char* buf,
                                 size_t buflen, size_t* needed) {
  if (dist == nullptr) return arg_error("null distribution handle");
  return guarded([&] {
    const std::string text = dist->impl.format();
    if (needed != nullptr) *needed = text.size();
    if (buf != nullptr && buflen > 0) {
      const size_t copy = std::min(buflen - 1, text.size());
      std::memcpy(buf, text.data(), copy);
      buf[copy] = '\0';
    }
  });
}

void cpsres_dist_free(cpsres_dist* dist) { delete dist; }

/* ---- system parameters ------------------------------------------------ */

cpsres_status cpsres_params_create(int a, double p, double loss_phys,
                                   double loss_conn, double loss_inter,
                                   const cpsres_dist* lambda,
                                   const cpsres_dist* rho,
                                   cpsres_params** out) {
  if (lambda == nullptr || rho == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_params_create");
  return guarded([&] {
    *out = new cpsres_params{cpsres::SystemParams(
        a, p, loss_phys, loss_conn, loss_inter, lambda->impl, rho->impl)};
  });
}

void cpsres_params_free(cpsres_params* params) { delete params; }

/* ---- single-step recursions ------------------------------------------ */

cpsres_status cpsres_de_step(const cpsres_params* params, double x,
                             double* out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_de_step");
  return guarded([&] { *out = cpsres::de_step(x, params->impl); });
}

cpsres_status cpsres_one_to_one_step(const cpsres_dist* rho, double x,
                                     double* out) {
  if (rho == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_one_to_one_step");
  return guarded([&] { *out = cpsres::one_to_one_step(x, rho->impl); });
}

cpsres_status cpsres_epsilon_s(const cpsres_params* params, double* out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_epsilon_s");
  return guarded([&] { *out = cpsres::epsilon_s(params->impl); });
}

cpsres_status cpsres_taylor_coefficients(const cpsres_params* params,
                                         double* c2, double* c3) {
  if (params == nullptr || c2 == nullptr || c3 == nullptr)
    return arg_error("null argument to cpsres_taylor_coefficients");
  return guarded([&] {
    const cpsres::TaylorCoefficients c =
        cpsres::taylor_coefficients(params->impl);
    *c2 = c.c2;
    *c3 = c.c3;
  });
}

cpsres_status cpsres_contagion_slot(const cpsres_params* params, double y,
                                    double* out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_contagion_slot");
  return guarded([&] { *out = cpsres::contagion_slot(y, params->impl); });
}

cpsres_status cpsres_delayed_de_step(const cpsres_params* params,
                                     int delay_slots, double x, double* out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_delayed_de_step");
  return guarded([&] {
    *out = cpsres::delayed_de_step(
        x, cpsres::DelayParams(params->impl, delay_slots));
  });
}

cpsres_status cpsres_delayed_step_closed_form(const cpsres_params* params,
                                              int delay_slots, double x,
                                              double* out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_delayed_step_closed_form");
  return guarded([&] {
    *out = cpsres::delayed_step_closed_form(
        x, cpsres::DelayParams(params->impl, delay_slots));
  });
}

/* ---- trajectories ------------------------------------------------------ */

cpsres_status cpsres_de_trajectory(const cpsres_params* params, double epsilon,
                                   int max_iters, double heal_tol,
                                   cpsres_trajectory** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_de_trajectory");
  return guarded([&] {
    cpsres::Trajectory traj =
        cpsres::de_trajectory(params->impl, epsilon, effective_iters(max_iters),
                              effective_tol(heal_tol));
    *out = new cpsres_trajectory{std::move(traj.densities), traj.verdict, 1};
  });
}

cpsres_status cpsres_one_to_one_trajectory(const cpsres_dist* rho,
                                           double epsilon, int max_iters,
                                           double heal_tol,
                                           cpsres_trajectory** out) {
  if (rho == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_one_to_one_trajectory");
  return guarded([&] {
    cpsres::Trajectory traj = cpsres::one_to_one_trajectory(
        rho->impl, epsilon, effective_iters(max_iters),
        effective_tol(heal_tol));
    *out = new cpsres_trajectory{std::move(traj.densities), traj.verdict, 1};
  });
}

cpsres_status cpsres_delayed_trajectory(const cpsres_params* params,
                                        int delay_slots, double epsilon,
                                        int max_slots, double heal_tol,
                                        cpsres_trajectory** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_delayed_trajectory");
  return guarded([&] {
    cpsres::SlotTrajectory traj = cpsres::delayed_trajectory(
        cpsres::DelayParams(params->impl, delay_slots), epsilon,
        effective_iters(max_slots), effective_tol(heal_tol));
    *out = new cpsres_trajectory{std::move(traj.densities), traj.verdict,
                                 traj.slots_per_iteration};
  });
}

cpsres_status cpsres_trajectory_size(const cpsres_trajectory* traj,
                                     size_t* out) {
  if (traj == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_trajectory_size");
  *out = traj->densities.size();
  return CPSRES_OK;
}

cpsres_status cpsres_trajectory_density(const cpsres_trajectory* traj,
                                        size_t index, double* out) {
  if (traj == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_trajectory_density");
  if (index >= traj->densities.size())
    return arg_error("trajectory index out of range");
  *out = traj->densities[index];
  return CPSRES_OK;
}

cpsres_status cpsres_trajectory_verdict(const cpsres_trajectory* traj,
                                        cpsres_verdict* out) {
  if (traj == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_trajectory_verdict");
  *out = to_c_verdict(traj->verdict);
  return CPSRES_OK;
}

cpsres_status cpsres_trajectory_slots_per_iteration(
    const cpsres_trajectory* traj, int* out) {
  if (traj == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_trajectory_slots_per_iteration");
  *out = traj->slots_per_iteration;
  return CPSRES_OK;
}

void cpsres_trajectory_free(cpsres_trajectory* traj) { delete traj; }

/* ---- thresholds -------------------------------------------------------- */

cpsres_status cpsres_epsilon_max(const cpsres_params* params,
                                 double resolution, cpsres_threshold** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_epsilon_max");
  return guarded([&] {
    *out = new cpsres_threshold{
        cpsres::epsilon_max(params->impl, effective_resolution(resolution))};
  });
}

cpsres_status cpsres_epsilon_max_delayed(const cpsres_params* params,
                                         int delay_slots, double resolution,
                                         cpsres_threshold** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_epsilon_max_delayed");
  return guarded([&] {
    *out = new cpsres_threshold{cpsres::epsilon_max_delayed(
        cpsres::DelayParams(params->impl, delay_slots),
        effective_resolution(resolution))};
  });
}

cpsres_status cpsres_threshold_value(const cpsres_threshold* threshold,
                                     double* out) {
  if (threshold == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_threshold_value");
  *out = threshold->impl.epsilon_max;
  return CPSRES_OK;
}

cpsres_status cpsres_threshold_bracket(const cpsres_threshold* threshold,
                                       double* lo, double* hi) {
  if (threshold == nullptr || lo == nullptr || hi == nullptr)
    return arg_error("null argument to cpsres_threshold_bracket");
  *lo = threshold->impl.lo;
  *hi = threshold->impl.hi;
  return CPSRES_OK;
}

cpsres_status cpsres_threshold_verdicts(const cpsres_threshold* threshold,
                                        cpsres_verdict* at_lo,
                                        cpsres_verdict* at_hi) {
  if (threshold == nullptr || at_lo == nullptr || at_hi == nullptr)
    return arg_error("null argument to cpsres_threshold_verdicts");
  *at_lo = to_c_verdict(threshold->impl.verdict_lo);
  *at_hi = to_c_verdict(threshold->impl.verdict_hi);
  return CPSRES_OK;
}

void cpsres_threshold_free(cpsres_threshold* threshold) { delete threshold; }

/* ---- sweeps ------------------------------------------------------------ */

cpsres_status cpsres_sweep_run(const cpsres_params* base, const char* axis,
                               const char* const* values, size_t count,
                               double resolution, cpsres_sweep** out) {
  if (base == nullptr || axis == nullptr || values == nullptr ||
      out == nullptr)
    return arg_error("null argument to cpsres_sweep_run");
  return guarded([&] {
    const cpsres::SweepAxis parsed_axis = cpsres::parse_sweep_axis(axis);
    std::vector<cpsres::AxisValue> axis_values;
    axis_values.reserve(count);
    const bool dist_axis = parsed_axis == cpsres::SweepAxis::lambda ||
                           parsed_axis == cpsres::SweepAxis::rho;
    for (size_t i = 0; i < count; ++i) {
      if (values[i] == nullptr)
        cpsres::fail(cpsres::ErrorCode::invalid_argument,
                     "null sweep value string");
      if (dist_axis) {
        axis_values.emplace_back(cpsres::parse_dist(values[i]));
      } else {
        char* end = nullptr;
        const double v = std::strtod(values[i], &end);
        if (end == values[i] || *end != '\0')
          cpsres::fail(cpsres::ErrorCode::invalid_argument,
                       std::string("malformed numeric sweep value: ") +
                           values[i]);
        axis_values.emplace_back(v);
      }
    }
    *out = new cpsres_sweep{cpsres::sweep(base->impl, parsed_axis, axis_values,
                                          effective_resolution(resolution))};
  });
}

cpsres_status cpsres_sweep_size(const cpsres_sweep* sweep, size_t* out) {
  if (sweep == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_sweep_size");
  *out = sweep->rows.size();
  return CPSRES_OK;
}

cpsres_status cpsres_sweep_row(const cpsres_sweep* sweep, size_t index,
                               double* epsilon_s, double* epsilon_max,
                               int* failed) {
  if (sweep == nullptr) return arg_error("null sweep handle");
  if (index >= sweep->rows.size())
    return arg_error("sweep row index out of range");
  const cpsres::SweepRow& row = sweep->rows[index];
  if (epsilon_s != nullptr) *epsilon_s = row.epsilon_s;
  if (epsilon_max != nullptr) *epsilon_max = row.epsilon_max;
  if (failed != nullptr) *failed = row.failed ? 1 : 0;
  return CPSRES_OK;
}

cpsres_status cpsres_sweep_row_error(const cpsres_sweep* sweep, size_t index,
                                     cpsres_status* error) {
  if (sweep == nullptr || error == nullptr)
    return arg_error("null argument to cpsres_sweep_row_error");
  if (index >= sweep->rows.size())
    return arg_error("sweep row index out of range");
  const cpsres::SweepRow& row = sweep->rows[index];
  *error = row.failed ? to_status(row.error) : CPSRES_OK;
  return CPSRES_OK;
}

void cpsres_sweep_free(cpsres_sweep* sweep) { delete sweep; }

/* ---- lambda optimization ----------------------------------------------- */

cpsres_status cpsres_optimize_lambda(const cpsres_params* params,
                                     const int* degrees, size_t count,
                                     double grid_step, double resolution,
                                     cpsres_optimize** out) {
  if (params == nullptr || degrees == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_optimize_lambda");
  return guarded([&] {
    const std::vector<int> support(degrees, degrees + count);
    *out = new cpsres_optimize{cpsres::optimize_lambda(
        support, params->impl,
        grid_step <= 0.0 ? cpsres::kDefaultGridStep : grid_step,
        effective_resolution(resolution))};
  });
}

cpsres_status cpsres_optimize_best_lambda(const cpsres_optimize* opt,
                                          cpsres_dist** out) {
  if (opt == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_optimize_best_lambda");
  return guarded([&] { *out = new cpsres_dist{opt->impl.lambda_star}; });
}

cpsres_status cpsres_optimize_values(const cpsres_optimize* opt,
                                     double* epsilon_max, double* epsilon_s,
                                     long* evaluations) {
  if (opt == nullptr) return arg_error("null optimizer handle");
  if (epsilon_max != nullptr) *epsilon_max = opt->impl.epsilon_max_star;
  if (epsilon_s != nullptr) *epsilon_s = opt->impl.epsilon_s_star;
  if (evaluations != nullptr) *evaluations = opt->impl.evaluations;
  return CPSRES_OK;
}

void cpsres_optimize_free(cpsres_optimize* opt) { delete opt; }

/* ---- Monte-Carlo simulation -------------------------------------------- */

cpsres_status cpsres_graph_build(int n_cyber, int a,
                                 const cpsres_dist* lambda,
                                 const cpsres_dist* rho, uint64_t seed,
                                 cpsres_graph** out) {
  if (lambda == nullptr || rho == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_graph_build");
  return guarded([&] {
    *out = new cpsres_graph{
        cpsres::build_cps(n_cyber, a, lambda->impl, rho->impl, seed)};
  });
}

cpsres_status cpsres_graph_counts(const cpsres_graph* graph, int* n_physical,
                                  int* n_cyber, size_t* physical_edges,
                                  size_t* cyber_edges) {
  if (graph == nullptr) return arg_error("null graph handle");
  if (n_physical != nullptr) *n_physical = graph->impl.n_physical();
  if (n_cyber != nullptr) *n_cyber = graph->impl.n_cyber;
  if (physical_edges != nullptr)
    *physical_edges = graph->impl.physical_edge_count();
  if (cyber_edges != nullptr) *cyber_edges = graph->impl.cyber_edge_count();
  return CPSRES_OK;
}

cpsres_status cpsres_graph_write_edge_list(const cpsres_graph* graph,
                                           const char* path) {
  if (graph == nullptr || path == nullptr)
    return arg_error("null argument to cpsres_graph_write_edge_list");
  return guarded([&] {
    std::ofstream out(path);
    if (!out)
      cpsres::fail(cpsres::ErrorCode::io_error,
                   std::string("cannot open for writing: ") + path);
    cpsres::write_edge_list(graph->impl, out);
    out.flush();
    if (!out)
      cpsres::fail(cpsres::ErrorCode::io_error,
                   std::string("write failed: ") + path);
  });
}

void cpsres_graph_free(cpsres_graph* graph) { delete graph; }

cpsres_status cpsres_run_ensemble(const cpsres_params* params, int n_cyber,
                                  double epsilon, int delay_slots,
                                  int max_iters, int trials,
                                  uint64_t base_seed, int reassign_links,
                                  cpsres_ensemble** out) {
  if (params == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_run_ensemble");
  return guarded([&] {
    cpsres::EnsembleConfig config;
    config.n_cyber = n_cyber;
    config.epsilon = epsilon;
    config.delay_slots = delay_slots;
    config.max_iters = max_iters <= 0 ? 100 : max_iters;
    config.schedule = reassign_links != 0
                          ? cpsres::LinkSchedule::reassign_each_iteration
                          : cpsres::LinkSchedule::fixed_blocks;
    *out = new cpsres_ensemble{
        cpsres::run_ensemble(config, params->impl, trials, base_seed)};
  });
}

cpsres_status cpsres_ensemble_slots(const cpsres_ensemble* ensemble,
                                    size_t* out) {
  if (ensemble == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_ensemble_slots");
  *out = ensemble->impl.mean.size();
  return CPSRES_OK;
}

cpsres_status cpsres_ensemble_stat(const cpsres_ensemble* ensemble,
                                   size_t slot, double* mean,
                                   double* stddev) {
  if (ensemble == nullptr) return arg_error("null ensemble handle");
  if (slot >= ensemble->impl.mean.size())
    return arg_error("ensemble slot index out of range");
  if (mean != nullptr) *mean = ensemble->impl.mean[slot];
  if (stddev != nullptr) *stddev = ensemble->impl.stddev[slot];
  return CPSRES_OK;
}

cpsres_status cpsres_ensemble_trials(const cpsres_ensemble* ensemble,
                                     int* out) {
  if (ensemble == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_ensemble_trials");
  *out = ensemble->impl.trials;
  return CPSRES_OK;
}

cpsres_status cpsres_ensemble_slots_per_iteration(
    const cpsres_ensemble* ensemble, int* out) {
  if (ensemble == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_ensemble_slots_per_iteration");
  *out = ensemble->impl.slots_per_iteration;
  return CPSRES_OK;
}

cpsres_status cpsres_ensemble_trial_length(const cpsres_ensemble* ensemble,
                                           int trial, size_t* out) {
  if (ensemble == nullptr || out == nullptr)
    return arg_error("null argument to cpsres_ensemble_trial_length");
  if (trial < 0 || trial >= ensemble->impl.trials)
    return arg_error("trial index out of range");
  *out = ensemble->impl.trials_data[static_cast<size_t>(trial)]
             .physical_fraction.size();
  return CPSRES_OK;
}

cpsres_status cpsres_ensemble_trial_fraction(const cpsres_ensemble* ensemble,
                                             int trial, size_t slot,
                                             double* physical, double* cyber) {
  if (ensemble == nullptr) return arg_error("null ensemble handle");
  if (trial < 0 || trial >= ensemble->impl.trials)
    return arg_error("trial index out of range");
  const cpsres::TrialResult& data =
      ensemble->impl.trials_data[static_cast<size_t>(trial)];
  if (data.physical_fraction.empty())
    return arg_error("trial has no recorded slots");
  const size_t clamped = std::min(slot, data.physical_fraction.size() - 1);
  if (physical != nullptr) *physical = data.physical_fraction[clamped];
  if (cyber != nullptr) *cyber = data.cyber_fraction[clamped];
  return CPSRES_OK;
}

void cpsres_ensemble_free(cpsres_ensemble* ensemble) { delete ensemble; }

}  // extern "C"
