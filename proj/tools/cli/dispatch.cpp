#include "dispatch.hpp"

#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpsres.h"
#include "csv.hpp"

namespace cli {
namespace {

struct ApiError {
  cpsres_status status;
  std::string message;
};

void check(cpsres_status status) {
  if (status != CPSRES_OK) throw ApiError{status, cpsres_last_error()};
}

// Validation mistakes are the caller's fault; solver and IO breakdowns
// are the run's.
int exit_code_for(cpsres_status status) {
  switch (status) {
    case CPSRES_OK:
      return 0;
    case CPSRES_INVALID_ARGUMENT:
    case CPSRES_EMPTY_DISTRIBUTION:
    case CPSRES_NEGATIVE_FRACTION:
    case CPSRES_NOT_NORMALIZED:
    case CPSRES_DEGREE_ZERO:
    case CPSRES_DOMAIN_ERROR:
    case CPSRES_UNSUPPORTED_PARAMS:
    case CPSRES_EMPTY_DEGREES:
    case CPSRES_WRONG_DELAY:
      return 1;
    default:
      return 2;
  }
}

const char* verdict_name(cpsres_verdict verdict) {
  switch (verdict) {
    case CPSRES_VERDICT_HEALED:
      return "Healed";
    case CPSRES_VERDICT_COLLAPSED:
      return "Collapsed";
    default:
      return "Undecided";
  }
}

using DistPtr = std::unique_ptr<cpsres_dist, void (*)(cpsres_dist*)>;
using ParamsPtr = std::unique_ptr<cpsres_params, void (*)(cpsres_params*)>;

DistPtr dist_of(const std::string& literal) {
  cpsres_dist* dist = nullptr;
  check(make_dist(literal, &dist));
  return DistPtr(dist, cpsres_dist_free);
}

const std::string& require(const std::string& field, const char* name,
                           const char* command) {
  if (field.empty())
    throw ConfigError{ConfigError::Kind::validation,
                      std::string(name) + ": required by command '" + command +
                          "'"};
  return field;
}

ParamsPtr params_of(const RunConfig& config, const std::string& lambda_literal,
                    const std::string& rho_literal) {
  const int a = std::stoi(require(config.a, "a", config.command.c_str()));
  const double p =
      std::stod(require(config.p, "p", config.command.c_str()));
  const double pmp = config.pmp.empty() ? 0.0 : std::stod(config.pmp);
  const double pmc = config.pmc.empty() ? 0.0 : std::stod(config.pmc);
  const double pmi = config.pmi.empty() ? 0.0 : std::stod(config.pmi);
  DistPtr lambda = dist_of(lambda_literal);
  DistPtr rho = dist_of(rho_literal);
  cpsres_params* params = nullptr;
  check(cpsres_params_create(a, p, pmp, pmc, pmi, lambda.get(), rho.get(),
                             &params));
  return ParamsPtr(params, cpsres_params_free);
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, separator)) {
    piece = trim(piece);
    if (!piece.empty()) parts.push_back(piece);
  }
  return parts;
}

std::string dist_literal(cpsres_dist* dist) {
  size_t needed = 0;
  check(cpsres_dist_format(dist, nullptr, 0, &needed));
  std::string text(needed + 1, '\0');
  check(cpsres_dist_format(dist, text.data(), text.size(), nullptr));
  text.resize(needed);
  return text;
}

// Single-row artifact shared by bound, threshold, and optimize: the sweep
// schema with no axis value.
void write_point_csv(const std::string& path, double epsilon_s,
                     double epsilon_max) {
  CsvFile csv(path, {"axis_value", "epsilon_s", "epsilon_max"});
  csv.row({"nan", fmt(epsilon_s), fmt(epsilon_max)});
  csv.commit();
}

int run_bound(const RunConfig& config) {
  const std::string rho = config.rho.empty() ? "z^1" : config.rho;
  ParamsPtr params = params_of(
      config, require(config.lambda, "lambda", "bound"), rho);
  double epsilon_s = 0.0;
  check(cpsres_epsilon_s(params.get(), &epsilon_s));
  std::string tail;
  double c2 = 0.0;
  double c3 = 0.0;
  if (cpsres_taylor_coefficients(params.get(), &c2, &c3) == CPSRES_OK)
    tail = " c2=" + fmt(c2) + " c3=" + fmt(c3);
  if (!config.out.empty())
    write_point_csv(config.out, epsilon_s,
                    std::numeric_limits<double>::quiet_NaN());
  std::printf("epsilon_s=%s%s\n", fmt(epsilon_s).c_str(), tail.c_str());
  return 0;
}

using TrajectoryPtr = std::unique_ptr<cpsres_trajectory,
                                      void (*)(cpsres_trajectory*)>;

int report_trajectory(const RunConfig& config, TrajectoryPtr trajectory,
                      bool delayed) {
  size_t size = 0;
  check(cpsres_trajectory_size(trajectory.get(), &size));
  cpsres_verdict verdict = CPSRES_VERDICT_UNDECIDED;
  check(cpsres_trajectory_verdict(trajectory.get(), &verdict));
  double final_density = 0.0;
  check(cpsres_trajectory_density(trajectory.get(), size - 1, &final_density));

  if (!config.out.empty()) {
    CsvFile csv(config.out, {"iteration_or_slot", "density"});
    for (size_t i = 0; i < size; ++i) {
      double density = 0.0;
      check(cpsres_trajectory_density(trajectory.get(), i, &density));
      csv.row({std::to_string(i), fmt(density)});
    }
    csv.commit();
  }

  if (delayed) {
    int slots_per_iteration = 0;
    check(cpsres_trajectory_slots_per_iteration(trajectory.get(),
                                                &slots_per_iteration));
    std::printf("verdict=%s slots=%zu slots_per_iteration=%d final_density=%s\n",
                verdict_name(verdict), size - 1, slots_per_iteration,
                fmt(final_density).c_str());
  } else {
    std::printf("verdict=%s steps=%zu final_density=%s\n",
                verdict_name(verdict), size - 1, fmt(final_density).c_str());
  }
  return 0;
}

int run_de(const RunConfig& config) {
  ParamsPtr params = params_of(config, require(config.lambda, "lambda", "de"),
                               require(config.rho, "rho", "de"));
  const double epsilon = std::stod(require(config.epsilon, "epsilon", "de"));
  const int max_iters =
      config.max_iters.empty() ? 0 : std::stoi(config.max_iters);
  const double heal_tol =
      config.heal_tol.empty() ? 0.0 : std::stod(config.heal_tol);
  cpsres_trajectory* trajectory = nullptr;
  check(cpsres_de_trajectory(params.get(), epsilon, max_iters, heal_tol,
                             &trajectory));
  return report_trajectory(config,
                           TrajectoryPtr(trajectory, cpsres_trajectory_free),
                           false);
}

int run_one2one(const RunConfig& config) {
  DistPtr rho = dist_of(require(config.rho, "rho", "one2one"));
  const double epsilon =
      std::stod(require(config.epsilon, "epsilon", "one2one"));
  const int max_iters =
      config.max_iters.empty() ? 0 : std::stoi(config.max_iters);
  const double heal_tol =
      config.heal_tol.empty() ? 0.0 : std::stod(config.heal_tol);
  cpsres_trajectory* trajectory = nullptr;
  check(cpsres_one_to_one_trajectory(rho.get(), epsilon, max_iters, heal_tol,
                                     &trajectory));
  return report_trajectory(config,
                           TrajectoryPtr(trajectory, cpsres_trajectory_free),
                           false);
}

int run_delay(const RunConfig& config) {
  ParamsPtr params =
      params_of(config, require(config.lambda, "lambda", "delay"),
                require(config.rho, "rho", "delay"));
  const double epsilon =
      std::stod(require(config.epsilon, "epsilon", "delay"));
  const int delay_slots =
      config.delay_slots.empty() ? 1 : std::stoi(config.delay_slots);
  const int max_iters =
      config.max_iters.empty() ? 0 : std::stoi(config.max_iters);
  const double heal_tol =
      config.heal_tol.empty() ? 0.0 : std::stod(config.heal_tol);
  cpsres_trajectory* trajectory = nullptr;
  check(cpsres_delayed_trajectory(params.get(), delay_slots, epsilon,
                                  max_iters, heal_tol, &trajectory));
  return report_trajectory(config,
                           TrajectoryPtr(trajectory, cpsres_trajectory_free),
                           true);
}

int run_threshold(const RunConfig& config) {
  ParamsPtr params =
      params_of(config, require(config.lambda, "lambda", "threshold"),
                require(config.rho, "rho", "threshold"));
  const double resolution =
      config.resolution.empty() ? 0.0 : std::stod(config.resolution);
  const int delay_slots =
      config.delay_slots.empty() ? 0 : std::stoi(config.delay_slots);
  cpsres_threshold* threshold = nullptr;
  if (delay_slots > 0)
    check(cpsres_epsilon_max_delayed(params.get(), delay_slots, resolution,
                                     &threshold));
  else
    check(cpsres_epsilon_max(params.get(), resolution, &threshold));
  std::unique_ptr<cpsres_threshold, void (*)(cpsres_threshold*)> guard(
      threshold, cpsres_threshold_free);

  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  check(cpsres_threshold_value(threshold, &value));
  check(cpsres_threshold_bracket(threshold, &lo, &hi));
  if (!config.out.empty()) {
    double epsilon_s = 0.0;
    check(cpsres_epsilon_s(params.get(), &epsilon_s));
    write_point_csv(config.out, epsilon_s, value);
  }
  std::printf("epsilon_max=%s bracket=[%s,%s]\n", fmt(value).c_str(),
              fmt(lo).c_str(), fmt(hi).c_str());
  return 0;
}

int run_sweep(const RunConfig& config) {
  ParamsPtr params =
      params_of(config, require(config.lambda, "lambda", "sweep"),
                require(config.rho, "rho", "sweep"));
  const std::string& axis = require(config.axis, "axis", "sweep");
  // values are semicolon-separated because distribution literals contain
  // commas
  const std::vector<std::string> values =
      split(require(config.values, "values", "sweep"), ';');
  if (values.empty())
    throw ConfigError{ConfigError::Kind::validation,
                      "values: expected at least one entry"};
  std::vector<const char*> raw;
  raw.reserve(values.size());
  for (const std::string& value : values) raw.push_back(value.c_str());
  const double resolution =
      config.resolution.empty() ? 0.0 : std::stod(config.resolution);

  cpsres_sweep* sweep = nullptr;
  check(cpsres_sweep_run(params.get(), axis.c_str(), raw.data(), raw.size(),
                         resolution, &sweep));
  std::unique_ptr<cpsres_sweep, void (*)(cpsres_sweep*)> guard(
      sweep, cpsres_sweep_free);

  size_t rows = 0;
  check(cpsres_sweep_size(sweep, &rows));
  size_t failed_rows = 0;
  std::unique_ptr<CsvFile> csv;
  if (!config.out.empty())
    csv = std::make_unique<CsvFile>(
        config.out,
        std::vector<std::string>{"axis_value", "epsilon_s", "epsilon_max"});
  for (size_t i = 0; i < rows; ++i) {
    double epsilon_s = 0.0;
    double epsilon_max = 0.0;
    int failed = 0;
    check(cpsres_sweep_row(sweep, i, &epsilon_s, &epsilon_max, &failed));
    if (failed) ++failed_rows;
    if (csv)
      csv->row({values[i], failed ? "nan" : fmt(epsilon_s),
                failed ? "nan" : fmt(epsilon_max)});
  }
  if (csv) csv->commit();
  std::printf("sweep axis=%s rows=%zu failed=%zu\n", axis.c_str(), rows,
              failed_rows);
  return 0;
}

int run_optimize(const RunConfig& config) {
  // the base lambda is replaced by every candidate, so a placeholder works
  const std::string lambda = config.lambda.empty() ? "z^1" : config.lambda;
  ParamsPtr params =
      params_of(config, lambda, require(config.rho, "rho", "optimize"));
  const std::vector<std::string> degree_text =
      split(require(config.degrees, "degrees", "optimize"), ',');
  std::vector<int> degrees;
  degrees.reserve(degree_text.size());
  for (const std::string& piece : degree_text)
    degrees.push_back(std::stoi(piece));
  const double grid_step =
      config.grid_step.empty() ? 0.0 : std::stod(config.grid_step);
  const double resolution =
      config.resolution.empty() ? 0.0 : std::stod(config.resolution);

  cpsres_optimize* opt = nullptr;
  check(cpsres_optimize_lambda(params.get(), degrees.data(), degrees.size(),
                               grid_step, resolution, &opt));
  std::unique_ptr<cpsres_optimize, void (*)(cpsres_optimize*)> guard(
      opt, cpsres_optimize_free);

  cpsres_dist* best = nullptr;
  check(cpsres_optimize_best_lambda(opt, &best));
  DistPtr best_guard(best, cpsres_dist_free);
  const std::string star = dist_literal(best);
  double epsilon_max = 0.0;
  double epsilon_s = 0.0;
  long evaluations = 0;
  check(cpsres_optimize_values(opt, &epsilon_max, &epsilon_s, &evaluations));
  if (!config.out.empty())
    write_point_csv(config.out, epsilon_s, epsilon_max);
  std::printf("lambda_star=%s epsilon_max=%s epsilon_s=%s evaluations=%ld\n",
              star.c_str(), fmt(epsilon_max).c_str(), fmt(epsilon_s).c_str(),
              evaluations);
  return 0;
}

int run_simulate(const RunConfig& config) {
  ParamsPtr params =
      params_of(config, require(config.lambda, "lambda", "simulate"),
                require(config.rho, "rho", "simulate"));
  const double epsilon =
      std::stod(require(config.epsilon, "epsilon", "simulate"));
  const int n_cyber =
      std::stoi(require(config.n_cyber, "n_cyber", "simulate"));
  const int trials = std::stoi(require(config.trials, "trials", "simulate"));
  const int delay_slots =
      config.delay_slots.empty() ? 1 : std::stoi(config.delay_slots);
  const int max_iters =
      config.max_iters.empty() ? 0 : std::stoi(config.max_iters);
  const unsigned long long seed =
      config.seed.empty() ? 1ULL : std::stoull(config.seed);
  const int reassign = config.relink == "off" ? 0 : 1;

  cpsres_ensemble* ensemble = nullptr;
  check(cpsres_run_ensemble(params.get(), n_cyber, epsilon, delay_slots,
                            max_iters, trials, seed, reassign, &ensemble));
  std::unique_ptr<cpsres_ensemble, void (*)(cpsres_ensemble*)> guard(
      ensemble, cpsres_ensemble_free);

  size_t slots = 0;
  check(cpsres_ensemble_slots(ensemble, &slots));
  int slots_per_iteration = 0;
  check(cpsres_ensemble_slots_per_iteration(ensemble, &slots_per_iteration));

  double final_mean = 0.0;
  double final_std = 0.0;
  check(cpsres_ensemble_stat(ensemble, slots - 1, &final_mean, &final_std));

  if (!config.out.empty()) {
    CsvFile csv(config.out, {"slot", "mean_fraction", "std", "trials"});
    for (size_t s = 0; s < slots; ++s) {
      double mean = 0.0;
      double stddev = 0.0;
      check(cpsres_ensemble_stat(ensemble, s, &mean, &stddev));
      csv.row({std::to_string(s), fmt(mean), fmt(stddev),
               std::to_string(trials)});
    }
    csv.commit();
  }
  if (!config.trials_out.empty()) {
    CsvFile csv(config.trials_out, {"trial", "slot", "fraction_physical_failed",
                                    "fraction_cyber_failed"});
    for (int t = 0; t < trials; ++t) {
      size_t length = 0;
      check(cpsres_ensemble_trial_length(ensemble, t, &length));
      for (size_t s = 0; s < length; ++s) {
        double physical = 0.0;
        double cyber = 0.0;
        check(cpsres_ensemble_trial_fraction(ensemble, t, s, &physical,
                                             &cyber));
        csv.row({std::to_string(t), std::to_string(s), fmt(physical),
                 fmt(cyber)});
      }
    }
    csv.commit();
  }
  if (!config.graph_out.empty()) {
    DistPtr lambda = dist_of(config.lambda);
    DistPtr rho = dist_of(config.rho);
    const int a = std::stoi(config.a);
    cpsres_graph* graph = nullptr;
    check(cpsres_graph_build(n_cyber, a, lambda.get(), rho.get(), seed,
                             &graph));
    std::unique_ptr<cpsres_graph, void (*)(cpsres_graph*)> graph_guard(
        graph, cpsres_graph_free);
    check(cpsres_graph_write_edge_list(graph, config.graph_out.c_str()));
  }

  std::printf("trials=%d slots=%zu slots_per_iteration=%d final_mean=%s "
              "final_std=%s\n",
              trials, slots, slots_per_iteration, fmt(final_mean).c_str(),
              fmt(final_std).c_str());
  return 0;
}

}  // namespace

int dispatch(const RunConfig& config) {
  try {
    if (config.command == "bound") return run_bound(config);
    if (config.command == "de") return run_de(config);
    if (config.command == "one2one") return run_one2one(config);
    if (config.command == "threshold") return run_threshold(config);
    if (config.command == "sweep") return run_sweep(config);
    if (config.command == "optimize") return run_optimize(config);
    if (config.command == "delay") return run_delay(config);
    if (config.command == "simulate") return run_simulate(config);
    std::fprintf(stderr, "error: no command given\n");
    return 1;
  } catch (const ApiError& error) {
    std::fprintf(stderr, "error: %s (%s)\n", error.message.c_str(),
                 cpsres_status_name(error.status));
    return exit_code_for(error.status);
  } catch (const ConfigError& error) {
    std::fprintf(stderr, "error: %s\n", error.message.c_str());
    return 1;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 2;
  }
}

}  // namespace cli
