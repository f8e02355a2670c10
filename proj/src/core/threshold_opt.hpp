#pragma once

#include <string>
#include <variant>
#include <vector>

#include "core/delay_de.hpp"

namespace cpsres {

inline constexpr double kDefaultResolution = 1e-3;
inline constexpr double kDefaultGridStep = 0.05;

struct ThresholdResult {
  double epsilon_max = 0.0;
  double lo = 0.0;  // largest probe that healed
  double hi = 1.0;  // smallest probe that did not
  Verdict verdict_lo = Verdict::healed;
  Verdict verdict_hi = Verdict::collapsed;
};

// Bisection over the healed/not-healed indicator of de_trajectory. A coarse
// 64-point scan guards against multiple indicator flips; when nothing below
// 1 fails the threshold is the absorbing endpoint itself and 1.0 is
// reported.
ThresholdResult epsilon_max(const SystemParams& params,
                            double resolution = kDefaultResolution,
                            int max_iters = kDefaultMaxIters,
                            double heal_tol = kDefaultHealTol);

// Same bisection with the delayed recursion supplying the indicator.
ThresholdResult epsilon_max_delayed(const DelayParams& params,
                                    double resolution = kDefaultResolution,
                                    int max_slots = kDefaultMaxIters,
                                    double heal_tol = kDefaultHealTol);

enum class SweepAxis {
  block_size,   // a
  contagion,    // p
  loss_phys,    // P_mp
  loss_conn,    // P_mc
  loss_inter,   // P_mi
  lambda,
  rho,
  delay_slots,
};

SweepAxis parse_sweep_axis(const std::string& name);
const char* sweep_axis_name(SweepAxis axis);

using AxisValue = std::variant<double, DegreeDistribution>;

struct SweepRow {
  double epsilon_s = 0.0;    // NaN when not computable
  double epsilon_max = 0.0;  // NaN when the row failed
  bool failed = false;
  ErrorCode error = ErrorCode::invalid_argument;
  std::string error_message;
};

// One row per value; rows are independent and may be evaluated concurrently,
// merged by input index. A failing row does not abort the sweep.
std::vector<SweepRow> sweep(const SystemParams& base, SweepAxis axis,
                            const std::vector<AxisValue>& values,
                            double resolution = kDefaultResolution);

struct OptimizeResult {
  DegreeDistribution lambda_star;
  double epsilon_max_star = 0.0;
  double epsilon_s_star = 0.0;
  long evaluations = 0;
};

// Exhaustive simplex grid over lambda coefficients on the given degree
// support, scored by epsilon_max, then coordinate refinement at a tenth of
// the grid step around the winner.
OptimizeResult optimize_lambda(const std::vector<int>& degrees,
                               const SystemParams& fixed,
                               double grid_step = kDefaultGridStep,
                               double resolution = kDefaultResolution);

}  // namespace cpsres
