#include "core/threshold_opt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "core/parallel.hpp"

namespace cpsres {

namespace {

constexpr int kScanPoints = 64;

ThresholdResult find_threshold(
    const std::function<Verdict(double)>& verdict_at, double resolution) {
  if (!(resolution > 0.0 && resolution <= 1.0))
    fail(ErrorCode::invalid_argument, "resolution outside (0,1]");

  // Coarse scan; the indicator must flip at most once on the way up.
  Verdict scan[kScanPoints + 1];
  int flip_at = -1;
  int flips = 0;
  for (int i = 0; i <= kScanPoints; ++i) {
    scan[i] = verdict_at(static_cast<double>(i) / kScanPoints);
    if (i > 0 &&
        (scan[i] == Verdict::healed) != (scan[i - 1] == Verdict::healed)) {
      ++flips;
      flip_at = i;
    }
  }
  if (flips > 1)
    fail(ErrorCode::non_monotone_indicator,
         "healing indicator flips " + std::to_string(flips) +
             " times on the coarse scan");

  ThresholdResult result;
  if (flips == 0) {
    // Every probe healed; the threshold is the right endpoint.
    result.epsilon_max = 1.0;
    result.lo = 1.0 - resolution;
    result.hi = 1.0;
    result.verdict_lo = verdict_at(result.lo);
    result.verdict_hi = scan[kScanPoints];
    return result;
  }

  result.lo = static_cast<double>(flip_at - 1) / kScanPoints;
  result.hi = static_cast<double>(flip_at) / kScanPoints;
  result.verdict_lo = scan[flip_at - 1];
  result.verdict_hi = scan[flip_at];
  while (result.hi - result.lo > resolution) {
    const double mid = 0.5 * (result.lo + result.hi);
    const Verdict v = verdict_at(mid);
    if (v == Verdict::healed) {
      result.lo = mid;
      result.verdict_lo = v;
    } else {
      result.hi = mid;
      result.verdict_hi = v;
    }
  }
  // If every probe below 1 healed, the bracket is pinned to the absorbing
  // endpoint and the supremum of the healing set is 1 itself.
  result.epsilon_max =
      result.hi == 1.0 ? 1.0 : 0.5 * (result.lo + result.hi);
  return result;
}

// With no physical contagion the failed density strictly shrinks every round
// from any start below one, provided heal commands can get through at all.
// The healing set is then the whole of [0,1) and its supremum sits at the
// right endpoint; bisecting would waste the iteration budget on the vanishing
// escape rate next to the absorbing point, so report the endpoint directly.
ThresholdResult endpoint_threshold(
    const std::function<Verdict(double)>& verdict_at, double resolution) {
  if (!(resolution > 0.0 && resolution <= 1.0))
    fail(ErrorCode::invalid_argument, "resolution outside (0,1]");
  ThresholdResult result;
  result.epsilon_max = 1.0;
  result.lo = 1.0 - resolution;
  result.hi = 1.0;
  result.verdict_lo = verdict_at(result.lo);
  result.verdict_hi = verdict_at(1.0);
  return result;
}

}  // namespace

ThresholdResult epsilon_max(const SystemParams& params, double resolution,
                            int max_iters, double heal_tol) {
  auto verdict_at = [&](double eps) {
    return de_trajectory(params, eps, max_iters, heal_tol).verdict;
  };
  if (params.p == 0.0 && params.loss_inter < 1.0)
    return endpoint_threshold(verdict_at, resolution);
  return find_threshold(verdict_at, resolution);
}

ThresholdResult epsilon_max_delayed(const DelayParams& params,
                                    double resolution, int max_slots,
                                    double heal_tol) {
  auto verdict_at = [&](double eps) {
    return delayed_trajectory(params, eps, max_slots, heal_tol).verdict;
  };
  if (params.base.p == 0.0) return endpoint_threshold(verdict_at, resolution);
  return find_threshold(verdict_at, resolution);
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "a") return SweepAxis::block_size;
  if (name == "p") return SweepAxis::contagion;
  if (name == "P_mp" || name == "pmp") return SweepAxis::loss_phys;
  if (name == "P_mc" || name == "pmc") return SweepAxis::loss_conn;
  if (name == "P_mi" || name == "pmi") return SweepAxis::loss_inter;
  if (name == "lambda") return SweepAxis::lambda;
  if (name == "rho") return SweepAxis::rho;
  if (name == "delay_slots") return SweepAxis::delay_slots;
  fail(ErrorCode::invalid_argument, "unknown sweep axis: " + name);
}

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::block_size:
      return "a";
    case SweepAxis::contagion:
      return "p";
    case SweepAxis::loss_phys:
      return "P_mp";
    case SweepAxis::loss_conn:
      return "P_mc";
    case SweepAxis::loss_inter:
      return "P_mi";
    case SweepAxis::lambda:
      return "lambda";
    case SweepAxis::rho:
      return "rho";
    case SweepAxis::delay_slots:
      return "delay_slots";
  }
  return "unknown";
}

namespace {

int axis_integer(const AxisValue& value, const char* what) {
  const double* number = std::get_if<double>(&value);
  if (number == nullptr)
    fail(ErrorCode::invalid_argument,
         std::string(what) + " axis needs numeric values");
  const double rounded = std::round(*number);
  if (std::fabs(*number - rounded) > 1e-9 || rounded < 0.0)
    fail(ErrorCode::invalid_argument,
         std::string(what) + " axis needs nonnegative integers");
  return static_cast<int>(rounded);
}

double axis_number(const AxisValue& value, const char* what) {
  const double* number = std::get_if<double>(&value);
  if (number == nullptr)
    fail(ErrorCode::invalid_argument,
         std::string(what) + " axis needs numeric values");
  return *number;
}

const DegreeDistribution& axis_dist(const AxisValue& value, const char* what) {
  const DegreeDistribution* dist = std::get_if<DegreeDistribution>(&value);
  if (dist == nullptr)
    fail(ErrorCode::invalid_argument,
         std::string(what) + " axis needs distribution values");
  return *dist;
}

SystemParams with_axis(const SystemParams& base, SweepAxis axis,
                       const AxisValue& value) {
  switch (axis) {
    case SweepAxis::block_size:
      return SystemParams(axis_integer(value, "a"), base.p, base.loss_phys,
                          base.loss_conn, base.loss_inter, base.lambda,
                          base.rho);
    case SweepAxis::contagion:
      return SystemParams(base.a, axis_number(value, "p"), base.loss_phys,
                          base.loss_conn, base.loss_inter, base.lambda,
                          base.rho);
    case SweepAxis::loss_phys:
      return SystemParams(base.a, base.p, axis_number(value, "P_mp"),
                          base.loss_conn, base.loss_inter, base.lambda,
                          base.rho);
    case SweepAxis::loss_conn:
      return SystemParams(base.a, base.p, base.loss_phys,
                          axis_number(value, "P_mc"), base.loss_inter,
                          base.lambda, base.rho);
    case SweepAxis::loss_inter:
      return SystemParams(base.a, base.p, base.loss_phys, base.loss_conn,
                          axis_number(value, "P_mi"), base.lambda, base.rho);
    case SweepAxis::lambda:
      return SystemParams(base.a, base.p, base.loss_phys, base.loss_conn,
                          base.loss_inter, axis_dist(value, "lambda"),
                          base.rho);
    case SweepAxis::rho:
      return SystemParams(base.a, base.p, base.loss_phys, base.loss_conn,
                          base.loss_inter, base.lambda,
                          axis_dist(value, "rho"));
    case SweepAxis::delay_slots:
      return base;
  }
  fail(ErrorCode::invalid_argument, "unknown sweep axis");
}

}  // namespace

std::vector<SweepRow> sweep(const SystemParams& base, SweepAxis axis,
                            const std::vector<AxisValue>& values,
                            double resolution) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows(values.size());
  parallel_for_index(values.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.epsilon_s = nan;
    row.epsilon_max = nan;
    try {
      if (axis == SweepAxis::delay_slots) {
        const DelayParams delayed(base, axis_integer(values[i], "delay_slots"));
        row.epsilon_s = epsilon_s(base);
        row.epsilon_max = epsilon_max_delayed(delayed, resolution).epsilon_max;
      } else {
        const SystemParams effective = with_axis(base, axis, values[i]);
        row.epsilon_s = epsilon_s(effective);
        row.epsilon_max = epsilon_max(effective, resolution).epsilon_max;
      }
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.code();
      row.error_message = e.what();
      row.epsilon_max = nan;
    }
  });
  return rows;
}

namespace {

void enumerate_simplex(int parts, int total, std::vector<int>& prefix,
                       std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int take = 0; take <= total; ++take) {
    prefix.push_back(take);
    enumerate_simplex(parts - 1, total - take, prefix, out);
    prefix.pop_back();
  }
}

DegreeDistribution simplex_dist(const std::vector<int>& degrees,
                                const std::vector<double>& coeffs) {
  std::vector<DegreeDistribution::Entry> entries;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (coeffs[i] > 0.0) entries.emplace_back(degrees[i], coeffs[i]);
  return DegreeDistribution::from_coefficients(entries);
}

}  // namespace

OptimizeResult optimize_lambda(const std::vector<int>& degrees,
                               const SystemParams& fixed, double grid_step,
                               double resolution) {
  if (degrees.empty())
    fail(ErrorCode::empty_degrees, "optimizer needs at least one degree");
  std::vector<int> support = degrees;
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    fail(ErrorCode::invalid_argument, "duplicate degree in support set");
  if (support.front() < 1)
    fail(ErrorCode::degree_zero, "degree support reaches below 1");
  if (!(grid_step > 0.0 && grid_step <= 1.0))
    fail(ErrorCode::invalid_argument, "grid_step outside (0,1]");
  const double steps = 1.0 / grid_step;
  const int m = static_cast<int>(std::lround(steps));
  if (std::fabs(steps - m) > 1e-9 * std::max(1.0, steps))
    fail(ErrorCode::invalid_argument, "grid_step must divide 1 evenly");

  std::vector<std::vector<int>> grid;
  std::vector<int> prefix;
  enumerate_simplex(static_cast<int>(support.size()), m, prefix, grid);

  long evaluations = 0;
  auto score_of = [&](const std::vector<double>& coeffs) {
    const SystemParams candidate(fixed.a, fixed.p, fixed.loss_phys,
                                 fixed.loss_conn, fixed.loss_inter,
                                 simplex_dist(support, coeffs), fixed.rho);
    return epsilon_max(candidate, resolution).epsilon_max;
  };

  std::vector<double> scores(grid.size());
  parallel_for_index(grid.size(), [&](std::size_t i) {
    std::vector<double> coeffs(support.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      coeffs[j] = static_cast<double>(grid[i][j]) / m;
    scores[i] = score_of(coeffs);
  });
  evaluations += static_cast<long>(grid.size());

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (scores[i] > scores[best]) best = i;

  std::vector<double> coeffs(support.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    coeffs[j] = static_cast<double>(grid[best][j]) / m;
  double best_score = scores[best];

  // Coordinate refinement: shift mass between pairs of support degrees in
  // tenth-of-grid steps while that strictly improves the threshold.
  const double delta = grid_step / 10.0;
  const int max_rounds = 1000;
  for (int round = 0; round < max_rounds; ++round) {
    double round_best = best_score;
    std::vector<double> round_coeffs;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (i == j || coeffs[j] < delta - 1e-12) continue;
        std::vector<double> cand = coeffs;
        cand[i] += delta;
        cand[j] = std::max(0.0, cand[j] - delta);
        const double s = score_of(cand);
        ++evaluations;
        if (s > round_best + 1e-12) {
          round_best = s;
          round_coeffs = std::move(cand);
        }
      }
    }
    if (round_coeffs.empty()) break;
    coeffs = std::move(round_coeffs);
    best_score = round_best;
  }

  OptimizeResult result{simplex_dist(support, coeffs), best_score, 0.0,
                        evaluations};
  const SystemParams winner(fixed.a, fixed.p, fixed.loss_phys, fixed.loss_conn,
                            fixed.loss_inter, result.lambda_star, fixed.rho);
  result.epsilon_s_star = epsilon_s(winner);
  return result;
}

}  // namespace cpsres
