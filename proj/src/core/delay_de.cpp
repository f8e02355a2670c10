#include "core/delay_de.hpp"

#include <algorithm>
#include <cmath>

namespace cpsres {

namespace {

double ipow(double z, int k) {
  double acc = 1.0;
  double base = z;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

// Response landing after slot d: heal reports reflect slot d-1, cyber
// neighbor states slot d-2; both collapse onto the initial density when d
// leaves no earlier slot. Nodes told to hold back are exposed to one more
// contagion slot.
double response(const std::vector<double>& y, int d, const SystemParams& base) {
  const double y_heal = y[static_cast<size_t>(d - 1)];
  const double y_eval = d >= 2 ? y[static_cast<size_t>(d - 2)] : y[0];
  double u = 1.0 - ipow(1.0 - y_heal, base.a - 1) *
                       (1.0 - base.rho.eval(ipow(y_eval, base.a)));
  u = std::clamp(u, 0.0, 1.0);
  const double y_d = y[static_cast<size_t>(d)];
  const double next =
      y_d * u + (1.0 - base.lambda.eval(1.0 - base.p * y_d)) * (1.0 - u);
  return std::clamp(next, 0.0, 1.0);
}

}  // namespace

DelayParams::DelayParams(SystemParams base_, int delay_slots_)
    : base(std::move(base_)), delay_slots(delay_slots_) {
  if (!base.lossless())
    fail(ErrorCode::unsupported_params,
         "delayed recursion requires lossless messaging");
  if (delay_slots < 0)
    fail(ErrorCode::invalid_argument, "delay_slots is negative");
}

double contagion_slot(double y, const SystemParams& params) {
  if (!(y >= 0.0 && y <= 1.0))
    fail(ErrorCode::domain_error, "failure density outside [0,1]");
  double next = 1.0 - (1.0 - y) * params.lambda.eval(1.0 - params.p * y);
  return std::clamp(next, 0.0, 1.0);
}

double delayed_de_step(double x, const DelayParams& params) {
  if (!(x >= 0.0 && x <= 1.0))
    fail(ErrorCode::domain_error, "failure density outside [0,1]");
  const int d = params.delay_slots;
  if (d == 0) return de_step(x, params.base);

  std::vector<double> y(static_cast<size_t>(d) + 1);
  y[0] = x;
  for (int j = 1; j <= d; ++j)
    y[static_cast<size_t>(j)] =
        contagion_slot(y[static_cast<size_t>(j - 1)], params.base);
  return response(y, d, params.base);
}

double delayed_step_closed_form(double x, const DelayParams& params) {
  if (params.delay_slots != 2)
    fail(ErrorCode::wrong_delay, "closed form covers exactly two delay slots");
  if (!(x >= 0.0 && x <= 1.0))
    fail(ErrorCode::domain_error, "failure density outside [0,1]");
  const SystemParams& base = params.base;

  const double g = base.lambda.eval(1.0 - base.p * x) * (x - 1.0);
  const double a_term =
      std::clamp(1.0 + g * base.lambda.eval(1.0 - base.p * (1.0 + g)), 0.0, 1.0);
  const double b_term = std::clamp(
      1.0 - ipow(std::clamp(-g, 0.0, 1.0), base.a - 1) *
                (1.0 - base.rho.eval(ipow(x, base.a))),
      0.0, 1.0);
  const double c_term = 1.0 - base.lambda.eval(1.0 - base.p * a_term);
  return std::clamp(a_term * b_term + c_term * (1.0 - b_term), 0.0, 1.0);
}

SlotTrajectory delayed_trajectory(const DelayParams& params, double epsilon,
                                  int max_slots, double heal_tol) {
  if (params.delay_slots == 0) {
    Trajectory flat = de_trajectory(params.base, epsilon, max_slots, heal_tol);
    return SlotTrajectory{std::move(flat.densities), flat.verdict, 1};
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    fail(ErrorCode::domain_error, "initial failure fraction outside [0,1]");
  if (max_slots < 0)
    fail(ErrorCode::invalid_argument, "slot budget is negative");
  if (!(heal_tol > 0.0 && heal_tol < 0.5))
    fail(ErrorCode::invalid_argument, "heal tolerance outside (0,0.5)");

  const SystemParams& base = params.base;
  const int d = params.delay_slots;
  SlotTrajectory traj;
  traj.slots_per_iteration = d + 1;
  traj.densities.push_back(epsilon);

  auto classify = [&](double v) {
    if (v < heal_tol) return Verdict::healed;
    if (v > 1.0 - heal_tol) return Verdict::collapsed;
    return Verdict::undecided;
  };

  double x = epsilon;
  traj.verdict = classify(x);
  if (traj.verdict != Verdict::undecided) return traj;

  std::vector<double> y(static_cast<size_t>(d) + 1);
  int used = 0;
  while (used + d + 1 <= max_slots) {
    y[0] = x;
    for (int j = 1; j <= d; ++j) {
      y[static_cast<size_t>(j)] =
          contagion_slot(y[static_cast<size_t>(j - 1)], base);
      traj.densities.push_back(y[static_cast<size_t>(j)]);
      ++used;
      traj.verdict = classify(y[static_cast<size_t>(j)]);
      if (traj.verdict != Verdict::undecided) return traj;
    }

    x = response(y, d, base);
    traj.densities.push_back(x);
    ++used;
    traj.verdict = classify(x);
    if (traj.verdict != Verdict::undecided) return traj;
  }
  traj.verdict = Verdict::undecided;
  return traj;
}

}  // namespace cpsres
