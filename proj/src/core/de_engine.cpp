#include "core/de_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace cpsres {

namespace {

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    fail(ErrorCode::invalid_argument,
         std::string(name) + " must lie in [0,1]");
}

double ipow(double z, int k) {
  double acc = 1.0;
  double base = z;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

void check_trajectory_args(double epsilon, int max_iters, double heal_tol) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    fail(ErrorCode::domain_error, "initial failure fraction outside [0,1]");
  if (max_iters < 0)
    fail(ErrorCode::invalid_argument, "iteration budget is negative");
  if (!(heal_tol > 0.0 && heal_tol < 0.5))
    fail(ErrorCode::invalid_argument, "heal tolerance outside (0,0.5)");
}

template <typename Step>
Trajectory iterate(double epsilon, int max_iters, double heal_tol,
                   Step&& step) {
  check_trajectory_args(epsilon, max_iters, heal_tol);
  Trajectory traj;
  traj.densities.push_back(epsilon);
  double x = epsilon;
  for (int iter = 0; iter <= max_iters; ++iter) {
    if (x < heal_tol) {
      traj.verdict = Verdict::healed;
      return traj;
    }
    if (x > 1.0 - heal_tol) {
      traj.verdict = Verdict::collapsed;
      return traj;
    }
    if (iter == max_iters) break;
    x = step(x);
    traj.densities.push_back(x);
  }
  traj.verdict = Verdict::undecided;
  return traj;
}

}  // namespace

SystemParams::SystemParams(int a_, double p_, double loss_phys_,
                           double loss_conn_, double loss_inter_,
                           DegreeDistribution lambda_, DegreeDistribution rho_)
    : a(a_),
      p(p_),
      loss_phys(loss_phys_),
      loss_conn(loss_conn_),
      loss_inter(loss_inter_),
      lambda(std::move(lambda_)),
      rho(std::move(rho_)) {
  if (a < 1)
    fail(ErrorCode::invalid_argument, "block size a must be at least 1");
  check_probability(p, "contagion probability");
  check_probability(loss_phys, "physical loss probability");
  check_probability(loss_conn, "connectivity loss probability");
  check_probability(loss_inter, "interlink loss probability");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::healed:
      return "healed";
    case Verdict::collapsed:
      return "collapsed";
    case Verdict::undecided:
      return "undecided";
  }
  return "unknown";
}

double de_step(double x, const SystemParams& params) {
  if (!(x >= 0.0 && x <= 1.0))
    fail(ErrorCode::domain_error, "failure density outside [0,1]");

  // Contagion: survive the round only if every failed neighbor's infection
  // attempt misses or its message is lost.
  double y = x + (1.0 - x) * (1.0 - params.lambda.eval(1.0 - params.p * x)) *
                     (1.0 - params.loss_phys);
  y = std::clamp(y, 0.0, 1.0);

  // A cyber node sees its whole block failed only if all a reports arrive.
  double w = ipow(y * (1.0 - params.loss_inter), params.a);

  // Probability the node is told to hold back: some sibling report shows a
  // healthy node, or a cyber neighbor is still alive.
  double u = 1.0 -
             ipow((1.0 - y) * (1.0 - params.loss_inter), params.a - 1) *
                 (1.0 - params.rho.eval(w * (1.0 - params.loss_conn)));
  u = std::clamp(u, 0.0, 1.0);

  // Nodes cleared to heal still stay failed if the heal command is lost.
  double next = y * u + y * (1.0 - u) * params.loss_inter;
  return std::clamp(next, 0.0, 1.0);
}

Trajectory de_trajectory(const SystemParams& params, double epsilon,
                         int max_iters, double heal_tol) {
  return iterate(epsilon, max_iters, heal_tol,
                 [&](double x) { return de_step(x, params); });
}

double one_to_one_step(double x, const DegreeDistribution& rho) {
  return rho.eval(x);
}

Trajectory one_to_one_trajectory(const DegreeDistribution& rho, double epsilon,
                                 int max_iters, double heal_tol) {
  return iterate(epsilon, max_iters, heal_tol,
                 [&](double x) { return rho.eval(x); });
}

double epsilon_s(const SystemParams& params) {
  if (params.a == 1) return 1.0;
  const double alpha = 1.0 + params.p * params.lambda.derivative_at_one();
  const double bound = 1.0 / ((params.a - 1) * alpha * alpha);
  return std::min(1.0, bound);
}

TaylorCoefficients taylor_coefficients(const SystemParams& params) {
  if (!params.lossless())
    fail(ErrorCode::unsupported_params,
         "expansion coefficients require lossless messaging");
  const double lp = params.lambda.derivative_at_one();
  const double lpp = params.lambda.second_derivative_at_one();
  const double alpha = 1.0 + params.p * lp;
  const double a1 = params.a - 1;
  TaylorCoefficients c;
  c.c2 = a1 * alpha * alpha;
  c.c3 = -0.5 * a1 * alpha *
         ((params.a - 2) * alpha * alpha +
          2.0 * params.p * (2.0 * lp + params.p * lpp));
  return c;
}

}  // namespace cpsres
