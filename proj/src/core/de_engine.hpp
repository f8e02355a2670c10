#pragma once

#include <vector>

#include "core/degree_dist.hpp"

namespace cpsres {

inline constexpr double kDefaultHealTol = 1e-8;
inline constexpr int kDefaultMaxIters = 10000;

struct SystemParams {
  int a;             // physical nodes per cyber node, >= 1
  double p;          // contagion probability along physical edges
  double loss_phys;  // P_mp: physical contagion message loss
  double loss_conn;  // P_mc: connectivity announcement loss
  double loss_inter; // P_mi: interlink report loss
  DegreeDistribution lambda;  // physical edge-degree distribution
  DegreeDistribution rho;     // cyber edge-degree distribution

  SystemParams(int a_, double p_, double loss_phys_, double loss_conn_,
               double loss_inter_, DegreeDistribution lambda_,
               DegreeDistribution rho_);

  bool lossless() const {
    return loss_phys == 0.0 && loss_conn == 0.0 && loss_inter == 0.0;
  }
};

enum class Verdict { healed, collapsed, undecided };

const char* verdict_name(Verdict v);

struct Trajectory {
  std::vector<double> densities;  // densities[0] = initial failure fraction
  Verdict verdict = Verdict::undecided;

  double last() const { return densities.back(); }
};

// One synchronous round of contagion plus distributed response.
// Monotone nondecreasing in x for fixed params.
double de_step(double x, const SystemParams& params);

// Iterates de_step from epsilon until the density crosses heal_tol
// (healed), crosses 1 - heal_tol (collapsed), or the budget runs out.
Trajectory de_trajectory(const SystemParams& params, double epsilon,
                         int max_iters = kDefaultMaxIters,
                         double heal_tol = kDefaultHealTol);

// Reduced model with one physical node per cyber node: x' = rho(x).
double one_to_one_step(double x, const DegreeDistribution& rho);

Trajectory one_to_one_trajectory(const DegreeDistribution& rho, double epsilon,
                                 int max_iters = kDefaultMaxIters,
                                 double heal_tol = kDefaultHealTol);

// Closed-form sufficient healing bound, capped at 1.
double epsilon_s(const SystemParams& params);

struct TaylorCoefficients {
  double c2;
  double c3;
};

// Leading coefficients of de_step about x = 0 for lossless params:
// de_step(x) = c2 x^2 + c3 x^3 + O(x^4). The cubic term is exact only when
// the cyber-neighbor contribution enters at quartic order or later (a >= 3,
// or a = 2 with no mass on cyber degree 1); for a = 1 even the quadratic
// term is governed by the cyber layer and this expansion does not apply.
TaylorCoefficients taylor_coefficients(const SystemParams& params);

}  // namespace cpsres
