#pragma once

#include <vector>

#include "core/de_engine.hpp"

namespace cpsres {

// Delayed-response variant: the cyber decision lands d slots after the
// contagion it reacts to. Only lossless messaging is supported here.
struct DelayParams {
  SystemParams base;
  int delay_slots;  // d >= 0; d = 0 is the synchronous model

  DelayParams(SystemParams base_, int delay_slots_);
};

struct SlotTrajectory {
  std::vector<double> densities;  // densities[0] = initial fraction
  Verdict verdict = Verdict::undecided;
  int slots_per_iteration = 1;  // d contagion slots + 1 response slot

  double last() const { return densities.back(); }
};

// One slot of pure physical contagion.
double contagion_slot(double y, const SystemParams& params);

// One full delayed iteration: d contagion slots, then the response computed
// from the staggered report densities (heal decision one slot stale, cyber
// neighbor state two slots stale).
double delayed_de_step(double x, const DelayParams& params);

// Algebraic closed form of the two-slot iteration; WrongDelay unless d = 2.
double delayed_step_closed_form(double x, const DelayParams& params);

// Records the density at every slot; verdict thresholds as in de_trajectory.
// max_slots bounds the number of recorded slots after the initial value.
SlotTrajectory delayed_trajectory(const DelayParams& params, double epsilon,
                                  int max_slots = kDefaultMaxIters,
                                  double heal_tol = kDefaultHealTol);

}  // namespace cpsres
