#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "core/de_engine.hpp"
#include "core/rng.hpp"

namespace cpsres {

struct CpsGraph {
  int n_cyber = 0;
  int a = 1;
  std::vector<std::vector<int32_t>> physical_adj;
  std::vector<std::vector<int32_t>> cyber_adj;

  // Interlink is positional: physical nodes k*a .. k*a+a-1 report to cyber
  // node k.
  int n_physical() const { return n_cyber * a; }
  std::size_t physical_edge_count() const;
  std::size_t cyber_edge_count() const;
};

// Configuration-model sampling per layer. An odd stub total is repaired by
// bumping one uniformly chosen node's degree; self-loops and duplicate edges
// are re-paired among themselves for up to 100 rounds, then erased.
CpsGraph build_cps(int n_cyber, int a, const DegreeDistribution& lambda,
                   const DegreeDistribution& rho, uint64_t seed);

// Edge-list text, one "u v" pair per line, layers in separate sections.
void write_edge_list(const CpsGraph& graph, std::ostream& out);

struct SimState {
  std::vector<uint8_t> physical_failed;
  std::vector<uint8_t> cyber_failed;
  int slot = 0;
};

// One synchronous iteration (contagion, reports, cyber evaluation,
// resolution) using the graph's own block interlink.
void run_iteration(const CpsGraph& graph, SimState& state,
                   const SystemParams& params, Rng& rng);

enum class LinkSchedule {
  // Redraw the block-to-node assignment every iteration. Exchangeable with
  // the build-time assignment, and the schedule whose block occupancy stays
  // independent across iterations the way the recursion assumes.
  reassign_each_iteration,
  // Keep the build-time blocks for the whole trial.
  fixed_blocks,
};

struct TrialResult {
  std::vector<double> physical_fraction;  // [0] = post-seeding fraction
  std::vector<double> cyber_fraction;     // carries the last evaluation
  int slots_per_iteration = 1;

  bool absorbed_healed() const { return physical_fraction.back() == 0.0; }
};

// Seeds failures at epsilon and runs up to max_iters iterations, stopping
// early once the state absorbs at all-healthy or all-failed. delay_slots = 1
// is the synchronous protocol (one record per iteration); d > 1 runs d
// recorded contagion slots per iteration with the response computed from
// reports one slot stale and cyber-neighbor states two slots stale, then a
// recorded response slot in which a successful heal gate resets the node
// and the still-running contagion gets one fresh attempt at it.
TrialResult run_trial(
    const CpsGraph& graph, double epsilon, const SystemParams& params,
    int max_iters, int delay_slots, uint64_t seed,
    LinkSchedule schedule = LinkSchedule::reassign_each_iteration,
    bool healing = true);

struct EnsembleConfig {
  int n_cyber = 0;
  double epsilon = 0.0;
  int delay_slots = 1;
  int max_iters = 100;
  LinkSchedule schedule = LinkSchedule::reassign_each_iteration;
  bool healing = true;
};

struct EnsembleResult {
  std::vector<double> mean;    // physical failure fraction per slot
  std::vector<double> stddev;  // sample standard deviation per slot
  std::vector<TrialResult> trials_data;
  int trials = 0;
  uint64_t base_seed = 0;
  int slots_per_iteration = 1;
};

// Each trial draws its own graph and dynamics streams from (base_seed, i);
// trials may run concurrently and merge by trial index. Shorter trials are
// padded with their absorbed value before averaging.
EnsembleResult run_ensemble(const EnsembleConfig& config,
                            const SystemParams& params, int trials,
                            uint64_t base_seed);

}  // namespace cpsres
