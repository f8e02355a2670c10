#include "core/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_set>
#include <utility>

#include "core/parallel.hpp"

namespace cpsres {

std::size_t CpsGraph::physical_edge_count() const {
  std::size_t stubs = 0;
  for (const auto& nbrs : physical_adj) stubs += nbrs.size();
  return stubs / 2;
}

std::size_t CpsGraph::cyber_edge_count() const {
  std::size_t stubs = 0;
  for (const auto& nbrs : cyber_adj) stubs += nbrs.size();
  return stubs / 2;
}

namespace {

uint64_t edge_key(int32_t u, int32_t v) {
  const auto [lo, hi] = std::minmax(u, v);
  return (static_cast<uint64_t>(hi) << 32) | static_cast<uint32_t>(lo);
}

// Stub pairing with rejection repair: offending pairs (self-loops and
// repeats) are re-shuffled among themselves; whatever still conflicts after
// 100 rounds is dropped.
std::vector<std::vector<int32_t>> pair_stubs(std::vector<int> degrees,
                                             Rng& rng) {
  const std::size_t n = degrees.size();
  std::size_t total = 0;
  for (int d : degrees) total += static_cast<std::size_t>(d);
  if (total % 2 == 1) ++degrees[rng.below(n)];

  std::vector<int32_t> pool;
  pool.reserve(total + 1);
  for (std::size_t v = 0; v < n; ++v)
    for (int k = 0; k < degrees[v]; ++k)
      pool.push_back(static_cast<int32_t>(v));

  std::unordered_set<uint64_t> accepted;
  accepted.reserve(pool.size() / 2);
  std::vector<std::pair<int32_t, int32_t>> edges;
  edges.reserve(pool.size() / 2);
  for (int round = 0; round < 100 && pool.size() >= 2; ++round) {
    shuffle_in_place(pool, rng);
    std::vector<int32_t> rejected;
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
      const int32_t u = pool[i];
      const int32_t v = pool[i + 1];
      if (u == v || !accepted.insert(edge_key(u, v)).second) {
        rejected.push_back(u);
        rejected.push_back(v);
        continue;
      }
      edges.emplace_back(u, v);
    }
    pool = std::move(rejected);
  }

  std::vector<std::vector<int32_t>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

}  // namespace

CpsGraph build_cps(int n_cyber, int a, const DegreeDistribution& lambda,
                   const DegreeDistribution& rho, uint64_t seed) {
  if (n_cyber < 2)
    fail(ErrorCode::invalid_argument, "n_cyber must be at least 2");
  if (a < 1)
    fail(ErrorCode::invalid_argument, "block size a must be at least 1");
  if (n_cyber > std::numeric_limits<int>::max() / a)
    fail(ErrorCode::invalid_argument, "n_cyber * a overflows");

  CpsGraph graph;
  graph.n_cyber = n_cyber;
  graph.a = a;
  Rng rng(seed);

  std::vector<int> physical_degrees(static_cast<std::size_t>(n_cyber) * a);
  for (int& d : physical_degrees) d = lambda.sample(rng.uniform());
  graph.physical_adj = pair_stubs(std::move(physical_degrees), rng);

  std::vector<int> cyber_degrees(static_cast<std::size_t>(n_cyber));
  for (int& d : cyber_degrees) d = rho.sample(rng.uniform());
  graph.cyber_adj = pair_stubs(std::move(cyber_degrees), rng);
  return graph;
}

void write_edge_list(const CpsGraph& graph, std::ostream& out) {
  out << "# physical\n";
  for (std::size_t u = 0; u < graph.physical_adj.size(); ++u)
    for (int32_t v : graph.physical_adj[u])
      if (static_cast<int32_t>(u) < v) out << u << ' ' << v << '\n';
  out << "# cyber\n";
  for (std::size_t u = 0; u < graph.cyber_adj.size(); ++u)
    for (int32_t v : graph.cyber_adj[u])
      if (static_cast<int32_t>(u) < v) out << u << ' ' << v << '\n';
}

namespace {

// Reports are three-state: a lost message is neither a failure report nor a
// healthy one. Cyber failure needs a received failure from every block slot;
// healing needs a received healthy report from every other slot.
struct ReportSet {
  std::vector<uint8_t> failed;
  std::vector<uint8_t> healthy;
};

void sample_reports(const std::vector<uint8_t>& snapshot,
                    const std::vector<int32_t>& assign, double loss, Rng& rng,
                    ReportSet& out) {
  const std::size_t n = assign.size();
  out.failed.assign(n, 0);
  out.healthy.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (loss > 0.0 && rng.bernoulli(loss)) continue;
    if (snapshot[static_cast<std::size_t>(assign[s])])
      out.failed[s] = 1;
    else
      out.healthy[s] = 1;
  }
}

// One slot of contagion: sources frozen to the slot-start state, each
// (source, healthy neighbor) attempt succeeds independently.
void contagion_sweep(const CpsGraph& graph,
                     const std::vector<uint8_t>& sources,
                     std::vector<uint8_t>& failed, double p_effective,
                     Rng& rng) {
  if (p_effective <= 0.0) return;
  const int32_t n = static_cast<int32_t>(sources.size());
  for (int32_t v = 0; v < n; ++v) {
    if (!sources[v]) continue;
    for (int32_t w : graph.physical_adj[static_cast<std::size_t>(v)]) {
      const auto wi = static_cast<std::size_t>(w);
      if (sources[wi] || failed[wi]) continue;
      if (rng.bernoulli(p_effective)) failed[wi] = 1;
    }
  }
}

// Cyber evaluation plus resolution. eval_reports drive the cyber failure
// status (and hence the alive announcements); heal_reports gate the per-node
// heal decision. With empty reinfection_sources the resolution is the
// synchronous one: a heal command only matters to a failed node. Otherwise
// the staged protocol applies: a successful gate resets the node to healthy
// whatever its state, and the contagion still running during the response
// slot gets one fresh attempt at it from the pre-response failures.
void evaluate_and_respond(const CpsGraph& graph,
                          const std::vector<int32_t>& assign,
                          const ReportSet& heal_reports,
                          const ReportSet& eval_reports,
                          const std::vector<uint8_t>& reinfection_sources,
                          std::vector<uint8_t>& failed,
                          std::vector<uint8_t>& cyber_failed,
                          const SystemParams& params, Rng& rng, bool healing) {
  const int a = graph.a;
  for (int c = 0; c < graph.n_cyber; ++c) {
    bool all_failed = true;
    for (int j = 0; j < a; ++j) {
      if (!eval_reports.failed[static_cast<std::size_t>(c) * a + j]) {
        all_failed = false;
        break;
      }
    }
    cyber_failed[static_cast<std::size_t>(c)] = all_failed ? 1 : 0;
  }
  if (!healing) return;

  // A failed neighbor counts as alive when its announcement is lost.
  std::vector<uint8_t> sees_alive(static_cast<std::size_t>(graph.n_cyber), 0);
  for (int c = 0; c < graph.n_cyber; ++c) {
    for (int32_t cb : graph.cyber_adj[static_cast<std::size_t>(c)]) {
      if (!cyber_failed[static_cast<std::size_t>(cb)] ||
          (params.loss_conn > 0.0 && rng.bernoulli(params.loss_conn))) {
        sees_alive[static_cast<std::size_t>(c)] = 1;
        break;
      }
    }
  }

  const bool staged = !reinfection_sources.empty();
  const double p_effective = params.p * (1.0 - params.loss_phys);
  for (int c = 0; c < graph.n_cyber; ++c) {
    if (!sees_alive[static_cast<std::size_t>(c)]) continue;
    int healthy_count = 0;
    for (int j = 0; j < a; ++j)
      healthy_count += heal_reports.healthy[static_cast<std::size_t>(c) * a + j];
    for (int j = 0; j < a; ++j) {
      const std::size_t s = static_cast<std::size_t>(c) * a + j;
      const auto v = static_cast<std::size_t>(assign[s]);
      if (!staged && !failed[v]) continue;
      if (healthy_count - heal_reports.healthy[s] != a - 1) continue;
      if (params.loss_inter > 0.0 && rng.bernoulli(params.loss_inter))
        continue;  // heal command lost in transit
      failed[v] = 0;
      if (!staged || p_effective <= 0.0) continue;
      for (int32_t w : graph.physical_adj[v]) {
        if (reinfection_sources[static_cast<std::size_t>(w)] &&
            rng.bernoulli(p_effective)) {
          failed[v] = 1;
          break;
        }
      }
    }
  }
}

void sync_iteration(const CpsGraph& graph, const std::vector<int32_t>& assign,
                    SimState& state, const SystemParams& params, Rng& rng,
                    bool healing, ReportSet& reports,
                    std::vector<uint8_t>& sources) {
  sources = state.physical_failed;
  contagion_sweep(graph, sources, state.physical_failed,
                  params.p * (1.0 - params.loss_phys), rng);
  // One report event per node serves both the block evaluation and the heal
  // gate, as in the synchronous recursion.
  sample_reports(state.physical_failed, assign, params.loss_inter, rng,
                 reports);
  evaluate_and_respond(graph, assign, reports, reports, {},
                       state.physical_failed, state.cyber_failed, params, rng,
                       healing);
}

double fraction_of(const std::vector<uint8_t>& flags) {
  std::size_t count = 0;
  for (uint8_t f : flags) count += f;
  return flags.empty() ? 0.0
                       : static_cast<double>(count) /
                             static_cast<double>(flags.size());
}

}  // namespace

void run_iteration(const CpsGraph& graph, SimState& state,
                   const SystemParams& params, Rng& rng) {
  if (params.a != graph.a)
    fail(ErrorCode::invalid_argument, "params block size differs from graph");
  if (state.physical_failed.size() !=
          static_cast<std::size_t>(graph.n_physical()) ||
      state.cyber_failed.size() != static_cast<std::size_t>(graph.n_cyber))
    fail(ErrorCode::invalid_argument, "state size differs from graph");
  std::vector<int32_t> assign(state.physical_failed.size());
  std::iota(assign.begin(), assign.end(), 0);
  ReportSet reports;
  std::vector<uint8_t> sources;
  sync_iteration(graph, assign, state, params, rng, true, reports, sources);
  ++state.slot;
}

TrialResult run_trial(const CpsGraph& graph, double epsilon,
                      const SystemParams& params, int max_iters,
                      int delay_slots, uint64_t seed, LinkSchedule schedule,
                      bool healing) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    fail(ErrorCode::domain_error, "initial failure fraction outside [0,1]");
  if (max_iters < 0)
    fail(ErrorCode::invalid_argument, "iteration budget is negative");
  if (delay_slots < 1)
    fail(ErrorCode::invalid_argument, "delay_slots must be at least 1");
  if (params.a != graph.a)
    fail(ErrorCode::invalid_argument, "params block size differs from graph");

  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(graph.n_physical());
  const int d = delay_slots;

  TrialResult out;
  out.slots_per_iteration = d == 1 ? 1 : d + 1;

  SimState state;
  state.physical_failed.assign(n, 0);
  state.cyber_failed.assign(static_cast<std::size_t>(graph.n_cyber), 0);
  for (auto& f : state.physical_failed) f = rng.bernoulli(epsilon) ? 1 : 0;

  out.physical_fraction.push_back(fraction_of(state.physical_failed));
  out.cyber_fraction.push_back(0.0);

  std::vector<int32_t> assign(n);
  std::iota(assign.begin(), assign.end(), 0);

  ReportSet heal_reports, eval_reports;
  std::vector<uint8_t> scratch;
  std::vector<std::vector<uint8_t>> snaps(
      static_cast<std::size_t>(d) + 1);

  double cyber_fraction = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    const double current = out.physical_fraction.back();
    if (current == 0.0) break;
    if (current == 1.0 && graph.a >= 2) break;  // no healthy report can exist

    if (schedule == LinkSchedule::reassign_each_iteration)
      shuffle_in_place(assign, rng);

    if (d == 1) {
      sync_iteration(graph, assign, state, params, rng, healing, heal_reports,
                     scratch);
      cyber_fraction = fraction_of(state.cyber_failed);
      out.physical_fraction.push_back(fraction_of(state.physical_failed));
      out.cyber_fraction.push_back(cyber_fraction);
      ++state.slot;
      continue;
    }

    snaps[0] = state.physical_failed;
    for (int s = 1; s <= d; ++s) {
      snaps[static_cast<std::size_t>(s)] = snaps[static_cast<std::size_t>(s - 1)];
      contagion_sweep(graph, snaps[static_cast<std::size_t>(s - 1)],
                      snaps[static_cast<std::size_t>(s)],
                      params.p * (1.0 - params.loss_phys), rng);
      out.physical_fraction.push_back(
          fraction_of(snaps[static_cast<std::size_t>(s)]));
      out.cyber_fraction.push_back(cyber_fraction);
      ++state.slot;
    }

    // Heal reports are one slot stale, cyber evaluation two slots stale.
    sample_reports(snaps[static_cast<std::size_t>(d - 1)], assign,
                   params.loss_inter, rng, heal_reports);
    sample_reports(snaps[static_cast<std::size_t>(d - 2)], assign,
                   params.loss_inter, rng, eval_reports);
    state.physical_failed = snaps[static_cast<std::size_t>(d)];
    evaluate_and_respond(graph, assign, heal_reports, eval_reports,
                         snaps[static_cast<std::size_t>(d)],
                         state.physical_failed, state.cyber_failed, params,
                         rng, healing);
    cyber_fraction = fraction_of(state.cyber_failed);
    out.physical_fraction.push_back(fraction_of(state.physical_failed));
    out.cyber_fraction.push_back(cyber_fraction);
    ++state.slot;
  }
  return out;
}

EnsembleResult run_ensemble(const EnsembleConfig& config,
                            const SystemParams& params, int trials,
                            uint64_t base_seed) {
  if (trials < 1)
    fail(ErrorCode::invalid_argument, "trials must be at least 1");

  EnsembleResult out;
  out.trials = trials;
  out.base_seed = base_seed;
  out.trials_data.resize(static_cast<std::size_t>(trials));
  parallel_for_index(static_cast<std::size_t>(trials), [&](std::size_t i) {
    const CpsGraph graph =
        build_cps(config.n_cyber, params.a, params.lambda, params.rho,
                  mix_seed(base_seed, 2 * i));
    out.trials_data[i] =
        run_trial(graph, config.epsilon, params, config.max_iters,
                  config.delay_slots, mix_seed(base_seed, 2 * i + 1),
                  config.schedule, config.healing);
  });
  out.slots_per_iteration = out.trials_data.front().slots_per_iteration;

  std::size_t slots = 0;
  for (const TrialResult& t : out.trials_data)
    slots = std::max(slots, t.physical_fraction.size());
  out.mean.resize(slots);
  out.stddev.resize(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    double sum = 0.0;
    for (const TrialResult& t : out.trials_data)
      sum += t.physical_fraction[std::min(s, t.physical_fraction.size() - 1)];
    const double mean = sum / trials;
    double var = 0.0;
    for (const TrialResult& t : out.trials_data) {
      const double x =
          t.physical_fraction[std::min(s, t.physical_fraction.size() - 1)];
      var += (x - mean) * (x - mean);
    }
    out.mean[s] = mean;
    out.stddev[s] = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
  }
  return out;
}

}  // namespace cpsres
