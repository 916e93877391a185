#pragma once

#include "resil/core.hpp"
#include "resil/metrics.hpp"
#include "resil/network.hpp"
#include "resil/population.hpp"
#include "resil/scenario.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace resil {

/// Per-agent state of one replication, recorded when dump_agents is set.
struct AgentDump {
  CommunityLayout layout;
  // Empathy component of every agent (index into the component list).
  std::vector<int> component;
  // states[t] is the population recorded with step t's metrics.
  std::vector<PopulationState<Real>::Table> states;
  // Q_DER immediately before and after the sharing pass of step t.
  std::vector<ArrayXr> der_before_sharing;
  std::vector<ArrayXr> der_after_sharing;
};

struct Trajectory {
  std::uint64_t fingerprint = 0;
  std::uint64_t replication_index = 0;
  MetricSeries metrics;                // horizon + 1 entries
  std::vector<Real> transfers;         // Q_DER moved by sharing at each step t < horizon
  std::optional<AgentDump> agents;

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.fingerprint == b.fingerprint && a.replication_index == b.replication_index &&
           a.metrics == b.metrics && a.transfers == b.transfers;
  }
};

struct RunOptions {
  bool dump_agents = false;
};

/// Sampled initial condition of one replication.
struct InitialState {
  CommunityLayout layout;
  PopulationState<Real> population;
  EmpathyNetwork<Real> empathy;
  std::vector<InfrastructureState> baseline;
  UnitValue media_positive;
};

/// Draw order: per community (declaration order) Z, Q_s, Q_e; then per agent
/// (index order) the nine state variables in StateVar order; then empathy
/// weights for pairs i < j in global agent order whose community block is
/// present; then the media polarity. Every variable consumes its draws even
/// when it is constant or given per agent.
InitialState sample_initial_state(const Scenario& s, Rng& rng);

Trajectory run_simulation(const Scenario& s, const SeedSpec& seed, const RunOptions& options = {});

struct MonteCarloOptions {
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
  bool keep_trajectories = false;
  bool dump_agents = false;
};

struct EnsembleResult {
  EnsembleSeries series;
  // Indexed by replication when keep_trajectories is set.
  std::vector<Trajectory> trajectories;
};

/// Replication r uses seed derive_seed({base_seed, r}). The output does not
/// depend on the number of threads.
EnsembleResult run_monte_carlo(const Scenario& s, long replications, std::uint64_t base_seed,
                               const MonteCarloOptions& options = {});

EnsembleSeries aggregate_ensemble(std::span<const Trajectory> trajectories);

}  // namespace resil
