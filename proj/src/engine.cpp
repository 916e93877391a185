#include "resil/engine.hpp"

#include "resil/dynamics.hpp"
#include "resil/infrastructure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace resil {

namespace {

// Communities joined by present empathy blocks; each entry is ascending.
std::vector<std::vector<int>> linked_communities(const Scenario& s) {
  const int n = static_cast<int>(s.communities.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& blk : s.empathy.blocks) {
    if (blk.weight == GaussianSpec::constant(0.0)) continue;
    const int a = find(s.community_index(blk.a));
    const int b = find(s.community_index(blk.b));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(n, -1);
  for (int c = 0; c < n; ++c) {
    const int r = find(c);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(c);
  }
  return groups;
}

EmpathyNetwork<Real> sample_empathy(const Scenario& s, const CommunityLayout& layout, Rng& rng) {
  using Index = Eigen::Index;
  EmpathyNetwork<Real> net(layout.agent_count());
  for (const auto& group : linked_communities(s)) {
    std::vector<Index> members;
    std::vector<int> owner;
    for (int c : group) {
      for (Index i = layout.begin(c); i < layout.begin(c) + layout.size(c); ++i) {
        members.push_back(i);
        owner.push_back(c);
      }
    }
    const auto m = static_cast<Index>(members.size());
    // Block specs between the group's communities, looked up once.
    const auto gsize = group.size();
    std::vector<std::optional<GaussianSpec>> spec(gsize * gsize);
    for (std::size_t a = 0; a < gsize; ++a) {
      for (std::size_t b = 0; b < gsize; ++b) {
        auto blk = s.empathy.block(s.communities[group[a]].id, s.communities[group[b]].id);
        if (blk && *blk != GaussianSpec::constant(0.0)) spec[a * gsize + b] = blk;
      }
    }
    std::vector<std::size_t> local(owner.size());
    for (std::size_t k = 0; k < owner.size(); ++k) {
      local[k] = static_cast<std::size_t>(
          std::find(group.begin(), group.end(), owner[k]) - group.begin());
    }
    EmpathyNetwork<Real>::Matrix w = EmpathyNetwork<Real>::Matrix::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
      for (Index j = i + 1; j < m; ++j) {
        const auto& blk = spec[local[i] * gsize + local[j]];
        if (!blk) continue;
        const Real v = sample_truncated_gaussian(*blk, rng);
        w(i, j) = v;
        w(j, i) = v;
      }
    }
    if (m > 1) net.add_group(std::move(members), std::move(w));
  }
  return net;
}

void zero_non_prosumers(PopulationState<Real>& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!p.is_prosumer(i)) p.values(i, static_cast<int>(StateVar::DerFraction)) = 0.0;
  }
}

std::vector<int> component_labels(const EmpathyNetwork<Real>& net) {
  std::vector<int> out(static_cast<std::size_t>(net.agent_count()), -1);
  const auto& comps = net.components();
  for (std::size_t k = 0; k < comps.size(); ++k) {
    for (auto i : comps[k]) out[static_cast<std::size_t>(i)] = static_cast<int>(k);
  }
  return out;
}

}  // namespace

InitialState sample_initial_state(const Scenario& s, Rng& rng) {
  s.validate();
  std::vector<Eigen::Index> sizes;
  for (const auto& c : s.communities) sizes.push_back(c.population);

  InitialState init;
  init.layout = CommunityLayout::from_sizes(sizes);
  init.population = PopulationState<Real>(init.layout.agent_count());

  for (std::size_t k = 0; k < s.communities.size(); ++k) {
    const auto& infra = s.communities[k].infrastructure;
    const UnitValue z = sample_truncated_gaussian(infra.injury, rng);
    const UnitValue qs = sample_truncated_gaussian(infra.services, rng);
    const UnitValue qe = sample_truncated_gaussian(infra.utility, rng);
    init.baseline.push_back({z, qs, qe});
  }

  for (int c = 0; c < init.layout.community_count(); ++c) {
    const CommunitySpec& spec = s.communities[c];
    const auto prosumers =
        std::lround(spec.prosumer_fraction * static_cast<Real>(spec.population));
    for (Eigen::Index a = 0; a < init.layout.size(c); ++a) {
      const Eigen::Index i = init.layout.begin(c) + a;
      for (StateVar v : kAllStateVars) {
        const VariableInit& var = spec.var(v);
        Real x = sample_truncated_gaussian(var.spec, rng);
        if (!var.per_agent.empty()) x = clamp_unit(var.per_agent[static_cast<std::size_t>(a)]);
        init.population.values(i, static_cast<int>(v)) = x;
      }
      init.population.is_prosumer(i) = a < prosumers;
    }
  }
  zero_non_prosumers(init.population);

  init.empathy = sample_empathy(s, init.layout, rng);
  init.media_positive = sample_truncated_gaussian(s.media.positive, rng);
  return init;
}

Trajectory run_simulation(const Scenario& s, const SeedSpec& seed, const RunOptions& options) {
  Rng rng(seed);
  InitialState init = sample_initial_state(s, rng);
  const CommunityLayout& layout = init.layout;
  PopulationState<Real> pop = std::move(init.population);
  const EmpathyNetwork<Real>& net = init.empathy;

  std::vector<int> event_community;
  for (const auto& e : s.events) event_community.push_back(s.community_index(e.community));
  DisasterSchedule schedule(s.events, event_community, init.baseline);

  Trajectory traj;
  traj.fingerprint = scenario_fingerprint(s);
  traj.replication_index = seed.replication_index;
  traj.metrics.reserve(static_cast<std::size_t>(s.horizon) + 1);
  traj.transfers.reserve(static_cast<std::size_t>(s.horizon));
  if (options.dump_agents) {
    traj.agents.emplace();
    traj.agents->layout = layout;
    traj.agents->component = component_labels(net);
  }

  auto media_at = [&](long t) {
    MediaSample m = media_signal(s.media, t);
    if (s.media.positive_schedule.empty()) m.n_pos = init.media_positive;
    return m;
  };
  auto record = [&](const std::vector<InfrastructureState>& infra) {
    const ArrayXr q = broadcast_infrastructure(layout, infra, pop, s.energy).q_total;
    traj.metrics.push_back(compute_step_metrics(pop, layout, q, s.weights));
    if (traj.agents) traj.agents->states.push_back(pop.values);
  };
  auto share = [&] {
    if (traj.agents) traj.agents->der_before_sharing.push_back(pop.col(StateVar::DerFraction));
    traj.transfers.push_back(share_electricity(pop, net, s.energy).transferred);
    if (traj.agents) traj.agents->der_after_sharing.push_back(pop.col(StateVar::DerFraction));
  };

  // Events active at step 0 are part of the initial condition.
  if (schedule.activate(0, rng, pop, layout) > 0) zero_non_prosumers(pop);
  record(schedule.state_at(0));

  for (long t = 0; t < s.horizon; ++t) {
    const MediaSample media = media_at(t);
    if (t > 0 && schedule.activate(t, rng, pop, layout) > 0) zero_non_prosumers(pop);
    const auto infra = schedule.state_at(t);
    if (!s.share_after_dynamics) share();
    const AgentInputs<Real> in = broadcast_infrastructure(layout, infra, pop, s.energy);
    pop = step_population(pop, net, media, in, s.params, &rng);
    if (s.share_after_dynamics) share();
    record(infra);
  }
  return traj;
}

EnsembleResult run_monte_carlo(const Scenario& s, long replications, std::uint64_t base_seed,
                               const MonteCarloOptions& options) {
  if (replications < 1) throw ConfigError("replications must be >= 1");
  s.validate();
  std::vector<Trajectory> runs(static_cast<std::size_t>(replications));
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(replications));

  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (long r = next++; r < replications; r = next++) {
      try {
        runs[static_cast<std::size_t>(r)] =
            run_simulation(s, {base_seed, static_cast<std::uint64_t>(r)},
                           {options.dump_agents});
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = replications;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleResult out;
  out.series = aggregate_ensemble(runs);
  if (options.keep_trajectories) out.trajectories = std::move(runs);
  return out;
}

EnsembleSeries aggregate_ensemble(std::span<const Trajectory> trajectories) {
  std::vector<const MetricSeries*> series;
  series.reserve(trajectories.size());
  for (const auto& t : trajectories) series.push_back(&t.metrics);
  return aggregate_series(series);
}

}  // namespace resil
