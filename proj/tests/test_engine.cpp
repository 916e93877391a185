#include "doctest.h"

#include "resil/dynamics.hpp"
#include "resil/engine.hpp"

#include <cmath>
#include <map>

using namespace resil;

namespace {

Scenario lone_agent() {
  Scenario s;
  s.name = "lone";
  CommunitySpec c = CommunitySpec::defaults("1", 1);
  c.var(StateVar::Fear).spec = GaussianSpec::constant(0.7);
  c.var(StateVar::Cooperation).spec = GaussianSpec::constant(0.4);
  c.var(StateVar::Physical).spec = GaussianSpec::constant(0.8);
  c.var(StateVar::DerFraction).spec = GaussianSpec::constant(0.3);
  c.infrastructure = {GaussianSpec::constant(0.6), GaussianSpec::constant(0.5),
                      GaussianSpec::constant(0.4)};
  s.communities.push_back(c);
  s.media = MediaProfile::constant(0.8, 0.25);
  s.horizon = 1;
  s.replications = 1;
  return s;
}

bool same_series(const EnsembleSeries& a, const EnsembleSeries& b) {
  if (a.steps() != b.steps() || a.replications != b.replications) return false;
  for (std::size_t t = 0; t < a.steps(); ++t) {
    if (!(a.mean[t] == b.mean[t]).all() || !(a.std[t] == b.std[t]).all()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("horizon zero records the initial state only") {
  const Scenario s = with_horizon(default_scenario(), 0);
  const Trajectory t = run_simulation(s, {0, 0});
  CHECK(t.metrics.size() == 1);
  CHECK(t.transfers.empty());
}

TEST_CASE("one step matches the per-agent update rules") {
  const Scenario s = lone_agent();
  const Trajectory t = run_simulation(s, {1, 0});
  REQUIRE(t.metrics.size() == 2);

  AgentState a;
  a.fear = clamp_unit(0.7);
  a.risk_perception = clamp_unit(0.5);
  a.info_seeking = clamp_unit(0.5);
  a.cooperation = clamp_unit(0.4);
  a.openness = clamp_unit(0.5);
  a.experience = clamp_unit(0.5);
  a.flexibility = clamp_unit(1.0);
  a.physical_health = clamp_unit(0.8);
  a.der_fraction = clamp_unit(0.3);
  a.is_prosumer = true;
  const InfrastructureState infra{clamp_unit(0.6), clamp_unit(0.5), clamp_unit(0.4)};
  const MediaSample media{clamp_unit(0.8), clamp_unit(0.25)};
  const UnitValue q = clamp_unit(0.8 * 0.4 + 0.2 * 0.3);
  const DynamicsParams p;

  const StepMetrics& m0 = t.metrics[0];
  CHECK(m0.mean_of(0, Metric::Fear) == 0.7);
  CHECK(m0.mean_of(0, Metric::QTotal) == doctest::Approx(q.value()));

  const StepMetrics& m1 = t.metrics[1];
  CHECK(m1.mean_of(0, Metric::Fear) ==
        doctest::Approx(update_fear(a, a.fear, media, infra, q, p).value()).epsilon(1e-14));
  CHECK(m1.mean_of(0, Metric::Risk) ==
        doctest::Approx(update_risk(a, media, p).value()).epsilon(1e-14));
  CHECK(m1.mean_of(0, Metric::Physical) ==
        doctest::Approx(update_physical(a, infra, q, p).value()).epsilon(1e-14));
  CHECK(m1.mean_of(0, Metric::Experience) ==
        doctest::Approx(update_experience(a, p).value()).epsilon(1e-14));
  CHECK(m1.mean_of(0, Metric::Cooperation) ==
        doctest::Approx(update_cooperation(a, p).value()).epsilon(1e-14));
  CHECK(t.transfers == std::vector<Real>{0.0});
}

TEST_CASE("runs are reproducible") {
  Scenario s = build_case_study_2(2);
  s = with_horizon(s, 30);
  const Trajectory a = run_simulation(s, {9, 3});
  const Trajectory b = run_simulation(s, {9, 3});
  CHECK(a == b);
  const Trajectory c = run_simulation(s, {9, 4});
  CHECK(!(a.metrics == c.metrics));
}

TEST_CASE("a single replication has zero spread") {
  Scenario s = with_horizon(build_case_study_2(1), 20);
  const EnsembleResult r = run_monte_carlo(s, 1, 5);
  const Trajectory t = run_simulation(s, {5, 0});
  REQUIRE(r.series.steps() == 21);
  for (std::size_t k = 0; k < r.series.steps(); ++k) {
    CHECK((r.series.std[k] == 0.0).all());
    for (int c = 0; c < 6; ++c) {
      for (int m = 0; m < kMetricCount; ++m) {
        CHECK(r.series.mean[k](c, m) == t.metrics[k].mean(c, m));
      }
    }
  }
}

TEST_CASE("a deterministic scenario has zero spread across replications") {
  const EnsembleResult r = run_monte_carlo(with_horizon(default_scenario(), 25), 4, 0);
  for (const auto& s : r.series.std) CHECK((s == 0.0).all());
}

TEST_CASE("ensembles do not depend on the thread count") {
  const Scenario s = with_horizon(build_case_study_2(2), 15);
  MonteCarloOptions one;
  one.threads = 1;
  one.keep_trajectories = true;
  MonteCarloOptions four = one;
  four.threads = 4;
  const EnsembleResult a = run_monte_carlo(s, 9, 11, one);
  const EnsembleResult b = run_monte_carlo(s, 9, 11, four);
  CHECK(same_series(a.series, b.series));
  CHECK(a.trajectories == b.trajectories);
  CHECK(same_series(aggregate_ensemble(a.trajectories), a.series));
}

TEST_CASE("replication r does not depend on the ensemble size") {
  const Scenario s = with_horizon(build_case_study_2(1), 10);
  MonteCarloOptions o;
  o.keep_trajectories = true;
  const EnsembleResult small = run_monte_carlo(s, 3, 7, o);
  const EnsembleResult large = run_monte_carlo(s, 8, 7, o);
  for (std::size_t r = 0; r < 3; ++r) CHECK(small.trajectories[r] == large.trajectories[r]);
  CHECK(large.trajectories[5] == run_simulation(s, {7, 5}));
}

TEST_CASE("worker errors propagate") {
  Scenario s = default_scenario();
  s.params.alpha_E = 2.0;
  CHECK_THROWS_AS(run_monte_carlo(s, 3, 0), ConfigError);
  CHECK_THROWS_AS(run_monte_carlo(default_scenario(), 0, 0), ConfigError);
}

TEST_CASE("initial sampling follows the scenario") {
  const Scenario s = build_case_study_2(1);
  Rng rng(derive_seed({0, 0}));
  const InitialState init = sample_initial_state(s, rng);
  CHECK(init.layout.community_count() == 6);
  CHECK(init.layout.agent_count() == 1605);
  CHECK(init.baseline.size() == 6);
  CHECK(((init.population.values >= 0.0) && (init.population.values <= 1.0)).all());
  for (int c = 0; c < 6; ++c) {
    const auto& spec = s.communities[static_cast<std::size_t>(c)];
    const long prosumers = std::lround(spec.prosumer_fraction * static_cast<Real>(spec.population));
    for (Eigen::Index i = 0; i < init.layout.size(c); ++i) {
      const Eigen::Index g = init.layout.begin(c) + i;
      CHECK(static_cast<bool>(init.population.is_prosumer(g)) == (i < prosumers));
      if (i >= prosumers) CHECK(init.population.values(g, 8) == 0.0);
    }
  }
  // No block links communities 1 and 3.
  const Eigen::Index a = init.layout.begin(0), b = init.layout.begin(2);
  CHECK(init.empathy.weight(a, b) == 0.0);
}

TEST_CASE("per-agent initial values are used verbatim") {
  Scenario s = lone_agent();
  s.communities[0].population = 3;
  s.communities[0].var(StateVar::Openness).per_agent = {0.1, 0.2, 0.3};
  Rng rng(1);
  const InitialState init = sample_initial_state(s, rng);
  CHECK(init.population.values(0, 4) == 0.1);
  CHECK(init.population.values(2, 4) == 0.3);
}

TEST_CASE("disconnected communities evolve independently") {
  const Scenario base = with_horizon(default_scenario(), 40);
  Scenario hit = base;
  DisasterEvent e;
  e.community = "1";
  e.start_step = 5;
  e.end_step = 40;
  e.injury = GaussianSpec::constant(1.0);
  e.utility = GaussianSpec::constant(0.0);
  hit.events.push_back(e);
  const Trajectory a = run_simulation(base, {0, 0});
  const Trajectory b = run_simulation(hit, {0, 0});
  for (std::size_t t = 0; t < a.metrics.size(); ++t) {
    for (int c = 1; c < 3; ++c) {
      CHECK((a.metrics[t].mean.row(c) == b.metrics[t].mean.row(c)).all());
    }
  }
  CHECK(b.metrics[40].mean_of(0, Metric::Physical) < a.metrics[40].mean_of(0, Metric::Physical));
}

TEST_CASE("sharing conserves Q_DER within each component") {
  Scenario s = with_horizon(build_case_study_1("sharing-0.9"), 30);
  RunOptions o;
  o.dump_agents = true;
  const Trajectory t = run_simulation(s, {0, 0}, o);
  REQUIRE(t.agents.has_value());
  const AgentDump& d = *t.agents;
  CHECK(d.states.size() == 31);
  REQUIRE(d.der_before_sharing.size() == 30);
  Real moved = 0.0;
  for (std::size_t k = 0; k < d.der_before_sharing.size(); ++k) {
    std::map<int, Real> before, after;
    for (Eigen::Index i = 0; i < d.der_before_sharing[k].size(); ++i) {
      before[d.component[static_cast<std::size_t>(i)]] += d.der_before_sharing[k](i);
      after[d.component[static_cast<std::size_t>(i)]] += d.der_after_sharing[k](i);
    }
    for (const auto& [comp, sum] : before) CHECK(std::abs(sum - after[comp]) < 1e-12);
    moved += t.transfers[k];
  }
  CHECK(moved > 0.0);
}

TEST_CASE("more cooperative communities start sharing no later") {
  auto onset = [](const Scenario& s) {
    const Trajectory t = run_simulation(with_horizon(s, 60), {0, 0});
    for (std::size_t k = 0; k < t.transfers.size(); ++k) {
      if (t.transfers[k] > 0.0) return static_cast<long>(k);
    }
    return 61L;
  };
  const long high = onset(build_case_study_1("sharing-0.9"));
  const long low = onset(build_case_study_1("sharing-0.2"));
  CHECK(high == 0);
  CHECK(high <= low);
}

TEST_CASE("sharing before or after the dynamics differs") {
  Scenario s = with_horizon(build_case_study_1("sharing-0.9"), 10);
  Scenario late = s;
  late.share_after_dynamics = true;
  const Trajectory a = run_simulation(s, {0, 0});
  const Trajectory b = run_simulation(late, {0, 0});
  CHECK(!(a.metrics == b.metrics));
}
