#pragma once

#include "resil/core.hpp"
#include "resil/network.hpp"
#include "resil/population.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace resil {

/// Per-community infrastructure: injury factor Z, emergency services Q_s,
/// utility electricity Q_e.
struct InfrastructureState {
  UnitValue injury;
  UnitValue services;
  UnitValue utility;

  friend bool operator==(const InfrastructureState&, const InfrastructureState&) = default;
};

/// Baseline Gaussian specs for one community's infrastructure.
struct InfrastructureSpec {
  GaussianSpec injury = GaussianSpec::constant(1.0);
  GaussianSpec services = GaussianSpec::constant(1.0);
  GaussianSpec utility = GaussianSpec::constant(0.5);

  friend bool operator==(const InfrastructureSpec&, const InfrastructureSpec&) = default;
};

/// A disaster hitting one community over the inclusive window
/// [start_step, end_step]. Infrastructure overrides are sampled once when the
/// event starts and held for the window. State overrides (including Q_DER)
/// are sampled per agent and written into the population once, at start_step.
struct DisasterEvent {
  std::string community;
  long start_step = 0;
  long end_step = 0;
  std::optional<GaussianSpec> injury;
  std::optional<GaussianSpec> services;
  std::optional<GaussianSpec> utility;
  std::array<std::optional<GaussianSpec>, kStateVarCount> state_overrides{};

  std::optional<GaussianSpec>& override_for(StateVar v) {
    return state_overrides[static_cast<int>(v)];
  }
  const std::optional<GaussianSpec>& override_for(StateVar v) const {
    return state_overrides[static_cast<int>(v)];
  }

  friend bool operator==(const DisasterEvent&, const DisasterEvent&) = default;
};

/// One row of the disaster catalog.
struct DisasterProfile {
  std::string disaster_type;
  UnitValue injury_factor;
  UnitValue initial_fear;
  UnitValue availability_electricity;
  UnitValue availability_emergency;

  friend bool operator==(const DisasterProfile&, const DisasterProfile&) = default;
};

struct EnergyConfig {
  Real w_utility = 0.8;
  Real w_der = 0.2;
  Real share_threshold = 0.5;

  void validate() const;
  friend bool operator==(const EnergyConfig&, const EnergyConfig&) = default;
};

/// 0.5 + deaths / (2 max_deaths).
UnitValue injury_factor_from_emdat(Real deaths, Real max_deaths);
/// 0.5 + affected / (2 max_affected).
UnitValue fear_from_emdat(Real affected, Real max_affected);

/// w_utility * Q_e + w_der * Q_DER.
UnitValue total_electricity(UnitValue utility, UnitValue der, const EnergyConfig& config);

template <typename Derived>
ArrayXr total_electricity(Real utility, const Eigen::ArrayBase<Derived>& der,
                          const EnergyConfig& config) {
  return clamp01((config.w_utility * utility + config.w_der * der.template cast<Real>()).eval());
}

struct SharingReport {
  Real transferred = 0.0;  // sum of Q_DER moved from donors to recipients
};

/// Cooperative DER sharing within each empathy component.
///
/// With m the component's mean Q_DER, donors are members above m whose
/// cooperation is at least share_threshold; recipients are members below m.
/// Donor excess flows to recipients in proportion to their deficits and is
/// scaled down when it cannot cover the full deficit. Nobody crosses m, and
/// the component total is conserved.
SharingReport share_electricity(PopulationState<Real>& population,
                                const EmpathyNetwork<Real>& empathy,
                                const EnergyConfig& config);

/// Samples and holds event overrides for one replication.
class DisasterSchedule {
 public:
  /// `event_community[k]` is the community index targeted by events[k];
  /// `baseline[c]` is community c's sampled baseline infrastructure.
  DisasterSchedule(std::vector<DisasterEvent> events, std::vector<int> event_community,
                   std::vector<InfrastructureState> baseline);

  /// Samples every event that starts at step t (declaration order): first
  /// its infrastructure overrides (Z, Q_s, Q_e), then its per-agent state
  /// overrides in agent order and StateVar order, written into `population`.
  /// Returns the number of events started.
  int activate(long t, Rng& rng, PopulationState<Real>& population,
               const CommunityLayout& layout);

  /// Infrastructure per community at step t: for each community the active
  /// event (start <= t <= end) with the latest start supplies its sampled
  /// overrides; other fields keep the baseline.
  std::vector<InfrastructureState> state_at(long t) const;

  const std::vector<InfrastructureState>& baseline() const { return baseline_; }

 private:
  struct Sampled {
    std::optional<UnitValue> injury;
    std::optional<UnitValue> services;
    std::optional<UnitValue> utility;
    bool started = false;
  };

  std::vector<DisasterEvent> events_;
  std::vector<int> community_;
  std::vector<InfrastructureState> baseline_;
  std::vector<Sampled> sampled_;
};

/// Rejects events on the same community that share a start step.
void check_event_conflicts(const std::vector<DisasterEvent>& events);

}  // namespace resil
