#include "resil/infrastructure.hpp"

#include <set>
#include <utility>

namespace resil {

void EnergyConfig::validate() const {
  if (!std::isfinite(w_utility) || !std::isfinite(w_der) || w_utility < 0.0 || w_der < 0.0) {
    throw ConfigError("energy: weights must be finite and >= 0");
  }
  if (std::abs(w_utility + w_der - 1.0) > 1e-12) {
    throw ConfigError("energy: w_utility + w_der must equal 1");
  }
  UnitValue::checked(share_threshold, "energy.share_threshold");
}

namespace {

UnitValue half_plus_ratio(Real count, Real max_count, const char* what) {
  if (!std::isfinite(count) || !std::isfinite(max_count)) {
    throw DataError(std::string(what) + ": counts must be finite");
  }
  if (max_count <= 0.0) throw DataError(std::string(what) + ": maximum must be > 0");
  if (count < 0.0) throw DataError(std::string(what) + ": count must be >= 0");
  if (count > max_count) throw DataError(std::string(what) + ": count exceeds maximum");
  return clamp_unit(0.5 + count / (2.0 * max_count));
}

}  // namespace

UnitValue injury_factor_from_emdat(Real deaths, Real max_deaths) {
  return half_plus_ratio(deaths, max_deaths, "injury_factor_from_emdat");
}

UnitValue fear_from_emdat(Real affected, Real max_affected) {
  return half_plus_ratio(affected, max_affected, "fear_from_emdat");
}

UnitValue total_electricity(UnitValue utility, UnitValue der, const EnergyConfig& config) {
  return clamp_unit(config.w_utility * utility + config.w_der * der);
}

SharingReport share_electricity(PopulationState<Real>& population,
                                const EmpathyNetwork<Real>& empathy,
                                const EnergyConfig& config) {
  if (empathy.agent_count() != population.size()) {
    throw ConfigError("share_electricity: network and population sizes differ");
  }
  SharingReport report;
  auto der = population.col(StateVar::DerFraction);
  const auto coop = population.col(StateVar::Cooperation);
  for (const auto& component : empathy.components()) {
    if (component.size() < 2) continue;
    Real total = 0.0;
    for (auto i : component) total += der(i);
    const Real mean = total / static_cast<Real>(component.size());

    Real excess = 0.0;
    Real deficit = 0.0;
    for (auto i : component) {
      if (der(i) > mean && coop(i) >= config.share_threshold) excess += der(i) - mean;
      if (der(i) < mean) deficit += mean - der(i);
    }
    const Real moved = std::min(excess, deficit);
    if (!(moved > 0.0)) continue;
    const Real give = moved / excess;
    const Real take = moved / deficit;
    for (auto i : component) {
      const Real q = der(i);
      if (q > mean && coop(i) >= config.share_threshold) {
        der(i) = q - (q - mean) * give;
      } else if (q < mean) {
        der(i) = q + (mean - q) * take;
      }
    }
    report.transferred += moved;
  }
  return report;
}

void check_event_conflicts(const std::vector<DisasterEvent>& events) {
  std::set<std::pair<std::string, long>> seen;
  for (const auto& e : events) {
    if (!seen.emplace(e.community, e.start_step).second) {
      throw ConfigError("events on community '" + e.community + "' share start step " +
                        std::to_string(e.start_step));
    }
  }
}

DisasterSchedule::DisasterSchedule(std::vector<DisasterEvent> events,
                                   std::vector<int> event_community,
                                   std::vector<InfrastructureState> baseline)
    : events_(std::move(events)),
      community_(std::move(event_community)),
      baseline_(std::move(baseline)),
      sampled_(events_.size()) {
  if (community_.size() != events_.size()) {
    throw ConfigError("DisasterSchedule: one community index per event required");
  }
  for (int c : community_) {
    if (c < 0 || c >= static_cast<int>(baseline_.size())) {
      throw ConfigError("DisasterSchedule: event targets an unknown community");
    }
  }
  check_event_conflicts(events_);
}

int DisasterSchedule::activate(long t, Rng& rng, PopulationState<Real>& population,
                               const CommunityLayout& layout) {
  int started = 0;
  for (std::size_t k = 0; k < events_.size(); ++k) {
    const DisasterEvent& e = events_[k];
    if (e.start_step != t || sampled_[k].started) continue;
    Sampled& s = sampled_[k];
    if (e.injury) s.injury = sample_truncated_gaussian(*e.injury, rng);
    if (e.services) s.services = sample_truncated_gaussian(*e.services, rng);
    if (e.utility) s.utility = sample_truncated_gaussian(*e.utility, rng);
    s.started = true;

    const int c = community_[k];
    const auto begin = layout.begin(c);
    for (auto i = begin; i < begin + layout.size(c); ++i) {
      for (StateVar v : kAllStateVars) {
        if (const auto& spec = e.override_for(v)) {
          population.values(i, static_cast<int>(v)) = sample_truncated_gaussian(*spec, rng);
        }
      }
    }
    ++started;
  }
  return started;
}

std::vector<InfrastructureState> DisasterSchedule::state_at(long t) const {
  std::vector<InfrastructureState> out = baseline_;
  std::vector<long> latest(baseline_.size(), -1);
  for (std::size_t k = 0; k < events_.size(); ++k) {
    const DisasterEvent& e = events_[k];
    if (t < e.start_step || t > e.end_step || !sampled_[k].started) continue;
    const int c = community_[k];
    if (e.start_step <= latest[c]) continue;
    latest[c] = e.start_step;
    const InfrastructureState& base = baseline_[c];
    const Sampled& s = sampled_[k];
    out[c] = {s.injury.value_or(base.injury), s.services.value_or(base.services),
              s.utility.value_or(base.utility)};
  }
  return out;
}

}  // namespace resil
