#pragma once

#include "resil/core.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace resil {

/// Per-agent state variables. The enumerator order is also the order in
/// which initial values are sampled for each agent.
enum class StateVar : int {
  Fear = 0,
  Risk,
  InfoSeeking,
  Cooperation,
  Openness,
  Experience,
  Flexibility,
  Physical,
  DerFraction,
};
inline constexpr int kStateVarCount = 9;

inline constexpr std::array<StateVar, kStateVarCount> kAllStateVars = {
    StateVar::Fear,       StateVar::Risk,        StateVar::InfoSeeking,
    StateVar::Cooperation, StateVar::Openness,   StateVar::Experience,
    StateVar::Flexibility, StateVar::Physical,   StateVar::DerFraction};

/// Config key of a variable: M_E, M_R, M_B, M_C, M_O, M_L, M_F, P, Q_DER.
std::string_view config_key(StateVar v);
/// Column name used in agent dumps: fear, risk, ...
std::string_view column_name(StateVar v);

struct AgentState {
  UnitValue fear;
  UnitValue risk_perception;
  UnitValue info_seeking;
  UnitValue cooperation;
  UnitValue openness;
  UnitValue experience;
  UnitValue flexibility;
  UnitValue physical_health;
  UnitValue der_fraction;
  bool is_prosumer = false;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// Structure-of-arrays population: one contiguous column per StateVar.
template <typename Scalar>
struct PopulationState {
  using Table = Eigen::Array<Scalar, Eigen::Dynamic, kStateVarCount>;

  Table values;
  Eigen::Array<bool, Eigen::Dynamic, 1> is_prosumer;

  PopulationState() = default;
  explicit PopulationState(Eigen::Index agents)
      : values(Table::Zero(agents, kStateVarCount)),
        is_prosumer(Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(agents, false)) {}

  Eigen::Index size() const { return values.rows(); }

  auto col(StateVar v) { return values.col(static_cast<int>(v)); }
  auto col(StateVar v) const { return values.col(static_cast<int>(v)); }

  AgentState agent(Eigen::Index i) const {
    auto u = [&](StateVar v) { return clamp_unit(static_cast<Real>(values(i, static_cast<int>(v)))); };
    return {u(StateVar::Fear),        u(StateVar::Risk),       u(StateVar::InfoSeeking),
            u(StateVar::Cooperation), u(StateVar::Openness),   u(StateVar::Experience),
            u(StateVar::Flexibility), u(StateVar::Physical),   u(StateVar::DerFraction),
            static_cast<bool>(is_prosumer(i))};
  }

  void set_agent(Eigen::Index i, const AgentState& s) {
    const std::array<Real, kStateVarCount> row = {
        s.fear, s.risk_perception, s.info_seeking, s.cooperation, s.openness,
        s.experience, s.flexibility, s.physical_health, s.der_fraction};
    for (int k = 0; k < kStateVarCount; ++k) values(i, k) = static_cast<Scalar>(row[k]);
    is_prosumer(i) = s.is_prosumer;
  }
};

/// Agents of community k occupy rows [offsets[k], offsets[k + 1]).
struct CommunityLayout {
  std::vector<Eigen::Index> offsets{0};

  int community_count() const { return static_cast<int>(offsets.size()) - 1; }
  Eigen::Index agent_count() const { return offsets.back(); }
  Eigen::Index begin(int k) const { return offsets[k]; }
  Eigen::Index size(int k) const { return offsets[k + 1] - offsets[k]; }
  int community_of(Eigen::Index agent) const;

  static CommunityLayout from_sizes(const std::vector<Eigen::Index>& sizes);
};

}  // namespace resil
