#include "resil/dynamics.hpp"

#include <string>
#include <utility>

namespace resil {

void DynamicsParams::validate() const {
  const std::pair<const char*, Real> gains[] = {
      {"alpha_E", alpha_E}, {"alpha_R", alpha_R}, {"alpha_B", alpha_B}, {"alpha_C", alpha_C},
      {"alpha_F", alpha_F}, {"alpha_L", alpha_L}, {"alpha_P", alpha_P}};
  for (const auto& [name, v] : gains) {
    if (!std::isfinite(v) || v <= 0.0 || v > 1.0) {
      throw ConfigError(std::string("params.") + name + " must lie in (0, 1]");
    }
  }
  const std::pair<const char*, Real> weights[] = {
      {"lambda", lambda}, {"mu", mu},         {"nu", nu},         {"kappa", kappa},
      {"w_Z", w_Z},       {"w_P", w_P},       {"w_Q", w_Q},       {"w_S", w_S},
      {"rho_N", rho_N},   {"rho_L", rho_L},   {"rho_C", rho_C},   {"beta_L", beta_L},
      {"delta_C", delta_C}, {"c_FC", c_FC},   {"c_CF", c_CF},     {"r_S", r_S},
      {"d_Z", d_Z},       {"d_Q", d_Q},       {"noise_std", noise_std}};
  for (const auto& [name, v] : weights) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError(std::string("params.") + name + " must be finite and >= 0");
    }
  }
  if (!(theta_E > 0.0 && theta_E < 1.0)) {
    throw ConfigError("params.theta_E must lie in (0, 1)");
  }
}

UnitValue update_fear(const AgentState& s, UnitValue neighbor_fear, const MediaSample& media,
                      const InfrastructureState& infra, UnitValue q_total,
                      const DynamicsParams& p) {
  const Real threat = threat_level<Real>(s.physical_health, q_total, infra.injury,
                                         infra.services, p);
  const Real damping = damping_level<Real>(s.flexibility, s.cooperation, s.experience);
  return clamp_unit(next_fear<Real>(s.fear, neighbor_fear, threat, damping, media, p));
}

UnitValue update_risk(const AgentState& s, const MediaSample& media, const DynamicsParams& p) {
  return clamp_unit(
      next_risk<Real>(s.risk_perception, s.fear, s.experience, s.cooperation, media, p));
}

UnitValue update_info_seeking(const AgentState& s, const DynamicsParams& p) {
  return clamp_unit(next_info_seeking<Real>(s.info_seeking, s.risk_perception, s.experience, p));
}

UnitValue update_cooperation(const AgentState& s, const DynamicsParams& p) {
  return clamp_unit(next_cooperation<Real>(s.cooperation, s.fear, s.flexibility, p));
}

UnitValue update_flexibility(const AgentState& s, const DynamicsParams& p) {
  return clamp_unit(
      next_flexibility<Real>(s.flexibility, s.fear, s.cooperation, s.openness, p));
}

UnitValue update_experience(const AgentState& s, const DynamicsParams& p) {
  return clamp_unit(next_experience<Real>(s.experience, s.info_seeking, p));
}

UnitValue update_physical(const AgentState& s, const InfrastructureState& infra,
                          UnitValue q_total, const DynamicsParams& p) {
  return clamp_unit(
      next_physical<Real>(s.physical_health, infra.injury, infra.services, q_total, p));
}

}  // namespace resil
