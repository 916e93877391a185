#pragma once

// Synchronous per-step update of the agents' mental and physical state.
//
// Every rule reads step-t values only and writes step t+1. The kernels are
// written once as templates over a "value" type V that is either a scalar
// (one agent) or an Eigen array (a whole population column), so the
// per-agent API and the vectorized population step share the same code.
//
// With S = N (1 - 2 N+), T = wZ Z + wP (1 - P) + wQ (1 - Qtot) + wS (1 - Qs),
// D = (F + C + L) / 3 and opt = [O >= 0.5]:
//
//   E' = E + aE [ lambda (Ehat - E) + mu S + nu T - kappa D E ]
//   R' = R + aR [ [E > thE] (E - thE)(1 - R) + rhoN N (1 - N+)(1 - R)
//                 - rhoL L R - rhoC C R ]
//   B' = B + aB [ (R - B) - betaL L B ]
//   C' = C + aC [ E (1 - C) - deltaC (1 - E) C + cCF (F - C) ]
//   F' = F + aF [ opt E (1 - F) - (1 - opt) E F + cFC (C - F) ]
//   L' = L + aL B (1 - L)
//   P' = P + aP [ rS Qs (1 - P) - dZ Z P - dQ (1 - Qtot) P ]
//
// each clamped to [0, 1]. Ehat is the empathy-weighted mean of neighbors'
// fear (own fear when an agent has no empathetic neighbor).

#include "resil/core.hpp"
#include "resil/infrastructure.hpp"
#include "resil/media.hpp"
#include "resil/network.hpp"
#include "resil/population.hpp"

#include <type_traits>

namespace resil {

struct DynamicsParams {
  Real alpha_E = 0.1;
  Real alpha_R = 0.1;
  Real alpha_B = 0.2;
  Real alpha_C = 0.1;
  Real alpha_F = 0.1;
  Real alpha_L = 0.1;
  Real alpha_P = 0.1;
  Real lambda = 0.5;   // emotion diffusion
  Real mu = 0.3;       // media
  Real nu = 0.4;       // threat
  Real kappa = 0.5;    // damping by flexibility, cooperation, experience
  Real w_Z = 0.25;
  Real w_P = 0.25;
  Real w_Q = 0.25;
  Real w_S = 0.25;
  Real theta_E = 0.5;
  Real rho_N = 0.3;
  Real rho_L = 0.25;
  Real rho_C = 0.25;
  Real beta_L = 0.25;
  Real delta_C = 0.3;
  Real c_FC = 0.2;
  Real c_CF = 0.2;
  Real r_S = 0.5;
  Real d_Z = 0.5;
  Real d_Q = 0.3;
  // When true, experience raises risk perception (+rhoL L (1 - R)) instead
  // of lowering it.
  bool experience_raises_risk = false;
  // Std of Gaussian noise added to E, R, B, C and F after each update.
  Real noise_std = 0.0;

  void validate() const;
  friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

namespace detail {

template <typename V>
struct scalar_of {
  using type = typename V::Scalar;
};
template <typename V>
  requires std::is_floating_point_v<V>
struct scalar_of<V> {
  using type = V;
};

inline Real above(Real x, Real threshold) { return x > threshold ? 1.0 : 0.0; }
inline float above(float x, float threshold) { return x > threshold ? 1.0f : 0.0f; }
template <typename D>
auto above(const Eigen::ArrayBase<D>& x, typename D::Scalar threshold) {
  return (x > threshold).template cast<typename D::Scalar>();
}

inline Real at_least(Real x, Real threshold) { return x >= threshold ? 1.0 : 0.0; }
inline float at_least(float x, float threshold) { return x >= threshold ? 1.0f : 0.0f; }
template <typename D>
auto at_least(const Eigen::ArrayBase<D>& x, typename D::Scalar threshold) {
  return (x >= threshold).template cast<typename D::Scalar>();
}

}  // namespace detail

template <typename V>
using scalar_of_t = typename detail::scalar_of<V>::type;

/// Signed media stimulus N (1 - 2 N+): positive news calms.
inline Real media_stimulus(const MediaSample& m) { return m.n * (1.0 - 2.0 * m.n_pos); }

template <typename V>
V threat_level(const V& physical, const V& q_total, const V& injury, const V& services,
               const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  return V(S(p.w_Z) * injury + S(p.w_P) * (S(1) - physical) + S(p.w_Q) * (S(1) - q_total) +
           S(p.w_S) * (S(1) - services));
}

template <typename V>
V damping_level(const V& flexibility, const V& cooperation, const V& experience) {
  using S = scalar_of_t<V>;
  return V((flexibility + cooperation + experience) / S(3));
}

template <typename V>
V next_fear(const V& fear, const V& neighbor_fear, const V& threat, const V& damping,
            const MediaSample& media, const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  const S stimulus = S(media_stimulus(media));
  return V(clamp01(V(fear + S(p.alpha_E) * (S(p.lambda) * (neighbor_fear - fear) +
                                              S(p.mu) * stimulus + S(p.nu) * threat -
                                              S(p.kappa) * damping * fear))));
}

template <typename V>
V next_risk(const V& risk, const V& fear, const V& experience, const V& cooperation,
            const MediaSample& media, const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  const S theta = S(p.theta_E);
  const S news = S(p.rho_N * media.n * (1.0 - media.n_pos));
  const V experience_term =
      p.experience_raises_risk ? V(S(p.rho_L) * experience * (S(1) - risk))
                               : V(-S(p.rho_L) * experience * risk);
  return V(clamp01(V(risk + S(p.alpha_R) * (detail::above(fear, theta) * (fear - theta) *
                                                (S(1) - risk) +
                                            news * (S(1) - risk) + experience_term -
                                            S(p.rho_C) * cooperation * risk))));
}

template <typename V>
V next_info_seeking(const V& info, const V& risk, const V& experience, const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  return V(clamp01(V(info + S(p.alpha_B) * ((risk - info) - S(p.beta_L) * experience * info))));
}

template <typename V>
V next_cooperation(const V& cooperation, const V& fear, const V& flexibility,
                   const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  return V(clamp01(V(cooperation +
                     S(p.alpha_C) * (fear * (S(1) - cooperation) -
                                     S(p.delta_C) * (S(1) - fear) * cooperation +
                                     S(p.c_CF) * (flexibility - cooperation)))));
}

template <typename V>
V next_flexibility(const V& flexibility, const V& fear, const V& cooperation, const V& openness,
                   const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  const V optimist = V(detail::at_least(openness, S(0.5)));
  return V(clamp01(V(flexibility +
                     S(p.alpha_F) * (optimist * fear * (S(1) - flexibility) -
                                     (S(1) - optimist) * fear * flexibility +
                                     S(p.c_FC) * (cooperation - flexibility)))));
}

template <typename V>
V next_experience(const V& experience, const V& info, const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  return V(clamp01(V(experience + S(p.alpha_L) * info * (S(1) - experience))));
}

template <typename V>
V next_physical(const V& physical, const V& injury, const V& services, const V& q_total,
                const DynamicsParams& p) {
  using S = scalar_of_t<V>;
  return V(clamp01(V(physical + S(p.alpha_P) * (S(p.r_S) * services * (S(1) - physical) -
                                                S(p.d_Z) * injury * physical -
                                                S(p.d_Q) * (S(1) - q_total) * physical))));
}

// Per-agent API over AgentState. `q_total` is the agent's total electricity
// availability after sharing.
UnitValue update_fear(const AgentState& s, UnitValue neighbor_fear, const MediaSample& media,
                      const InfrastructureState& infra, UnitValue q_total,
                      const DynamicsParams& p);
UnitValue update_risk(const AgentState& s, const MediaSample& media, const DynamicsParams& p);
UnitValue update_info_seeking(const AgentState& s, const DynamicsParams& p);
UnitValue update_cooperation(const AgentState& s, const DynamicsParams& p);
UnitValue update_flexibility(const AgentState& s, const DynamicsParams& p);
UnitValue update_experience(const AgentState& s, const DynamicsParams& p);
UnitValue update_physical(const AgentState& s, const InfrastructureState& infra,
                          UnitValue q_total, const DynamicsParams& p);

/// Per-agent exogenous inputs for one step, already broadcast from the
/// agent's community.
template <typename Scalar>
struct AgentInputs {
  ArrayX<Scalar> injury;
  ArrayX<Scalar> services;
  ArrayX<Scalar> q_total;
};

/// Broadcasts per-community infrastructure to agents and computes each
/// agent's total electricity from its current Q_DER.
template <typename Scalar>
AgentInputs<Scalar> broadcast_infrastructure(const CommunityLayout& layout,
                                             const std::vector<InfrastructureState>& infra,
                                             const PopulationState<Scalar>& population,
                                             const EnergyConfig& energy) {
  if (static_cast<int>(infra.size()) != layout.community_count() ||
      layout.agent_count() != population.size()) {
    throw ConfigError("broadcast_infrastructure: dimension mismatch");
  }
  AgentInputs<Scalar> in;
  const auto n = population.size();
  in.injury.resize(n);
  in.services.resize(n);
  ArrayX<Scalar> utility(n);
  for (int c = 0; c < layout.community_count(); ++c) {
    in.injury.segment(layout.begin(c), layout.size(c)).setConstant(Scalar(infra[c].injury.value()));
    in.services.segment(layout.begin(c), layout.size(c)).setConstant(Scalar(infra[c].services.value()));
    utility.segment(layout.begin(c), layout.size(c)).setConstant(Scalar(infra[c].utility.value()));
  }
  in.q_total = clamp01(ArrayX<Scalar>(Scalar(energy.w_utility) * utility +
                                      Scalar(energy.w_der) * population.col(StateVar::DerFraction)));
  return in;
}

/// Applies all seven updates synchronously. Openness and Q_DER carry over
/// unchanged. When `noise` is non-null and params.noise_std > 0, Gaussian
/// noise is drawn per agent (index order) for E, R, B, C, F and the results
/// re-clamped.
template <typename Scalar>
PopulationState<Scalar> step_population(const PopulationState<Scalar>& s,
                                        const EmpathyNetwork<Scalar>& network,
                                        const MediaSample& media, const AgentInputs<Scalar>& in,
                                        const DynamicsParams& p, Rng* noise = nullptr) {
  const auto n = s.size();
  if (network.agent_count() != n || in.injury.size() != n || in.services.size() != n ||
      in.q_total.size() != n) {
    throw ConfigError("step_population: dimension mismatch");
  }
  using A = ArrayX<Scalar>;
  const A fear = s.col(StateVar::Fear);
  const A risk = s.col(StateVar::Risk);
  const A info = s.col(StateVar::InfoSeeking);
  const A coop = s.col(StateVar::Cooperation);
  const A open = s.col(StateVar::Openness);
  const A exper = s.col(StateVar::Experience);
  const A flex = s.col(StateVar::Flexibility);
  const A phys = s.col(StateVar::Physical);

  const A neighbor_fear = network.neighbor_mean(fear);
  const A threat = threat_level<A>(phys, in.q_total, in.injury, in.services, p);
  const A damping = damping_level<A>(flex, coop, exper);

  PopulationState<Scalar> out = s;
  out.col(StateVar::Fear) = next_fear<A>(fear, neighbor_fear, threat, damping, media, p);
  out.col(StateVar::Risk) = next_risk<A>(risk, fear, exper, coop, media, p);
  out.col(StateVar::InfoSeeking) = next_info_seeking<A>(info, risk, exper, p);
  out.col(StateVar::Cooperation) = next_cooperation<A>(coop, fear, flex, p);
  out.col(StateVar::Flexibility) = next_flexibility<A>(flex, fear, coop, open, p);
  out.col(StateVar::Experience) = next_experience<A>(exper, info, p);
  out.col(StateVar::Physical) = next_physical<A>(phys, in.injury, in.services, in.q_total, p);

  if (noise != nullptr && p.noise_std > 0.0) {
    constexpr StateVar noisy[] = {StateVar::Fear, StateVar::Risk, StateVar::InfoSeeking,
                                  StateVar::Cooperation, StateVar::Flexibility};
    for (Eigen::Index i = 0; i < n; ++i) {
      for (StateVar v : noisy) {
        const auto k = static_cast<int>(v);
        out.values(i, k) =
            clamp01(Scalar(out.values(i, k) + p.noise_std * noise->standard_normal()));
      }
    }
  }
  return out;
}

}  // namespace resil
