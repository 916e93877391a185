#pragma once

#include "resil/core.hpp"
#include "resil/dynamics.hpp"
#include "resil/infrastructure.hpp"
#include "resil/media.hpp"
#include "resil/metrics.hpp"
#include "resil/population.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace resil {

/// Initial value of one state variable: a Gaussian, or explicit per-agent
/// values when `per_agent` is non-empty (length must equal the population).
struct VariableInit {
  GaussianSpec spec;
  std::vector<Real> per_agent;

  friend bool operator==(const VariableInit&, const VariableInit&) = default;
};

struct CommunitySpec {
  std::string id;
  long population = 3;
  std::array<VariableInit, kStateVarCount> init{};
  // Agents with index < round(prosumer_fraction * population) are
  // prosumers; the rest start with Q_DER = 0.
  Real prosumer_fraction = 1.0;
  InfrastructureSpec infrastructure;

  VariableInit& var(StateVar v) { return init[static_cast<int>(v)]; }
  const VariableInit& var(StateVar v) const { return init[static_cast<int>(v)]; }

  /// Every variable at its default constant value (fear, risk,
  /// information-seeking, cooperation, openness and experience 0.5;
  /// flexibility, physical health and Q_DER 1; Z 1, Q_s 1, Q_e 0.5).
  static CommunitySpec defaults(std::string id, long population);

  friend bool operator==(const CommunitySpec&, const CommunitySpec&) = default;
};

struct EmpathyBlock {
  std::string a;
  std::string b;
  GaussianSpec weight;

  friend bool operator==(const EmpathyBlock&, const EmpathyBlock&) = default;
};

/// Symmetric block map between communities; missing blocks mean no edges.
struct EmpathySpec {
  std::vector<EmpathyBlock> blocks;

  std::optional<GaussianSpec> block(std::string_view a, std::string_view b) const;
  void set(const std::string& a, const std::string& b, GaussianSpec weight);

  friend bool operator==(const EmpathySpec&, const EmpathySpec&) = default;
};

struct Scenario {
  std::string name = "custom";
  std::vector<CommunitySpec> communities;
  EmpathySpec empathy;
  MediaProfile media;
  std::vector<DisasterEvent> events;
  DynamicsParams params;
  EnergyConfig energy;
  WellBeingWeights weights;
  long horizon = 300;
  long replications = 100;
  std::uint64_t base_seed = 0;
  // Run DER sharing after the dynamics instead of before.
  bool share_after_dynamics = false;

  /// Throws ConfigError describing the first violated invariant.
  void validate() const;
  /// Index of community `id`, or -1.
  int community_index(std::string_view id) const;
  long total_population() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses the sectioned key-value config format.
/// An empty document yields default_scenario(). Errors carry the line.
Scenario parse_scenario(std::string_view text);
/// Canonical writer; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);
/// 64-bit FNV-1a of the canonical rendering.
std::uint64_t scenario_fingerprint(const Scenario& s);

/// Sets one config value addressed as "<section>.<key>[.mean|.std]", e.g.
/// "community.1.M_C.mean" or "params.lambda", and re-validates.
Scenario with_config_value(const Scenario& s, std::string_view path, std::string_view value);

/// Sets the horizon; event windows are truncated to it and events that
/// would start after it are dropped.
Scenario with_horizon(Scenario s, long horizon);

/// Nine agents in three areas of three, full intra-area empathy, no
/// inter-area empathy, all defaults.
Scenario default_scenario();

/// Single case-study-1 experiment, e.g. "flexibility-0.5", "services-drop".
Scenario build_case_study_1(std::string_view variant);
std::vector<std::string> case_study_1_variants();

struct NamedScenario {
  std::string label;
  Scenario scenario;
};

/// A published sweep ("flexibility", "services", ...) or a single variant.
std::vector<NamedScenario> case_study_1_family(std::string_view family);
std::vector<std::string> case_study_1_families();

/// Six-community society, example 1, 2 or 3.
Scenario build_case_study_2(int example);

/// One community shaped like case-study-2 community 1 with the given
/// population and intra-community empathy N(empathy_mean, 0.1^2).
Scenario build_population_study(long population, Real empathy_mean);

/// Community-1-shaped scenario hit by a catalog disaster.
Scenario build_emdat_scenario(const DisasterProfile& profile);

/// Disaster profiles in file order.
class DisasterCatalog {
 public:
  DisasterCatalog() = default;
  explicit DisasterCatalog(std::vector<DisasterProfile> profiles);

  const std::vector<DisasterProfile>& profiles() const { return profiles_; }
  std::size_t size() const { return profiles_.size(); }
  bool empty() const { return profiles_.empty(); }
  /// Case-insensitive lookup by disaster type.
  const DisasterProfile* find(std::string_view type) const;
  std::vector<std::string> names() const;

 private:
  std::vector<DisasterProfile> profiles_;
};

/// Header `disaster_type,injury_factor,fear,AE,AES`; throws DataError on
/// malformed rows, duplicates or values outside [0, 1].
DisasterCatalog load_disaster_catalog(std::string_view text);
/// The ten-row EM-DAT averages shipped with the simulator.
std::string_view bundled_disaster_catalog_text();
const DisasterCatalog& bundled_disaster_catalog();

}  // namespace resil
