#include "resil/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace resil {

// ---------------------------------------------------------------------------
// Community / empathy helpers

CommunitySpec CommunitySpec::defaults(std::string id, long population) {
  CommunitySpec c;
  c.id = std::move(id);
  c.population = population;
  for (StateVar v : kAllStateVars) c.var(v).spec = GaussianSpec::constant(0.5);
  c.var(StateVar::Flexibility).spec = GaussianSpec::constant(1.0);
  c.var(StateVar::Physical).spec = GaussianSpec::constant(1.0);
  c.var(StateVar::DerFraction).spec = GaussianSpec::constant(1.0);
  return c;
}

std::optional<GaussianSpec> EmpathySpec::block(std::string_view a, std::string_view b) const {
  for (const auto& blk : blocks) {
    if ((blk.a == a && blk.b == b) || (blk.a == b && blk.b == a)) return blk.weight;
  }
  return std::nullopt;
}

void EmpathySpec::set(const std::string& a, const std::string& b, GaussianSpec weight) {
  for (auto& blk : blocks) {
    if ((blk.a == a && blk.b == b) || (blk.a == b && blk.b == a)) {
      blk.weight = weight;
      return;
    }
  }
  blocks.push_back({a, b, weight});
}

int Scenario::community_index(std::string_view id) const {
  for (std::size_t k = 0; k < communities.size(); ++k) {
    if (communities[k].id == id) return static_cast<int>(k);
  }
  return -1;
}

long Scenario::total_population() const {
  long n = 0;
  for (const auto& c : communities) n += c.population;
  return n;
}

namespace {

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
  });
}

void check_unit_mean(const GaussianSpec& g, const std::string& what) {
  g.validate(what);
}

}  // namespace

void Scenario::validate() const {
  if (horizon < 0) throw ConfigError("simulation.horizon must be >= 0");
  if (replications < 1) throw ConfigError("simulation.replications must be >= 1");
  if (communities.empty()) throw ConfigError("scenario needs at least one community");
  std::set<std::string> ids;
  for (const auto& c : communities) {
    const std::string where = "community." + c.id;
    if (!valid_id(c.id)) {
      throw ConfigError("community id '" + c.id + "' must be non-empty [A-Za-z0-9_-]");
    }
    if (!ids.insert(c.id).second) throw ConfigError("duplicate community id '" + c.id + "'");
    if (c.population < 1) throw ConfigError(where + ".population must be >= 1");
    for (StateVar v : kAllStateVars) {
      const auto key = where + "." + std::string(config_key(v));
      check_unit_mean(c.var(v).spec, key);
      const auto& explicit_values = c.var(v).per_agent;
      if (!explicit_values.empty()) {
        if (static_cast<long>(explicit_values.size()) != c.population) {
          throw ConfigError(key + ".agents must list exactly population (" +
                            std::to_string(c.population) + ") values");
        }
        for (Real x : explicit_values) UnitValue::checked(x, key + ".agents entry");
      }
    }
    UnitValue::checked(c.prosumer_fraction, where + ".prosumer_fraction");
    c.infrastructure.injury.validate(where + ".Z");
    c.infrastructure.services.validate(where + ".Q_s");
    c.infrastructure.utility.validate(where + ".Q_e");
  }
  std::set<std::pair<std::string, std::string>> seen_blocks;
  for (const auto& blk : empathy.blocks) {
    const std::string key = "empathy." + blk.a + ":" + blk.b;
    if (!ids.contains(blk.a) || !ids.contains(blk.b)) {
      throw ConfigError(key + ": unknown community");
    }
    auto pair = std::minmax(blk.a, blk.b);
    if (!seen_blocks.emplace(pair.first, pair.second).second) {
      throw ConfigError(key + ": block listed twice");
    }
    blk.weight.validate(key);
    if (blk.weight.mean < 0.0) throw ConfigError(key + ": empathy mean must be >= 0");
  }
  media.validate();
  params.validate();
  energy.validate();
  weights.validate();
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& e = events[k];
    const std::string where = "event #" + std::to_string(k + 1);
    if (!ids.contains(e.community)) {
      throw ConfigError(where + ": unknown community '" + e.community + "'");
    }
    if (e.start_step < 0 || e.start_step > e.end_step) {
      throw ConfigError(where + ": need 0 <= start <= end");
    }
    if (e.end_step > horizon) {
      throw ConfigError(where + ": end " + std::to_string(e.end_step) + " exceeds horizon " +
                        std::to_string(horizon));
    }
    if (e.injury) e.injury->validate(where + ".Z");
    if (e.services) e.services->validate(where + ".Q_s");
    if (e.utility) e.utility->validate(where + ".Q_e");
    for (StateVar v : kAllStateVars) {
      if (e.override_for(v)) e.override_for(v)->validate(where + "." + std::string(config_key(v)));
    }
  }
  check_event_conflicts(events);
}

// ---------------------------------------------------------------------------
// Config document

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;

  Entry* find(std::string_view key) {
    for (auto& e : entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }
};

struct Document {
  std::vector<Section> sections;

  Section* find(std::string_view name) {
    for (auto& s : sections) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

Document parse_document(std::string_view text) {
  Document doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_at(line_no, "unterminated section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) fail_at(line_no, "empty section name");
      if (doc.find(name)) fail_at(line_no, "duplicate section [" + name + "]");
      doc.sections.push_back({name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail_at(line_no, "expected 'key = value'");
    if (doc.sections.empty()) fail_at(line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail_at(line_no, "empty key");
    Section& sec = doc.sections.back();
    if (sec.find(key)) fail_at(line_no, "duplicate key '" + key + "' in [" + sec.name + "]");
    sec.entries.push_back({key, value, line_no});
  }
  return doc;
}

std::string format_real(Real x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Real parse_real(const Entry& e, std::string_view text) {
  text = trim(text);
  Real v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    fail_at(e.line, "'" + e.key + "': expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

Real parse_real(const Entry& e) { return parse_real(e, e.value); }

template <typename Int>
Int parse_int(const Entry& e) {
  Int v{};
  const auto& t = e.value;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    fail_at(e.line, "'" + e.key + "': expected an integer, got '" + t + "'");
  }
  return v;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  fail_at(e.line, "'" + e.key + "': expected true or false");
}

std::vector<Real> parse_list(const Entry& e) {
  std::vector<Real> out;
  std::string_view rest = e.value;
  if (trim(rest).empty()) return out;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_real(e, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

GaussianSpec parse_gaussian(const Entry& e) {
  const auto values = parse_list(e);
  if (values.size() == 1) return GaussianSpec::constant(values[0]);
  if (values.size() == 2) {
    if (values[1] < 0.0) fail_at(e.line, "'" + e.key + "': standard deviation must be >= 0");
    return {values[0], values[1]};
  }
  fail_at(e.line, "'" + e.key + "': expected 'mean' or 'mean,std'");
}

std::string format_gaussian(const GaussianSpec& g) {
  return format_real(g.mean) + "," + format_real(g.std);
}

std::string format_list(const std::vector<Real>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_real(xs[i]);
  }
  return out;
}

template <typename T>
struct RealField {
  const char* key;
  Real T::*member;
};

constexpr RealField<DynamicsParams> kParamFields[] = {
    {"alpha_E", &DynamicsParams::alpha_E}, {"alpha_R", &DynamicsParams::alpha_R},
    {"alpha_B", &DynamicsParams::alpha_B}, {"alpha_C", &DynamicsParams::alpha_C},
    {"alpha_F", &DynamicsParams::alpha_F}, {"alpha_L", &DynamicsParams::alpha_L},
    {"alpha_P", &DynamicsParams::alpha_P}, {"lambda", &DynamicsParams::lambda},
    {"mu", &DynamicsParams::mu},           {"nu", &DynamicsParams::nu},
    {"kappa", &DynamicsParams::kappa},     {"w_Z", &DynamicsParams::w_Z},
    {"w_P", &DynamicsParams::w_P},         {"w_Q", &DynamicsParams::w_Q},
    {"w_S", &DynamicsParams::w_S},         {"theta_E", &DynamicsParams::theta_E},
    {"rho_N", &DynamicsParams::rho_N},     {"rho_L", &DynamicsParams::rho_L},
    {"rho_C", &DynamicsParams::rho_C},     {"beta_L", &DynamicsParams::beta_L},
    {"delta_C", &DynamicsParams::delta_C}, {"c_FC", &DynamicsParams::c_FC},
    {"c_CF", &DynamicsParams::c_CF},       {"r_S", &DynamicsParams::r_S},
    {"d_Z", &DynamicsParams::d_Z},         {"d_Q", &DynamicsParams::d_Q},
    {"noise_std", &DynamicsParams::noise_std}};

constexpr RealField<EnergyConfig> kEnergyFields[] = {
    {"w_utility", &EnergyConfig::w_utility},
    {"w_der", &EnergyConfig::w_der},
    {"share_threshold", &EnergyConfig::share_threshold}};

constexpr RealField<WellBeingWeights> kWeightFields[] = {
    {"fear", &WellBeingWeights::fear},
    {"flexibility", &WellBeingWeights::flexibility},
    {"cooperation", &WellBeingWeights::cooperation},
    {"experience", &WellBeingWeights::experience},
    {"mental", &WellBeingWeights::mental},
    {"physical", &WellBeingWeights::physical}};

constexpr RealField<MediaProfile> kMediaFields[] = {
    {"n", &MediaProfile::n}, {"a", &MediaProfile::a},   {"b", &MediaProfile::b},
    {"c", &MediaProfile::c}, {"t0", &MediaProfile::t0}, {"w", &MediaProfile::w},
    {"t_scale", &MediaProfile::t_scale}};

template <typename T, std::size_t N>
bool apply_real_field(const RealField<T> (&fields)[N], T& target, const Entry& e) {
  for (const auto& f : fields) {
    if (e.key == f.key) {
      target.*(f.member) = parse_real(e);
      return true;
    }
  }
  return false;
}

[[noreturn]] void unknown_key(const Section& s, const Entry& e) {
  fail_at(e.line, "unknown key '" + e.key + "' in [" + s.name + "]");
}

std::optional<StateVar> state_var_from_key(std::string_view key) {
  for (StateVar v : kAllStateVars) {
    if (config_key(v) == key) return v;
  }
  return std::nullopt;
}

void apply_simulation(const Section& sec, Scenario& s) {
  for (const auto& e : sec.entries) {
    if (e.key == "name") {
      s.name = e.value;
    } else if (e.key == "horizon") {
      s.horizon = parse_int<long>(e);
      if (s.horizon < 0) fail_at(e.line, "horizon must be >= 0");
    } else if (e.key == "replications") {
      s.replications = parse_int<long>(e);
      if (s.replications < 1) fail_at(e.line, "replications must be >= 1");
    } else if (e.key == "seed") {
      s.base_seed = parse_int<std::uint64_t>(e);
    } else if (e.key == "share_after_dynamics") {
      s.share_after_dynamics = parse_bool(e);
    } else {
      unknown_key(sec, e);
    }
  }
}

void apply_params(const Section& sec, DynamicsParams& p) {
  for (const auto& e : sec.entries) {
    if (e.key == "experience_raises_risk") {
      p.experience_raises_risk = parse_bool(e);
    } else if (!apply_real_field(kParamFields, p, e)) {
      unknown_key(sec, e);
    }
  }
  try {
    p.validate();
  } catch (const ConfigError& err) {
    fail_at(sec.line, err.what());
  }
}

void apply_media(const Section& sec, MediaProfile& m) {
  if (const auto* kind = const_cast<Section&>(sec).find("kind")) {
    try {
      switch (media_kind_from_string(kind->value)) {
        case MediaKind::Constant: m = MediaProfile::constant(1.0, 0.0); break;
        case MediaKind::DampedExponential: m = MediaProfile::damped_exponential(); break;
        case MediaKind::GaussianPulse: m = MediaProfile::gaussian_pulse(); break;
      }
    } catch (const ConfigError& err) {
      fail_at(kind->line, err.what());
    }
  }
  for (const auto& e : sec.entries) {
    if (e.key == "kind") continue;
    if (e.key == "n_pos") {
      m.positive = parse_gaussian(e);
    } else if (e.key == "n_pos_schedule") {
      m.positive_schedule = parse_list(e);
    } else if (!apply_real_field(kMediaFields, m, e)) {
      unknown_key(sec, e);
    }
  }
  try {
    m.validate();
  } catch (const ConfigError& err) {
    fail_at(sec.line, err.what());
  }
}

CommunitySpec parse_community(const Section& sec, const std::string& id) {
  CommunitySpec c = CommunitySpec::defaults(id, 3);
  for (const auto& e : sec.entries) {
    if (e.key == "population") {
      c.population = parse_int<long>(e);
      if (c.population < 1) fail_at(e.line, "population must be >= 1");
    } else if (e.key == "prosumer_fraction") {
      c.prosumer_fraction = parse_real(e);
    } else if (e.key == "Z") {
      c.infrastructure.injury = parse_gaussian(e);
    } else if (e.key == "Q_s") {
      c.infrastructure.services = parse_gaussian(e);
    } else if (e.key == "Q_e") {
      c.infrastructure.utility = parse_gaussian(e);
    } else if (auto v = state_var_from_key(e.key)) {
      c.var(*v).spec = parse_gaussian(e);
    } else if (e.key.ends_with(".agents")) {
      const auto base = std::string_view(e.key).substr(0, e.key.size() - 7);
      const auto v = state_var_from_key(base);
      if (!v) unknown_key(sec, e);
      c.var(*v).per_agent = parse_list(e);
    } else {
      unknown_key(sec, e);
    }
  }
  for (StateVar v : kAllStateVars) {
    const auto& values = c.var(v).per_agent;
    if (!values.empty() && static_cast<long>(values.size()) != c.population) {
      fail_at(sec.line, std::string(config_key(v)) + ".agents must list exactly " +
                            std::to_string(c.population) + " values");
    }
  }
  return c;
}

DisasterEvent parse_event(const Section& sec, long horizon) {
  DisasterEvent ev;
  bool has_community = false;
  bool has_start = false;
  int end_line = sec.line;
  ev.end_step = horizon;
  for (const auto& e : sec.entries) {
    if (e.key == "community") {
      ev.community = e.value;
      has_community = true;
    } else if (e.key == "start") {
      ev.start_step = parse_int<long>(e);
      has_start = true;
    } else if (e.key == "end") {
      ev.end_step = parse_int<long>(e);
      end_line = e.line;
    } else if (e.key == "Z") {
      ev.injury = parse_gaussian(e);
    } else if (e.key == "Q_s") {
      ev.services = parse_gaussian(e);
    } else if (e.key == "Q_e") {
      ev.utility = parse_gaussian(e);
    } else if (auto v = state_var_from_key(e.key)) {
      ev.override_for(*v) = parse_gaussian(e);
    } else {
      unknown_key(sec, e);
    }
  }
  if (!has_community) fail_at(sec.line, "[" + sec.name + "] needs 'community'");
  if (!has_start) fail_at(sec.line, "[" + sec.name + "] needs 'start'");
  if (ev.start_step < 0) fail_at(sec.line, "[" + sec.name + "]: start must be >= 0");
  if (ev.end_step < ev.start_step) fail_at(end_line, "[" + sec.name + "]: end precedes start");
  if (ev.end_step > horizon) {
    fail_at(end_line, "[" + sec.name + "]: end " + std::to_string(ev.end_step) +
                          " exceeds horizon " + std::to_string(horizon));
  }
  return ev;
}

Scenario scenario_from_document(const Document& doc) {
  Scenario s = default_scenario();
  if (doc.sections.empty()) return s;
  s.name = "custom";

  auto section = [&](std::string_view name) -> const Section* {
    for (const auto& sec : doc.sections) {
      if (sec.name == name) return &sec;
    }
    return nullptr;
  };
  for (const auto& sec : doc.sections) {
    const auto& n = sec.name;
    const bool known = n == "simulation" || n == "params" || n == "energy" || n == "weights" ||
                       n == "media" || n == "empathy" || n.starts_with("community.") ||
                       n.starts_with("event.");
    if (!known) fail_at(sec.line, "unknown section [" + n + "]");
  }

  if (const auto* sec = section("simulation")) apply_simulation(*sec, s);
  if (const auto* sec = section("params")) apply_params(*sec, s.params);
  if (const auto* sec = section("energy")) {
    for (const auto& e : sec->entries) {
      if (!apply_real_field(kEnergyFields, s.energy, e)) unknown_key(*sec, e);
    }
    try {
      s.energy.validate();
    } catch (const ConfigError& err) {
      fail_at(sec->line, err.what());
    }
  }
  if (const auto* sec = section("weights")) {
    for (const auto& e : sec->entries) {
      if (!apply_real_field(kWeightFields, s.weights, e)) unknown_key(*sec, e);
    }
    try {
      s.weights.validate();
    } catch (const ConfigError& err) {
      fail_at(sec->line, err.what());
    }
  }
  if (const auto* sec = section("media")) apply_media(*sec, s.media);

  std::vector<CommunitySpec> communities;
  for (const auto& sec : doc.sections) {
    if (!sec.name.starts_with("community.")) continue;
    const std::string id = sec.name.substr(10);
    if (!valid_id(id)) fail_at(sec.line, "invalid community id '" + id + "'");
    communities.push_back(parse_community(sec, id));
  }
  if (!communities.empty()) {
    s.communities = std::move(communities);
    s.empathy.blocks.clear();
    for (const auto& c : s.communities) s.empathy.set(c.id, c.id, GaussianSpec::constant(1.0));
  }
  auto known_community = [&](const std::string& id) { return s.community_index(id) >= 0; };

  if (const auto* sec = section("empathy")) {
    s.empathy.blocks.clear();
    for (const auto& e : sec->entries) {
      const auto colon = e.key.find(':');
      if (colon == std::string::npos) fail_at(e.line, "empathy key must be '<id>:<id>'");
      const std::string a = e.key.substr(0, colon);
      const std::string b = e.key.substr(colon + 1);
      if (!known_community(a) || !known_community(b)) {
        fail_at(e.line, "empathy block '" + e.key + "' references an unknown community");
      }
      if (s.empathy.block(a, b)) fail_at(e.line, "empathy block '" + e.key + "' listed twice");
      const GaussianSpec g = parse_gaussian(e);
      if (g.mean < 0.0) fail_at(e.line, "empathy mean must be >= 0");
      s.empathy.set(a, b, g);
    }
  }

  std::set<std::pair<std::string, long>> starts;
  for (const auto& sec : doc.sections) {
    if (!sec.name.starts_with("event.")) continue;
    DisasterEvent ev = parse_event(sec, s.horizon);
    if (!known_community(ev.community)) {
      fail_at(sec.line, "[" + sec.name + "] references unknown community '" + ev.community + "'");
    }
    if (!starts.emplace(ev.community, ev.start_step).second) {
      fail_at(sec.line, "[" + sec.name + "] starts at the same step as another event on community '" +
                            ev.community + "'");
    }
    s.events.push_back(std::move(ev));
  }

  s.validate();
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  return scenario_from_document(parse_document(text));
}

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  auto kv = [&](std::string_view k, const std::string& v) { out << k << " = " << v << "\n"; };

  out << "[simulation]\n";
  kv("name", s.name);
  kv("horizon", std::to_string(s.horizon));
  kv("replications", std::to_string(s.replications));
  kv("seed", std::to_string(s.base_seed));
  kv("share_after_dynamics", s.share_after_dynamics ? "true" : "false");

  out << "\n[params]\n";
  for (const auto& f : kParamFields) kv(f.key, format_real(s.params.*(f.member)));
  kv("experience_raises_risk", s.params.experience_raises_risk ? "true" : "false");

  out << "\n[energy]\n";
  for (const auto& f : kEnergyFields) kv(f.key, format_real(s.energy.*(f.member)));

  out << "\n[weights]\n";
  for (const auto& f : kWeightFields) kv(f.key, format_real(s.weights.*(f.member)));

  out << "\n[media]\n";
  kv("kind", std::string(to_string(s.media.kind)));
  for (const auto& f : kMediaFields) kv(f.key, format_real(s.media.*(f.member)));
  kv("n_pos", format_gaussian(s.media.positive));
  if (!s.media.positive_schedule.empty()) kv("n_pos_schedule", format_list(s.media.positive_schedule));

  for (const auto& c : s.communities) {
    out << "\n[community." << c.id << "]\n";
    kv("population", std::to_string(c.population));
    kv("prosumer_fraction", format_real(c.prosumer_fraction));
    for (StateVar v : kAllStateVars) {
      kv(config_key(v), format_gaussian(c.var(v).spec));
      if (!c.var(v).per_agent.empty()) {
        kv(std::string(config_key(v)) + ".agents", format_list(c.var(v).per_agent));
      }
    }
    kv("Z", format_gaussian(c.infrastructure.injury));
    kv("Q_s", format_gaussian(c.infrastructure.services));
    kv("Q_e", format_gaussian(c.infrastructure.utility));
  }

  out << "\n[empathy]\n";
  for (const auto& blk : s.empathy.blocks) kv(blk.a + ":" + blk.b, format_gaussian(blk.weight));

  for (std::size_t k = 0; k < s.events.size(); ++k) {
    const auto& e = s.events[k];
    out << "\n[event." << (k + 1) << "]\n";
    kv("community", e.community);
    kv("start", std::to_string(e.start_step));
    kv("end", std::to_string(e.end_step));
    if (e.injury) kv("Z", format_gaussian(*e.injury));
    if (e.services) kv("Q_s", format_gaussian(*e.services));
    if (e.utility) kv("Q_e", format_gaussian(*e.utility));
    for (StateVar v : kAllStateVars) {
      if (e.override_for(v)) kv(config_key(v), format_gaussian(*e.override_for(v)));
    }
  }
  return out.str();
}

std::uint64_t scenario_fingerprint(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : render_scenario(s)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Scenario with_config_value(const Scenario& s, std::string_view path, std::string_view value) {
  Document doc = parse_document(render_scenario(s));
  Section* target = nullptr;
  for (auto& sec : doc.sections) {
    if (path.size() > sec.name.size() && path.starts_with(sec.name) &&
        path[sec.name.size()] == '.' && (!target || sec.name.size() > target->name.size())) {
      target = &sec;
    }
  }
  if (!target) throw ConfigError("parameter path '" + std::string(path) + "' names no section");
  const std::string rest(path.substr(target->name.size() + 1));

  if (Entry* e = target->find(rest)) {
    e->value = std::string(value);
  } else {
    int component = -1;
    std::string key;
    if (rest.ends_with(".mean")) {
      component = 0;
      key = rest.substr(0, rest.size() - 5);
    } else if (rest.ends_with(".std")) {
      component = 1;
      key = rest.substr(0, rest.size() - 4);
    }
    Entry* g = component >= 0 ? target->find(key) : nullptr;
    if (component < 0) {
      // Absent optional key; the parser rejects it if it is unknown.
      target->entries.push_back({rest, std::string(value), target->line});
      return scenario_from_document(doc);
    }
    if (!g) {
      throw ConfigError("parameter path '" + std::string(path) + "' does not resolve to a key in [" +
                        target->name + "]");
    }
    GaussianSpec spec = parse_gaussian(*g);
    const Real v = parse_real(*g, value);
    (component == 0 ? spec.mean : spec.std) = v;
    g->value = format_gaussian(spec);
  }
  return scenario_from_document(doc);
}

Scenario with_horizon(Scenario s, long horizon) {
  s.horizon = horizon;
  std::erase_if(s.events, [&](const DisasterEvent& e) { return e.start_step > horizon; });
  for (auto& e : s.events) e.end_step = std::min(e.end_step, horizon);
  s.validate();
  return s;
}

}  // namespace resil
