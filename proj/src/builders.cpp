// Built-in scenarios for the published experiments.

#include "resil/scenario.hpp"

#include <charconv>
#include <functional>
#include <map>

namespace resil {

namespace {

constexpr long kHorizon = 300;

GaussianSpec g(Real mean, Real std = 0.0) { return {mean, std}; }

void set_all(Scenario& s, StateVar v, GaussianSpec spec) {
  for (auto& c : s.communities) c.var(v).spec = spec;
}

void set_all_agents(Scenario& s, StateVar v, const std::vector<Real>& values) {
  for (auto& c : s.communities) c.var(v).per_agent = values;
}

DisasterEvent whole_run_event(const std::string& community, long start = 0) {
  DisasterEvent e;
  e.community = community;
  e.start_step = start;
  e.end_step = kHorizon;
  return e;
}

// Case-study-2 community 1 (before its disaster).
CommunitySpec community_one(const std::string& id, long population) {
  CommunitySpec c = CommunitySpec::defaults(id, population);
  c.var(StateVar::Risk).spec = g(0.8, 0.1);
  c.var(StateVar::InfoSeeking).spec = g(0.8, 0.1);
  c.var(StateVar::Fear).spec = g(0.98, 0.02);
  c.var(StateVar::Flexibility).spec = g(0.5, 0.1);
  c.var(StateVar::Experience).spec = g(0.5, 0.1);
  c.var(StateVar::Cooperation).spec = g(0.5, 0.1);
  c.var(StateVar::Physical).spec = g(0.5, 0.1);
  c.var(StateVar::DerFraction).spec = g(0.9, 0.1);
  c.infrastructure = {g(0.01, 0.01), g(0.9, 0.1), g(0.9, 0.1)};
  return c;
}

// Severe disaster of case-study-2 example 1: high injury, no utility power
// and no emergency services, on-site generation only.
DisasterEvent community_one_disaster(const std::string& id) {
  DisasterEvent e = whole_run_event(id);
  e.injury = g(0.9, 0.1);
  e.services = g(0.0);
  e.utility = g(0.0);
  e.override_for(StateVar::DerFraction) = g(0.5, 0.1);
  return e;
}

MediaProfile mixed_news() {
  MediaProfile m = MediaProfile::constant(1.0, 0.0);
  m.positive = g(0.5, 0.1);
  return m;
}

std::string format_number(Real x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const std::vector<std::pair<std::string, std::function<void(Scenario&)>>>& case1_variants() {
  using Table = std::vector<std::pair<std::string, std::function<void(Scenario&)>>>;
  static const Table table = [] {
    Table out;
    Table* t = &out;
    t->emplace_back("default", [](Scenario&) {});
    for (Real v : {0.0, 0.5, 1.0}) {
      t->emplace_back("flexibility-" + format_number(v),
                      [v](Scenario& s) { set_all(s, StateVar::Flexibility, g(v)); });
    }
    for (Real v : {0.0, 0.5, 1.0}) {
      t->emplace_back("cooperation-" + format_number(v),
                      [v](Scenario& s) { set_all(s, StateVar::Cooperation, g(v)); });
    }
    for (Real v : {0.0, 0.5, 1.0}) {
      t->emplace_back("experience-" + format_number(v),
                      [v](Scenario& s) { set_all(s, StateVar::Experience, g(v)); });
    }
    const std::pair<Real, Real> coop_exp[] = {{1.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}};
    for (int k = 0; k < 3; ++k) {
      const auto [c, l] = coop_exp[k];
      t->emplace_back("coop-exp-" + std::to_string(k + 1), [c, l](Scenario& s) {
        set_all(s, StateVar::Cooperation, g(c));
        set_all(s, StateVar::Experience, g(l));
      });
    }
    for (Real c : {0.2, 0.9}) {
      t->emplace_back("sharing-" + format_number(c), [c](Scenario& s) {
        set_all(s, StateVar::Cooperation, g(c));
        set_all_agents(s, StateVar::DerFraction, {0.0, 0.5, 1.0});
      });
    }
    t->emplace_back("services-baseline",
                    [](Scenario& s) { for (auto& c : s.communities) c.infrastructure.injury = g(0.1); });
    t->emplace_back("services-drop", [](Scenario& s) {
      for (auto& c : s.communities) {
        c.infrastructure.injury = g(0.1);
        DisasterEvent e = whole_run_event(c.id, 100);
        e.services = g(0.1);
        s.events.push_back(e);
      }
    });
    t->emplace_back("injury-high",
                    [](Scenario& s) { for (auto& c : s.communities) c.infrastructure.injury = g(0.9); });
    t->emplace_back("news-positive", [](Scenario& s) {
      for (auto& c : s.communities) c.infrastructure.injury = g(0.1);
      s.media.positive = g(0.9);
    });
    t->emplace_back("media-constant", [](Scenario&) {});
    t->emplace_back("media-sudden",
                    [](Scenario& s) { s.media = MediaProfile::damped_exponential(); });
    t->emplace_back("media-gradual", [](Scenario& s) { s.media = MediaProfile::gaussian_pulse(); });
    for (const auto& [label, gamma] : {std::pair{"empathy-low", 0.2}, std::pair{"empathy-high", 1.0}}) {
      const Real weight = gamma;
      t->emplace_back(label, [weight](Scenario& s) {
        for (StateVar v : {StateVar::Fear, StateVar::Risk, StateVar::InfoSeeking,
                           StateVar::Cooperation, StateVar::Experience, StateVar::Flexibility,
                           StateVar::Physical, StateVar::DerFraction}) {
          set_all_agents(s, v, {0.0, 0.5, 1.0});
        }
        for (auto& blk : s.empathy.blocks) blk.weight = g(weight);
      });
    }
    return out;
  }();
  return table;
}

const std::map<std::string, std::vector<std::string>>& case1_families() {
  static const std::map<std::string, std::vector<std::string>> families = {
      {"default", {"default"}},
      {"flexibility", {"flexibility-0", "flexibility-0.5", "flexibility-1"}},
      {"cooperation", {"cooperation-0", "cooperation-0.5", "cooperation-1"}},
      {"experience", {"experience-0", "experience-0.5", "experience-1"}},
      {"coop-exp", {"coop-exp-1", "coop-exp-2", "coop-exp-3"}},
      {"sharing", {"sharing-0.2", "sharing-0.9"}},
      {"services", {"services-baseline", "services-drop", "injury-high", "news-positive"}},
      {"media", {"media-constant", "media-sudden", "media-gradual"}},
      {"empathy", {"empathy-low", "empathy-high"}},
  };
  return families;
}

}  // namespace

Scenario default_scenario() {
  Scenario s;
  s.name = "case1:default";
  for (const char* id : {"1", "2", "3"}) {
    s.communities.push_back(CommunitySpec::defaults(id, 3));
    s.empathy.set(id, id, g(1.0));
  }
  s.media = MediaProfile::constant(1.0, 0.0);
  s.horizon = kHorizon;
  return s;
}

Scenario build_case_study_1(std::string_view variant) {
  for (const auto& [name, apply] : case1_variants()) {
    if (name == variant) {
      Scenario s = default_scenario();
      s.name = "case1:" + name;
      apply(s);
      s.validate();
      return s;
    }
  }
  std::string known;
  for (const auto& name : case_study_1_variants()) known += (known.empty() ? "" : ", ") + name;
  throw ConfigError("unknown case-study-1 variant '" + std::string(variant) + "' (known: " + known + ")");
}

std::vector<std::string> case_study_1_variants() {
  std::vector<std::string> out;
  for (const auto& [name, apply] : case1_variants()) out.push_back(name);
  return out;
}

std::vector<std::string> case_study_1_families() {
  std::vector<std::string> out;
  for (const auto& [name, members] : case1_families()) out.push_back(name);
  return out;
}

std::vector<NamedScenario> case_study_1_family(std::string_view family) {
  const auto& families = case1_families();
  std::vector<NamedScenario> out;
  if (const auto it = families.find(std::string(family)); it != families.end()) {
    for (const auto& v : it->second) out.push_back({v, build_case_study_1(v)});
    return out;
  }
  out.push_back({std::string(family), build_case_study_1(family)});
  return out;
}

Scenario build_case_study_2(int example) {
  if (example < 1 || example > 3) {
    throw ConfigError("case-study-2 example must be 1, 2 or 3, got " + std::to_string(example));
  }
  Scenario s;
  s.name = "case2:example" + std::to_string(example);
  s.horizon = kHorizon;
  s.media = mixed_news();

  s.communities.push_back(community_one("1", 150));

  CommunitySpec c2 = community_one("2", 250);
  c2.var(StateVar::Risk).spec = g(0.7, 0.1);
  c2.var(StateVar::InfoSeeking).spec = g(0.7, 0.1);
  c2.var(StateVar::Fear).spec = g(0.1, 0.1);
  c2.var(StateVar::Physical).spec = g(0.98, 0.02);
  s.communities.push_back(c2);

  const long rest[] = {135, 450, 500, 120};
  for (int k = 0; k < 4; ++k) {
    CommunitySpec c = c2;
    c.id = std::to_string(k + 3);
    c.population = rest[k];
    c.var(StateVar::Risk).spec = g(0.1, 0.1);
    c.var(StateVar::InfoSeeking).spec = g(0.1, 0.1);
    s.communities.push_back(c);
  }

  s.empathy.set("1", "1", g(0.9, 0.1));
  s.empathy.set("1", "2", g(0.9, 0.1));
  s.empathy.set("2", "2", g(0.9, 0.1));
  for (const char* id : {"3", "4", "5", "6"}) s.empathy.set(id, id, g(0.9, 0.1));

  s.events.push_back(community_one_disaster("1"));
  if (example == 2) {
    DisasterEvent e = whole_run_event("5");
    e.injury = g(0.1, 0.1);
    for (StateVar v : {StateVar::Fear, StateVar::Risk, StateVar::InfoSeeking}) {
      e.override_for(v) = g(0.9, 0.1);
    }
    s.events.push_back(e);
  } else if (example == 3) {
    DisasterEvent e = whole_run_event("5", 100);
    e.utility = g(0.0);
    s.events.push_back(e);
  }
  s.validate();
  return s;
}

Scenario build_population_study(long population, Real empathy_mean) {
  if (population < 1) throw ConfigError("population must be >= 1");
  Scenario s;
  s.name = "population:" + std::to_string(population) + ":" + format_number(empathy_mean);
  s.horizon = kHorizon;
  s.media = mixed_news();
  s.communities.push_back(community_one("1", population));
  s.empathy.set("1", "1", g(empathy_mean, 0.1));
  s.events.push_back(community_one_disaster("1"));
  s.validate();
  return s;
}

Scenario build_emdat_scenario(const DisasterProfile& profile) {
  Scenario s;
  s.name = "emdat:" + profile.disaster_type;
  s.horizon = kHorizon;
  s.media = mixed_news();
  CommunitySpec c = community_one("1", 150);
  c.var(StateVar::Fear).spec.mean = profile.initial_fear;
  s.communities.push_back(c);
  s.empathy.set("1", "1", g(0.9, 0.1));
  DisasterEvent e = whole_run_event("1");
  e.injury = g(profile.injury_factor);
  e.utility = g(profile.availability_electricity);
  e.services = g(profile.availability_emergency);
  e.override_for(StateVar::DerFraction) = g(0.5, 0.1);
  s.events.push_back(e);
  s.validate();
  return s;
}

}  // namespace resil
