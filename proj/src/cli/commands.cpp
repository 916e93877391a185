#include "resil/cli/commands.hpp"

#include "resil/cli/plot.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace resil::cli {

namespace {

constexpr Metric kWellBeing[] = {Metric::MentalWb, Metric::PhysicalWb, Metric::Resilience};

template <typename T>
T parse_field(std::string_view text, std::string_view what) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

const DisasterProfile& find_disaster(const DisasterCatalog& catalog, std::string_view name) {
  if (const DisasterProfile* p = catalog.find(name)) return *p;
  throw ConfigError("unknown disaster type '" + std::string(name) +
                    "'; available: " + join(catalog.names()));
}

Scenario apply_overrides(Scenario s, const RunRequest& r) {
  if (r.steps) {
    if (*r.steps < 0) throw ConfigError("--steps must be >= 0");
    s = with_horizon(std::move(s), *r.steps);
  }
  if (r.replications) {
    if (*r.replications < 1) throw ConfigError("--replications must be >= 1");
    s.replications = *r.replications;
  }
  if (r.seed) s.base_seed = *r.seed;
  s.validate();
  return s;
}

}  // namespace

std::vector<NamedScenario> resolve_builtin(std::string_view name) {
  const auto colon = name.find(':');
  const std::string_view kind = name.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? "" : name.substr(colon + 1);
  if (kind == "case1") {
    return case_study_1_family(rest.empty() ? "default" : rest);
  }
  if (kind == "case2") {
    if (rest.size() != 8 || rest.substr(0, 7) != "example") {
      throw ConfigError("case2 builtin must be case2:example1, case2:example2 or case2:example3");
    }
    const Scenario s = build_case_study_2(parse_field<int>(rest.substr(7), "case2 example"));
    return {{std::string(rest), s}};
  }
  if (kind == "population") {
    const auto sep = rest.find(':');
    if (sep == std::string_view::npos) {
      throw ConfigError("population builtin must be population:<agents>:<empathy mean>");
    }
    const long pop = parse_field<long>(rest.substr(0, sep), "population");
    const Real empathy = parse_field<Real>(rest.substr(sep + 1), "empathy mean");
    const Scenario s = build_population_study(pop, empathy);
    return {{s.name, s}};
  }
  if (kind == "emdat") {
    const auto& profile = find_disaster(bundled_disaster_catalog(), rest);
    return {{profile.disaster_type, build_emdat_scenario(profile)}};
  }
  throw ConfigError("unknown builtin '" + std::string(name) +
                    "'; expected case1:<family|variant>, case2:example<N>, "
                    "population:<agents>:<empathy>, or emdat:<type>");
}

std::vector<NamedScenario> load_scenarios(const RunRequest& request) {
  const bool has_builtin = !request.builtin.empty();
  const bool has_file = !request.scenario_file.empty();
  if (has_builtin == has_file) {
    throw ConfigError("exactly one of --builtin or --scenario is required");
  }
  std::vector<NamedScenario> out;
  if (has_builtin) {
    out = resolve_builtin(request.builtin);
  } else {
    Scenario s = parse_scenario(read_file(request.scenario_file));
    out.push_back({s.name, std::move(s)});
  }
  for (auto& n : out) n.scenario = apply_overrides(std::move(n.scenario), request);
  return out;
}

std::vector<SubRun> execute(const std::vector<NamedScenario>& scenarios,
                            const RunRequest& request, std::ostream* progress) {
  std::vector<SubRun> runs;
  int k = 0;
  for (const auto& [label, s] : scenarios) {
    ++k;
    if (progress) {
      *progress << "[" << k << "/" << scenarios.size() << "] " << label << ": "
                << s.replications << " replications x " << s.horizon << " steps\n";
    }
    MonteCarloOptions mc;
    mc.threads = request.threads;
    SubRun run{label, s, run_monte_carlo(s, s.replications, s.base_seed, mc).series, {}};
    if (request.dump_agents) run.dump = run_simulation(s, {s.base_seed, 0}, {true});
    runs.push_back(std::move(run));
  }
  return runs;
}

void write_outputs(const std::vector<SubRun>& runs, const RunRequest& request,
                   std::span<const Metric> metrics, std::ostream* progress) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(request.out_dir, ec);
  if (ec || !fs::is_directory(request.out_dir)) {
    throw IoError("cannot create output directory " + request.out_dir +
                  (ec ? ": " + ec.message() : std::string()));
  }
  std::ostringstream csv;
  write_metrics_csv(csv, runs, metrics);
  const std::string metrics_path = (fs::path(request.out_dir) / "metrics.csv").string();
  write_file(metrics_path, csv.str());
  if (progress) *progress << "wrote " << metrics_path << "\n";

  if (request.dump_agents) {
    std::ostringstream agents;
    write_agents_csv(agents, runs);
    const std::string path = (fs::path(request.out_dir) / "agents.csv").string();
    write_file(path, agents.str());
    if (progress) *progress << "wrote " << path << "\n";
  }
  if (request.emit_plots) {
    const auto table = read_metrics_csv(csv.str());
    const auto paths = write_plots(table, (fs::path(request.out_dir) / "plots").string());
    if (progress) *progress << "wrote " << paths.size() << " plots\n";
  }
}

std::string default_out_dir() {
  if (const char* env = std::getenv("RESILSIM_OUT"); env != nullptr && *env != '\0') return env;
  return "out";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"resilsim: community resilience simulator"};
  app.require_subcommand(1);

  RunRequest req;
  req.out_dir = default_out_dir();
  long steps = 0, replications = 0;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub, bool with_source) {
    if (with_source) {
      auto* b = sub->add_option("--builtin", req.builtin, "Built-in scenario name");
      auto* f = sub->add_option("--scenario", req.scenario_file, "Scenario config file");
      b->excludes(f);
      f->excludes(b);
    }
    sub->add_option("--steps", steps, "Horizon in steps (default 300)");
    sub->add_option("--replications", replications, "Monte Carlo replications (default 100)");
    sub->add_option("--seed", seed, "Base seed (default 0)");
    sub->add_option("--out", req.out_dir, "Output directory (default $RESILSIM_OUT or ./out)");
    sub->add_option("--threads", req.threads, "Worker threads (default: all cores)");
    sub->add_flag("--emit-plots", req.emit_plots, "Write one SVG chart per metric");
    sub->add_flag("--dump-agents", req.dump_agents, "Write agents.csv for replication 0");
  };

  auto* run = app.add_subcommand("run", "Run a scenario or a built-in experiment family");
  common(run, true);

  auto* sweep = app.add_subcommand("sweep", "Run one sub-run per value of a config parameter");
  common(sweep, true);
  std::string param;
  std::vector<std::string> values;
  std::string values_text;
  sweep->add_option("--param", param, "Config path, e.g. community.1.M_C.mean")->required();
  sweep->add_option("--values", values_text, "Comma-separated values")->required();

  auto* emdat = app.add_subcommand("emdat", "Run catalog disasters and emit well-being series");
  common(emdat, false);
  std::string disaster;
  std::string catalog_file;
  emdat->add_option("--disaster", disaster, "Disaster type, or 'all'")->required();
  emdat->add_option("--catalog", catalog_file, "Catalog CSV (default: bundled table)");

  auto* plot = app.add_subcommand("plot", "Regenerate SVG charts from a metrics.csv");
  std::string csv_file;
  std::string plot_dir;
  plot->add_option("csv", csv_file, "metrics.csv to plot")->required();
  plot->add_option("--out", plot_dir, "Directory for the charts (default: <csv dir>/plots)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kValidation;
  }

  auto capture = [&](CLI::App* sub) {
    if (sub->count("--steps")) req.steps = steps;
    if (sub->count("--replications")) req.replications = replications;
    if (sub->count("--seed")) req.seed = seed;
  };

  try {
    if (run->parsed()) {
      capture(run);
      const auto runs = execute(load_scenarios(req), req, &err);
      write_outputs(runs, req, {}, &err);
    } else if (sweep->parsed()) {
      capture(sweep);
      std::string_view rest = values_text;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        if (item.empty()) throw ConfigError("--values contains an empty entry");
        values.emplace_back(item);
        rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
        if (comma != std::string_view::npos && rest.empty()) {
          throw ConfigError("--values contains an empty entry");
        }
      }
      if (values.empty()) throw ConfigError("--values must list at least one value");
      const auto base = load_scenarios(req);
      if (base.size() != 1) {
        throw ConfigError("sweep needs a single scenario; '" + req.builtin + "' expands to " +
                          std::to_string(base.size()));
      }
      std::vector<NamedScenario> swept;
      for (const auto& v : values) {
        swept.push_back({v, with_config_value(base.front().scenario, param, v)});
      }
      const auto runs = execute(swept, req, &err);
      write_outputs(runs, req, {}, &err);
    } else if (emdat->parsed()) {
      capture(emdat);
      const DisasterCatalog catalog = catalog_file.empty()
                                          ? bundled_disaster_catalog()
                                          : load_disaster_catalog(read_file(catalog_file));
      std::vector<const DisasterProfile*> chosen;
      if (disaster == "all") {
        for (const auto& p : catalog.profiles()) chosen.push_back(&p);
      } else {
        chosen.push_back(&find_disaster(catalog, disaster));
      }
      std::vector<NamedScenario> scenarios;
      for (const DisasterProfile* p : chosen) {
        scenarios.push_back({p->disaster_type, apply_overrides(build_emdat_scenario(*p), req)});
      }
      const auto runs = execute(scenarios, req, &err);
      write_outputs(runs, req, kWellBeing, &err);
    } else if (plot->parsed()) {
      const auto table = read_metrics_csv(read_file(csv_file));
      if (plot_dir.empty()) {
        plot_dir = (std::filesystem::path(csv_file).parent_path() / "plots").string();
      }
      const auto paths = write_plots(table, plot_dir);
      err << "wrote " << paths.size() << " plots to " << plot_dir << "\n";
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace resil::cli
