#include "doctest.h"

#include "resil/cli/commands.hpp"
#include "resil/cli/output.hpp"
#include "resil/cli/plot.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

using namespace resil;
using namespace resil::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "resilsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("resilsim_test_" + name);
  fs::remove_all(p);
  return p;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("format_real is shortest round-trip") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.1 + 0.2) == "0.30000000000000004");
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("builtin names resolve") {
  CHECK(resolve_builtin("case1:flexibility").size() == 3);
  CHECK(resolve_builtin("case1:services-drop").size() == 1);
  CHECK(resolve_builtin("case2:example3").front().scenario == build_case_study_2(3));
  CHECK(resolve_builtin("population:40:0.5").front().scenario.total_population() == 40);
  CHECK(resolve_builtin("emdat:flood").size() == 1);
  CHECK_THROWS_AS(resolve_builtin("case2:example9"), ConfigError);
  CHECK_THROWS_AS(resolve_builtin("population:x:0.5"), ConfigError);
  CHECK_THROWS_AS(resolve_builtin("nothing"), ConfigError);
}

TEST_CASE("run writes the metrics schema") {
  const fs::path dir = scratch("case2");
  const Result r = invoke({"run", "--builtin", "case2:example1", "--replications", "2", "--out",
                        dir.string()});
  REQUIRE(r.code == 0);
  const std::string csv = read_file((dir / "metrics.csv").string());
  CHECK(csv.rfind("step,community,metric,mean,std\n", 0) == 0);
  CHECK(line_count(csv) == 1 + 6 * 301 * 11);
  const MetricsTable t = read_metrics_csv(csv);
  CHECK(!t.has_run);
  std::set<std::string> metrics;
  for (const auto& row : t.rows) {
    metrics.insert(row.metric);
    CHECK(row.mean >= 0.0);
    CHECK(row.mean <= 1.0);
    CHECK(row.std >= 0.0);
  }
  CHECK(metrics.size() == 11);
  CHECK(!fs::exists(dir / "agents.csv"));
  CHECK(!fs::exists(dir / "plots"));
  CHECK(r.err.find("[1/1]") != std::string::npos);
}

TEST_CASE("families add a run column") {
  const fs::path dir = scratch("family");
  const Result r = invoke({"run", "--builtin", "case1:flexibility", "--steps", "5", "--replications",
                        "1", "--out", dir.string(), "--emit-plots"});
  REQUIRE(r.code == 0);
  const std::string csv = read_file((dir / "metrics.csv").string());
  CHECK(csv.rfind("run,step,community,metric,mean,std\n", 0) == 0);
  const MetricsTable t = read_metrics_csv(csv);
  std::set<std::string> runs;
  for (const auto& row : t.rows) runs.insert(row.run);
  CHECK(runs.size() == 3);
  CHECK(line_count(csv) == 1 + 3 * 6 * 3 * 11);
  CHECK(fs::exists(dir / "plots" / "fear.svg"));
  CHECK(fs::exists(dir / "plots" / "resilience.svg"));
}

TEST_CASE("plot regenerates the same figures") {
  const fs::path dir = scratch("plot");
  REQUIRE(invoke({"run", "--builtin", "case1:sharing", "--steps", "8", "--replications", "2",
               "--out", dir.string(), "--emit-plots"})
              .code == 0);
  const fs::path again = dir / "again";
  REQUIRE(invoke({"plot", (dir / "metrics.csv").string(), "--out", again.string()}).code == 0);
  for (const auto& entry : fs::directory_iterator(dir / "plots")) {
    const std::string name = entry.path().filename().string();
    CHECK(read_file(entry.path().string()) == read_file((again / name).string()));
  }
  const std::string svg = read_file((again / "fear.svg").string());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("agent dumps") {
  const fs::path dir = scratch("agents");
  REQUIRE(invoke({"run", "--builtin", "case1:services-drop", "--steps", "4", "--replications", "3",
               "--out", dir.string(), "--dump-agents"})
              .code == 0);
  const std::string csv = read_file((dir / "agents.csv").string());
  CHECK(csv.rfind("step,agent,community,component,fear,", 0) == 0);
  CHECK(line_count(csv) == 1 + 5 * 9);
}

TEST_CASE("scenario files") {
  const fs::path dir = scratch("file");
  fs::create_directories(dir);
  const fs::path cfg = dir / "s.cfg";
  write_file(cfg.string(), render_scenario(with_horizon(default_scenario(), 3)));
  CHECK(invoke({"run", "--scenario", cfg.string(), "--replications", "1", "--out",
             (dir / "o").string()})
            .code == 0);
  CHECK(line_count(read_file((dir / "o" / "metrics.csv").string())) == 1 + 4 * 3 * 11);

  write_file(cfg.string(), "[simulation]\nhorizon = -4\n");
  const Result bad = invoke({"run", "--scenario", cfg.string(), "--out", (dir / "o").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("exit codes") {
  const Result missing = invoke({"run", "--scenario", "/nonexistent/x.cfg"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("file not found") != std::string::npos);
  CHECK(invoke({"run"}).code == 1);
  CHECK(invoke({"run", "--builtin", "case2:example1", "--scenario", "x"}).code == 1);
  CHECK(invoke({"run", "--builtin", "bogus"}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"run", "--builtin", "case2:example1", "--steps", "-1"}).code == 1);
  CHECK(invoke({"plot", "/nonexistent/metrics.csv"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("sweep") {
  const fs::path dir = scratch("sweep");
  const Result r = invoke({"sweep", "--builtin", "case1:services-drop", "--param",
                        "community.1.M_C.mean", "--values", "0.1,0.5,0.9", "--steps", "5",
                        "--replications", "2", "--out", (dir / "s").string()});
  REQUIRE(r.code == 0);
  const MetricsTable t = read_metrics_csv(read_file((dir / "s" / "metrics.csv").string()));
  std::set<std::string> runs;
  for (const auto& row : t.rows) runs.insert(row.run);
  CHECK(runs == std::set<std::string>{"0.1", "0.5", "0.9"});

  REQUIRE(invoke({"sweep", "--builtin", "case1:services-drop", "--param", "community.1.M_C.mean",
               "--values", "0.5", "--steps", "5", "--replications", "2", "--out",
               (dir / "one").string()})
              .code == 0);
  REQUIRE(invoke({"run", "--builtin", "case1:services-drop", "--steps", "5", "--replications", "2",
               "--out", (dir / "run").string()})
              .code == 0);
  CHECK(read_file((dir / "one" / "metrics.csv").string()) ==
        read_file((dir / "run" / "metrics.csv").string()));

  CHECK(invoke({"sweep", "--builtin", "case1:services-drop", "--param", "params.lambda", "--values",
             "", "--out", (dir / "e").string()})
            .code == 1);
  CHECK(invoke({"sweep", "--builtin", "case1:services-drop", "--param", "params.lambda", "--values",
             "0.1,,0.2", "--out", (dir / "e").string()})
            .code == 1);
  CHECK(invoke({"sweep", "--builtin", "case1:flexibility", "--param", "params.lambda", "--values",
             "0.1", "--out", (dir / "e").string()})
            .code == 1);
  CHECK(invoke({"sweep", "--builtin", "case1:services-drop", "--param", "params.nope", "--values",
             "0.1", "--out", (dir / "e").string()})
            .code == 1);
}

TEST_CASE("emdat") {
  const fs::path dir = scratch("emdat");
  const Result unknown = invoke({"emdat", "--disaster", "Meteor", "--out", dir.string()});
  CHECK(unknown.code == 1);
  for (const auto& name : bundled_disaster_catalog().names()) {
    CHECK(unknown.err.find(name) != std::string::npos);
  }

  REQUIRE(invoke({"emdat", "--disaster", "flood", "--steps", "5", "--replications", "2", "--out",
               dir.string()})
              .code == 0);
  const MetricsTable t = read_metrics_csv(read_file((dir / "metrics.csv").string()));
  std::set<std::string> metrics;
  for (const auto& row : t.rows) metrics.insert(row.metric);
  CHECK(metrics == std::set<std::string>{"mental_wb", "physical_wb", "resilience"});

  const fs::path all = scratch("emdat_all");
  REQUIRE(invoke({"emdat", "--disaster", "all", "--steps", "2", "--replications", "1", "--out",
               all.string()})
              .code == 0);
  const MetricsTable ta = read_metrics_csv(read_file((all / "metrics.csv").string()));
  std::set<std::string> runs;
  for (const auto& row : ta.rows) runs.insert(row.run);
  CHECK(runs.size() == 10);
  CHECK(runs.count("Earthquake") == 1);

  const fs::path cat = scratch("catalog.csv");
  write_file(cat.string(), "disaster_type,injury_factor,fear,AE,AES\nMeteor,2,1,0,0\n");
  CHECK(invoke({"emdat", "--disaster", "Meteor", "--catalog", cat.string(), "--out", dir.string()})
            .code == 1);
}

TEST_CASE("output directory defaults to RESILSIM_OUT") {
  ::unsetenv("RESILSIM_OUT");
  CHECK(default_out_dir() == "out");
  const fs::path dir = scratch("env");
  ::setenv("RESILSIM_OUT", dir.string().c_str(), 1);
  CHECK(default_out_dir() == dir.string());
  CHECK(invoke({"run", "--builtin", "case2:example1", "--steps", "1", "--replications", "1"}).code ==
        0);
  CHECK(fs::exists(dir / "metrics.csv"));
  ::unsetenv("RESILSIM_OUT");
}

TEST_CASE("metrics reader rejects malformed input") {
  CHECK_THROWS_AS(read_metrics_csv("a,b\n"), DataError);
  CHECK_THROWS_AS(read_metrics_csv("step,community,metric,mean,std\n1,1,fear,x,0\n"), DataError);
  CHECK_THROWS_AS(read_metrics_csv("step,community,metric,mean,std\n1,1,fear\n"), DataError);
  const MetricsTable t = read_metrics_csv("step,community,metric,mean,std\n3,A,fear,0.5,0.1\n");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].step == 3);
  CHECK(t.rows[0].community == "A");
}
