#pragma once

#include "resil/cli/output.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace resil::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kInternal = 3 };

struct RunRequest {
  std::string builtin;
  std::string scenario_file;
  std::optional<long> steps;
  std::optional<long> replications;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool emit_plots = false;
  bool dump_agents = false;
  unsigned threads = 0;
};

/// case1:<family|variant>, case2:example<1-3>, population:<n>:<empathy>,
/// emdat:<type>.
std::vector<NamedScenario> resolve_builtin(std::string_view name);

/// The request's scenarios with --steps, --replications and --seed applied.
std::vector<NamedScenario> load_scenarios(const RunRequest& request);

/// Runs each scenario's ensemble; replication 0 is re-run with agent dumps
/// when requested. Progress lines go to `progress` if non-null.
std::vector<SubRun> execute(const std::vector<NamedScenario>& scenarios,
                            const RunRequest& request, std::ostream* progress);

/// Writes metrics.csv (restricted to `metrics` if non-empty), agents.csv and
/// plots into request.out_dir.
void write_outputs(const std::vector<SubRun>& runs, const RunRequest& request,
                   std::span<const Metric> metrics, std::ostream* progress);

/// Default output directory: $RESILSIM_OUT, else ./out.
std::string default_out_dir();

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resil::cli
