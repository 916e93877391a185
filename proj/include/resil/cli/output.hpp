#pragma once

#include "resil/engine.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace resil::cli {

struct SubRun {
  std::string label;
  Scenario scenario;
  EnsembleSeries series;
  std::optional<Trajectory> dump;  // replication 0 with agent states
};

/// Shortest round-trip decimal form.
std::string format_real(Real x);

/// Long-format CSV `step,community,metric,mean,std`, with a leading `run`
/// column when there is more than one sub-run. Rows are ordered by run,
/// step, community, then metric vocabulary order. `metrics` restricts the
/// vocabulary (empty means all).
void write_metrics_csv(std::ostream& out, std::span<const SubRun> runs,
                       std::span<const Metric> metrics = {});

/// One row per agent and recorded step of each dumped trajectory.
void write_agents_csv(std::ostream& out, std::span<const SubRun> runs);

struct MetricsRow {
  std::string run;
  long step = 0;
  std::string community;
  std::string metric;
  Real mean = 0.0;
  Real std = 0.0;
};

struct MetricsTable {
  bool has_run = false;
  std::vector<MetricsRow> rows;
};

/// Reads what write_metrics_csv writes; throws DataError on anything else.
MetricsTable read_metrics_csv(std::string_view text);

std::string read_file(const std::string& path);
/// Throws IoError when the file cannot be written.
void write_file(const std::string& path, std::string_view content);

}  // namespace resil::cli
