#pragma once

#include "resil/cli/output.hpp"

#include <string>
#include <vector>

namespace resil::cli {

/// Standalone SVG line chart of the mean of `metric` against step, one line
/// per (run, community) in first-appearance order.
std::string render_svg(const MetricsTable& table, std::string_view metric);

/// Metric names present in the table, in first-appearance order.
std::vector<std::string> plotted_metrics(const MetricsTable& table);

/// Writes <dir>/<metric>.svg for every metric in the table and returns the
/// paths written.
std::vector<std::string> write_plots(const MetricsTable& table, const std::string& dir);

}  // namespace resil::cli
