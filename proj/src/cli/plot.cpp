#include "resil/cli/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>

namespace resil::cli {

namespace {

constexpr double kWidth = 860, kHeight = 480;
constexpr double kLeft = 60, kRight = 220, kTop = 40, kBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Series {
  std::string label;
  std::vector<std::pair<long, Real>> points;
};

}  // namespace

std::vector<std::string> plotted_metrics(const MetricsTable& table) {
  std::vector<std::string> out;
  for (const auto& r : table.rows) {
    if (std::find(out.begin(), out.end(), r.metric) == out.end()) out.push_back(r.metric);
  }
  return out;
}

std::string render_svg(const MetricsTable& table, std::string_view metric) {
  std::vector<Series> series;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  long max_step = 1;
  for (const auto& r : table.rows) {
    if (r.metric != metric) continue;
    const auto key = std::make_pair(r.run, r.community);
    auto it = index.find(key);
    if (it == index.end()) {
      std::string label = table.has_run ? r.run + " / " + r.community : "community " + r.community;
      it = index.emplace(key, series.size()).first;
      series.push_back({std::move(label), {}});
    }
    series[it->second].points.emplace_back(r.step, r.mean);
    max_step = std::max(max_step, r.step);
  }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double step) { return kLeft + pw * step / static_cast<double>(max_step); };
  auto py = [&](double v) { return kTop + ph * (1.0 - std::clamp(v, 0.0, 1.0)); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(metric) + "</text>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = k / 4.0;
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(v)) + "\" x2=\"" + num(kLeft + pw) +
           "\" y2=\"" + num(py(v)) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(v) + 4) +
           "\" text-anchor=\"end\">" + num(v) + "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double step = static_cast<double>(max_step) * k / 5.0;
    char label[32];
    std::snprintf(label, sizeof label, "%.0f", step);
    svg += "<text x=\"" + num(px(step)) + "\" y=\"" + num(kTop + ph + 18) +
           "\" text-anchor=\"middle\">" + label + "</text>\n";
  }
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" text-anchor=\"middle\">step</text>\n";
  svg += "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    const char* dash = (s / std::size(kPalette)) % 2 ? " stroke-dasharray=\"6 3\"" : "";
    std::string points;
    for (const auto& [step, v] : series[s].points) {
      if (!points.empty()) points += ' ';
      points += num(px(static_cast<double>(step))) + "," + num(py(v));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\"" +
           dash + " points=\"" + points + "\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(s) + 6;
    svg += "<line x1=\"" + num(kLeft + pw + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(kLeft + pw + 32) + "\" y2=\"" + num(ly) + "\" stroke=\"" + colour +
           "\" stroke-width=\"2\"" + dash + "/>\n";
    svg += "<text x=\"" + num(kLeft + pw + 38) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(series[s].label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::string> write_plots(const MetricsTable& table, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  std::vector<std::string> paths;
  for (const auto& metric : plotted_metrics(table)) {
    const std::string path = (std::filesystem::path(dir) / (metric + ".svg")).string();
    write_file(path, render_svg(table, metric));
    paths.push_back(path);
  }
  return paths;
}

}  // namespace resil::cli
