#include "resil/cli/output.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace resil::cli {

namespace {

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(std::string_view line, long line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw DataError("metrics csv line " + std::to_string(line_no) + ": unterminated quote");
  out.push_back(std::move(cur));
  return out;
}

template <typename T>
T parse_number(const std::string& field, long line_no, const char* column) {
  T v{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw DataError("metrics csv line " + std::to_string(line_no) + ": bad " + column + " '" +
                    field + "'");
  }
  return v;
}

std::vector<Metric> vocabulary(std::span<const Metric> metrics) {
  if (!metrics.empty()) return {metrics.begin(), metrics.end()};
  std::vector<Metric> all;
  for (int k = 0; k < kCsvMetricCount; ++k) all.push_back(static_cast<Metric>(k));
  return all;
}

}  // namespace

std::string format_real(Real x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_metrics_csv(std::ostream& out, std::span<const SubRun> runs,
                       std::span<const Metric> metrics) {
  const bool with_run = runs.size() > 1;
  const auto vocab = vocabulary(metrics);
  out << (with_run ? "run," : "") << "step,community,metric,mean,std\n";
  for (const SubRun& r : runs) {
    const std::string prefix = with_run ? quote(r.label) + "," : std::string();
    for (std::size_t t = 0; t < r.series.steps(); ++t) {
      for (std::size_t c = 0; c < r.scenario.communities.size(); ++c) {
        const std::string community = quote(r.scenario.communities[c].id);
        for (Metric m : vocab) {
          out << prefix << t << ',' << community << ',' << metric_name(m) << ','
              << format_real(r.series.mean_at(t, static_cast<int>(c), m)) << ','
              << format_real(r.series.std_at(t, static_cast<int>(c), m)) << '\n';
        }
      }
    }
  }
}

void write_agents_csv(std::ostream& out, std::span<const SubRun> runs) {
  const bool with_run = runs.size() > 1;
  out << (with_run ? "run," : "") << "step,agent,community,component";
  for (StateVar v : kAllStateVars) out << ',' << column_name(v);
  out << ",der_before_sharing,der_after_sharing\n";
  for (const SubRun& r : runs) {
    if (!r.dump || !r.dump->agents) continue;
    const AgentDump& d = *r.dump->agents;
    const std::string prefix = with_run ? quote(r.label) + "," : std::string();
    for (std::size_t t = 0; t < d.states.size(); ++t) {
      const auto& st = d.states[t];
      for (Eigen::Index i = 0; i < st.rows(); ++i) {
        out << prefix << t << ',' << i << ','
            << quote(r.scenario.communities[d.layout.community_of(i)].id) << ','
            << d.component[static_cast<std::size_t>(i)];
        for (int k = 0; k < kStateVarCount; ++k) out << ',' << format_real(st(i, k));
        if (t < d.der_before_sharing.size()) {
          out << ',' << format_real(d.der_before_sharing[t](i)) << ','
              << format_real(d.der_after_sharing[t](i));
        } else {
          out << ",,";
        }
        out << '\n';
      }
    }
  }
}

MetricsTable read_metrics_csv(std::string_view text) {
  MetricsTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  long line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line, line_no);
    if (!header) {
      const std::vector<std::string> plain = {"step", "community", "metric", "mean", "std"};
      std::vector<std::string> with_run = plain;
      with_run.insert(with_run.begin(), "run");
      if (f == plain) {
        table.has_run = false;
      } else if (f == with_run) {
        table.has_run = true;
      } else {
        throw DataError("metrics csv: unexpected header '" + line + "'");
      }
      header = true;
      continue;
    }
    const std::size_t want = table.has_run ? 6 : 5;
    if (f.size() != want) {
      throw DataError("metrics csv line " + std::to_string(line_no) + ": expected " +
                      std::to_string(want) + " fields");
    }
    const std::size_t o = table.has_run ? 1 : 0;
    MetricsRow row;
    if (table.has_run) row.run = f[0];
    row.step = parse_number<long>(f[o], line_no, "step");
    row.community = f[o + 1];
    row.metric = f[o + 2];
    row.mean = parse_number<Real>(f[o + 3], line_no, "mean");
    row.std = parse_number<Real>(f[o + 4], line_no, "std");
    table.rows.push_back(std::move(row));
  }
  if (!header) throw DataError("metrics csv: missing header");
  return table;
}

std::string read_file(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw IoError("file not found: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("cannot write " + path);
}

}  // namespace resil::cli
