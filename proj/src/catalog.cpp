#include "resil/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace resil {

namespace {

// Average EM-DAT figures for 2000-2017. The terrorist-attack row is not
// EM-DAT data; it is kept as a worst-case reference.
constexpr std::string_view kBundledCatalog =
    "disaster_type,injury_factor,fear,AE,AES\n"
    "Drought,0.51473,0.83873,1,0.8\n"
    "Earthquake,1.00000,0.53912,0,0.4\n"
    "Extreme temperature,0.61277,0.53672,0,0.5\n"
    "Flood,0.55873,1.00000,0,0.4\n"
    "Landslide,0.51005,0.50152,1,1\n"
    "Mass movement (dry),0.50021,0.50000,1,1\n"
    "Storm,0.63776,0.69656,0,0.6\n"
    "Volcanic activity,0.50033,0.50097,1,1\n"
    "Wildfire,0.50076,0.50011,1,1\n"
    "Severe terrorist attack,1,1,0,0\n";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

UnitValue parse_unit(std::string_view field, int line, const char* column) {
  Real v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  const std::string where = "catalog line " + std::to_string(line) + ", " + column;
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw DataError(where + ": expected a number, got '" + std::string(field) + "'");
  }
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw DataError(where + ": value " + std::string(field) + " outside [0, 1]");
  }
  return clamp_unit(v);
}

}  // namespace

DisasterCatalog::DisasterCatalog(std::vector<DisasterProfile> profiles)
    : profiles_(std::move(profiles)) {}

const DisasterProfile* DisasterCatalog::find(std::string_view type) const {
  const auto key = lower(type);
  for (const auto& p : profiles_) {
    if (lower(p.disaster_type) == key) return &p;
  }
  return nullptr;
}

std::vector<std::string> DisasterCatalog::names() const {
  std::vector<std::string> out;
  for (const auto& p : profiles_) out.push_back(p.disaster_type);
  return out;
}

DisasterCatalog load_disaster_catalog(std::string_view text) {
  std::vector<DisasterProfile> profiles;
  std::set<std::string> seen;
  bool header_seen = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      const std::vector<std::string_view> expected = {"disaster_type", "injury_factor", "fear",
                                                      "AE", "AES"};
      if (fields != expected) {
        throw DataError("catalog header must be 'disaster_type,injury_factor,fear,AE,AES'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 5) {
      throw DataError("catalog line " + std::to_string(line_no) + ": expected 5 fields, got " +
                      std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      throw DataError("catalog line " + std::to_string(line_no) + ": empty disaster type");
    }
    DisasterProfile p{std::string(fields[0]), parse_unit(fields[1], line_no, "injury_factor"),
                      parse_unit(fields[2], line_no, "fear"), parse_unit(fields[3], line_no, "AE"),
                      parse_unit(fields[4], line_no, "AES")};
    if (!seen.insert(lower(p.disaster_type)).second) {
      throw DataError("catalog line " + std::to_string(line_no) + ": duplicate disaster type '" +
                      p.disaster_type + "'");
    }
    profiles.push_back(std::move(p));
  }
  if (!header_seen) throw DataError("catalog is missing its header");
  return DisasterCatalog(std::move(profiles));
}

std::string_view bundled_disaster_catalog_text() { return kBundledCatalog; }

const DisasterCatalog& bundled_disaster_catalog() {
  static const DisasterCatalog catalog = load_disaster_catalog(kBundledCatalog);
  return catalog;
}

}  // namespace resil
