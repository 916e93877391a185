#include "resil/population.hpp"

#include <algorithm>

namespace resil {

std::string_view config_key(StateVar v) {
  switch (v) {
    case StateVar::Fear: return "M_E";
    case StateVar::Risk: return "M_R";
    case StateVar::InfoSeeking: return "M_B";
    case StateVar::Cooperation: return "M_C";
    case StateVar::Openness: return "M_O";
    case StateVar::Experience: return "M_L";
    case StateVar::Flexibility: return "M_F";
    case StateVar::Physical: return "P";
    case StateVar::DerFraction: return "Q_DER";
  }
  return "?";
}

std::string_view column_name(StateVar v) {
  switch (v) {
    case StateVar::Fear: return "fear";
    case StateVar::Risk: return "risk";
    case StateVar::InfoSeeking: return "info_seeking";
    case StateVar::Cooperation: return "cooperation";
    case StateVar::Openness: return "openness";
    case StateVar::Experience: return "experience";
    case StateVar::Flexibility: return "flexibility";
    case StateVar::Physical: return "physical_health";
    case StateVar::DerFraction: return "q_der";
  }
  return "?";
}

int CommunityLayout::community_of(Eigen::Index agent) const {
  const auto it = std::upper_bound(offsets.begin(), offsets.end(), agent);
  return static_cast<int>(it - offsets.begin()) - 1;
}

CommunityLayout CommunityLayout::from_sizes(const std::vector<Eigen::Index>& sizes) {
  CommunityLayout layout;
  for (auto s : sizes) layout.offsets.push_back(layout.offsets.back() + s);
  return layout;
}

}  // namespace resil
