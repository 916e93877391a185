#include "resil/metrics.hpp"

#include <algorithm>
#include <string>

namespace resil {

void WellBeingWeights::validate() const {
  for (Real v : {fear, flexibility, cooperation, experience, mental, physical}) {
    if (!std::isfinite(v) || v < 0.0) throw ConfigError("weights must be finite and >= 0");
  }
  if (std::abs(fear + flexibility + cooperation + experience - 1.0) > 1e-12) {
    throw ConfigError("weights: mental component weights must sum to 1");
  }
  if (std::abs(mental + physical - 1.0) > 1e-12) {
    throw ConfigError("weights: resilience mix must sum to 1");
  }
}

namespace {
constexpr std::array<std::string_view, kMetricCount> kNames = {
    "fear",     "risk",      "info_seeking", "cooperation", "flexibility", "experience",
    "physical_health", "q_total", "mental_wb", "physical_wb", "resilience", "openness"};
}

std::string_view metric_name(Metric m) { return kNames[static_cast<int>(m)]; }

Metric metric_from_name(std::string_view name) {
  for (int k = 0; k < kCsvMetricCount; ++k) {
    if (kNames[k] == name) return static_cast<Metric>(k);
  }
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

UnitValue mental_wellbeing(const AgentState& s, const WellBeingWeights& w) {
  return clamp_unit(w.fear * (1.0 - s.fear) + w.flexibility * s.flexibility +
                    w.cooperation * s.cooperation + w.experience * s.experience);
}

UnitValue physical_wellbeing(const AgentState& s) { return s.physical_health; }

UnitValue community_resilience(std::span<const AgentState> community, const WellBeingWeights& w) {
  if (community.empty()) throw ConfigError("community_resilience: empty community");
  Real sum = 0.0;
  for (const auto& s : community) {
    sum += w.mental * mental_wellbeing(s, w) + w.physical * physical_wellbeing(s);
  }
  return clamp_unit(sum / static_cast<Real>(community.size()));
}

StepMetrics compute_step_metrics(const PopulationState<Real>& population,
                                 const CommunityLayout& layout, const ArrayXr& q_total,
                                 const WellBeingWeights& w) {
  const auto n = population.size();
  if (layout.agent_count() != n || q_total.size() != n) {
    throw ConfigError("compute_step_metrics: dimension mismatch");
  }
  Eigen::Array<Real, Eigen::Dynamic, kMetricCount> per_agent(n, kMetricCount);
  auto put = [&](Metric m, const auto& column) { per_agent.col(static_cast<int>(m)) = column; };
  put(Metric::Fear, population.col(StateVar::Fear));
  put(Metric::Risk, population.col(StateVar::Risk));
  put(Metric::InfoSeeking, population.col(StateVar::InfoSeeking));
  put(Metric::Cooperation, population.col(StateVar::Cooperation));
  put(Metric::Flexibility, population.col(StateVar::Flexibility));
  put(Metric::Experience, population.col(StateVar::Experience));
  put(Metric::Physical, population.col(StateVar::Physical));
  put(Metric::QTotal, q_total);
  const ArrayXr mental = mental_wellbeing(population, w);
  put(Metric::MentalWb, mental);
  put(Metric::PhysicalWb, population.col(StateVar::Physical));
  put(Metric::Resilience,
      clamp01(ArrayXr(w.mental * mental + w.physical * population.col(StateVar::Physical))));
  put(Metric::Openness, population.col(StateVar::Openness));

  const int communities = layout.community_count();
  StepMetrics out;
  out.mean.resize(communities, kMetricCount);
  out.std.resize(communities, kMetricCount);
  for (int c = 0; c < communities; ++c) {
    const auto block = per_agent.middleRows(layout.begin(c), layout.size(c));
    if (block.rows() == 0) throw ConfigError("compute_step_metrics: empty community");
    const auto mean = block.colwise().mean().eval();
    out.mean.row(c) = clamp01(mean);
    out.std.row(c) =
        ((block.rowwise() - mean).square().colwise().sum() / static_cast<Real>(block.rows()))
            .sqrt();
  }
  return out;
}

EnsembleSeries aggregate_series(std::span<const MetricSeries* const> series) {
  if (series.empty()) throw ConfigError("aggregate_ensemble: no trajectories");
  const std::size_t steps = series.front()->size();
  const auto rows = steps ? series.front()->front().mean.rows() : 0;
  for (const MetricSeries* s : series) {
    if (s->size() != steps) throw ConfigError("aggregate_ensemble: trajectory lengths differ");
    for (const auto& m : *s) {
      if (m.mean.rows() != rows) throw ConfigError("aggregate_ensemble: community counts differ");
    }
  }
  const auto n = static_cast<Real>(series.size());
  EnsembleSeries out;
  out.replications = static_cast<int>(series.size());
  out.mean.assign(steps, StepMetrics::Table::Zero(rows, kMetricCount));
  out.std.assign(steps, StepMetrics::Table::Zero(rows, kMetricCount));
  std::vector<Real> cell(series.size());
  for (std::size_t t = 0; t < steps; ++t) {
    for (Eigen::Index c = 0; c < rows; ++c) {
      for (int k = 0; k < kMetricCount; ++k) {
        for (std::size_t r = 0; r < series.size(); ++r) cell[r] = (*series[r])[t].mean(c, k);
        std::sort(cell.begin(), cell.end());
        if (cell.front() == cell.back()) {
          out.mean[t](c, k) = cell.front();
          continue;
        }
        Real sum = 0.0;
        for (Real v : cell) sum += v;
        const Real mean = sum / n;
        Real ss = 0.0;
        for (Real v : cell) ss += (v - mean) * (v - mean);
        out.mean[t](c, k) = mean;
        out.std[t](c, k) = std::sqrt(ss / n);
      }
    }
  }
  return out;
}

}  // namespace resil
