#pragma once

#include "resil/core.hpp"
#include "resil/population.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace resil {

/// Mental well-being is the weighted mean of (1 - E, F, C, L); resilience
/// blends mental and physical well-being.
struct WellBeingWeights {
  Real fear = 0.25;
  Real flexibility = 0.25;
  Real cooperation = 0.25;
  Real experience = 0.25;
  Real mental = 0.5;
  Real physical = 0.5;

  void validate() const;
  friend bool operator==(const WellBeingWeights&, const WellBeingWeights&) = default;
};

enum class Metric : int {
  Fear = 0,
  Risk,
  InfoSeeking,
  Cooperation,
  Flexibility,
  Experience,
  Physical,
  QTotal,
  MentalWb,
  PhysicalWb,
  Resilience,
  Openness,
};
inline constexpr int kMetricCount = 12;
/// Metrics written to CSV, in column-vocabulary order (Openness excluded).
inline constexpr int kCsvMetricCount = 11;

std::string_view metric_name(Metric m);
/// Throws ConfigError for names outside the CSV vocabulary.
Metric metric_from_name(std::string_view name);

UnitValue mental_wellbeing(const AgentState& s, const WellBeingWeights& w);
UnitValue physical_wellbeing(const AgentState& s);
/// Mean over agents of w.mental * mental + w.physical * physical.
UnitValue community_resilience(std::span<const AgentState> community, const WellBeingWeights& w);

template <typename Scalar>
ArrayX<Scalar> mental_wellbeing(const PopulationState<Scalar>& s, const WellBeingWeights& w) {
  return clamp01(ArrayX<Scalar>(Scalar(w.fear) * (Scalar(1) - s.col(StateVar::Fear)) +
                                Scalar(w.flexibility) * s.col(StateVar::Flexibility) +
                                Scalar(w.cooperation) * s.col(StateVar::Cooperation) +
                                Scalar(w.experience) * s.col(StateVar::Experience)));
}

/// Per-community mean and population std (divide by n) of every metric.
/// Rows are communities, columns follow Metric.
struct StepMetrics {
  using Table = Eigen::Array<Real, Eigen::Dynamic, kMetricCount>;
  Table mean;
  Table std;

  Real mean_of(int community, Metric m) const { return mean(community, static_cast<int>(m)); }
  friend bool operator==(const StepMetrics& a, const StepMetrics& b) {
    return (a.mean == b.mean).all() && (a.std == b.std).all();
  }
};

StepMetrics compute_step_metrics(const PopulationState<Real>& population,
                                 const CommunityLayout& layout, const ArrayXr& q_total,
                                 const WellBeingWeights& w);

using MetricSeries = std::vector<StepMetrics>;

/// Pointwise mean and population std across replications. Values in each
/// cell are sorted before summation, so the result does not depend on the
/// order of the replications.
struct EnsembleSeries {
  std::vector<StepMetrics::Table> mean;
  std::vector<StepMetrics::Table> std;
  int replications = 0;

  std::size_t steps() const { return mean.size(); }
  Real mean_at(std::size_t step, int community, Metric m) const {
    return mean[step](community, static_cast<int>(m));
  }
  Real std_at(std::size_t step, int community, Metric m) const {
    return std[step](community, static_cast<int>(m));
  }
};

/// Aggregates the community means of each replication. Throws ConfigError
/// on an empty input or mismatched shapes.
EnsembleSeries aggregate_series(std::span<const MetricSeries* const> series);

}  // namespace resil
