#pragma once

#include "resil/core.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace resil {

/// Symmetric nonnegative empathy weights between agents.
///
/// Weights are stored as dense blocks over "groups": sets of agents whose
/// communities are linked by nonzero empathy blocks. Agents in different
/// groups never interact, so the full n x n matrix is never materialized.
/// Empathy components (maximal sets connected by nonzero weights) are
/// derived from the stored weights and may split a group further.
template <typename Scalar>
class EmpathyNetwork {
 public:
  using Index = Eigen::Index;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  struct Group {
    std::vector<Index> members;  // ascending global agent indices
    Matrix weights;              // weights(a, b) between members[a] and members[b]
    Vector row_sums;
  };

  EmpathyNetwork() = default;
  explicit EmpathyNetwork(Index agents)
      : agents_(agents), group_of_(agents, -1), slot_(agents, -1) {
    rebuild_components();
  }

  Index agent_count() const { return agents_; }
  const std::vector<Group>& groups() const { return groups_; }

  /// Adds a block of weights over `members`. The diagonal is ignored and
  /// zeroed. Throws ConfigError on asymmetry, negative weights, or members
  /// that already belong to another group.
  void add_group(std::vector<Index> members, Matrix weights) {
    const auto m = static_cast<Index>(members.size());
    if (weights.rows() != m || weights.cols() != m) {
      throw ConfigError("empathy group: weight matrix does not match member count");
    }
    if (!std::is_sorted(members.begin(), members.end())) {
      throw ConfigError("empathy group: members must be ascending");
    }
    weights.diagonal().setZero();
    if ((weights.array() < Scalar(0)).any() || !weights.allFinite()) {
      throw ConfigError("empathy weights must be finite and >= 0");
    }
    if (weights != weights.transpose()) {
      throw ConfigError("empathy weights must be symmetric");
    }
    const int gid = static_cast<int>(groups_.size());
    for (Index a = 0; a < m; ++a) {
      const Index agent = members[a];
      if (agent < 0 || agent >= agents_) throw ConfigError("empathy group: agent out of range");
      if (group_of_[agent] != -1) throw ConfigError("empathy group: agent already grouped");
      group_of_[agent] = gid;
      slot_[agent] = a;
    }
    Vector sums = weights.rowwise().sum();
    groups_.push_back({std::move(members), std::move(weights), std::move(sums)});
    rebuild_components();
  }

  Scalar weight(Index i, Index j) const {
    if (i == j) return Scalar(0);
    const int g = group_of_[i];
    if (g < 0 || g != group_of_[j]) return Scalar(0);
    return groups_[g].weights(slot_[i], slot_[j]);
  }

  /// Empathy-weighted mean of `values` over each agent's neighbors, falling
  /// back to the agent's own value when it has no positive weight.
  template <typename Derived>
  ArrayX<Scalar> neighbor_mean(const Eigen::ArrayBase<Derived>& values) const {
    ArrayX<Scalar> out = values;
    Vector local;
    for (const Group& g : groups_) {
      const auto m = static_cast<Index>(g.members.size());
      local.resize(m);
      for (Index a = 0; a < m; ++a) local(a) = values(g.members[a]);
      const Vector weighted = g.weights * local;
      for (Index a = 0; a < m; ++a) {
        if (g.row_sums(a) > Scalar(0)) {
          out(g.members[a]) = weighted(a) / g.row_sums(a);
        }
      }
    }
    return out;
  }

  /// Maximal sets of agents connected by positive weights, each ascending,
  /// ordered by smallest member. Isolated agents form singletons.
  const std::vector<std::vector<Index>>& components() const { return components_; }

 private:
  void rebuild_components() {
    std::vector<Index> parent(agents_);
    std::iota(parent.begin(), parent.end(), Index(0));
    auto find = [&](Index x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Group& g : groups_) {
      const auto m = static_cast<Index>(g.members.size());
      for (Index b = 0; b < m; ++b) {
        for (Index a = b + 1; a < m; ++a) {
          if (g.weights(a, b) > Scalar(0)) {
            const Index ra = find(g.members[a]);
            const Index rb = find(g.members[b]);
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
          }
        }
      }
    }
    components_.clear();
    std::vector<Index> slot_of_root(agents_, -1);
    for (Index i = 0; i < agents_; ++i) {
      const Index r = find(i);
      if (slot_of_root[r] < 0) {
        slot_of_root[r] = static_cast<Index>(components_.size());
        components_.emplace_back();
      }
      components_[slot_of_root[r]].push_back(i);
    }
  }

  Index agents_ = 0;
  std::vector<Group> groups_;
  std::vector<int> group_of_;
  std::vector<Index> slot_;
  std::vector<std::vector<Index>> components_;
};

}  // namespace resil
