#pragma once

#include <cstdint>
#include <vector>

#include "treelearn/correlation.hpp"
#include "treelearn/tree_topology.hpp"

namespace treelearn {

/// Tree-structured Ising model with no external field, parameterized by the
/// per-edge correlation theta in [-1, 1]. Marginals are unbiased by
/// construction.
class TreeIsingModel {
 public:
  TreeIsingModel(TreeTopology topology, std::vector<double> theta);

  const TreeTopology& topology() const { return topology_; }
  int vertex_count() const { return topology_.vertex_count(); }
  const std::vector<double>& theta() const { return theta_; }
  double theta_of(int edge_index) const { return theta_[edge_index]; }
  // Coupling J_e = atanh(theta_e); infinite for |theta_e| = 1.
  double coupling(int edge_index) const;

 private:
  TreeTopology topology_;
  std::vector<double> theta_;
};

/// All pairwise correlations: entry (u,v) is the product of theta along the
/// unique tree path. One traversal per root, O(n^2) total.
CorrelationMatrix pairwise_correlations(const TreeIsingModel& model);

/// Exact marginal over `subset` as a table of size 2^k. State index i
/// assigns spin +1 to subset[j] iff bit j of i is set. Computed by
/// eliminating vertices outside the subset, so n may be large as long as
/// |subset| <= 15.
std::vector<double> marginal_joint(const TreeIsingModel& model,
                                   const std::vector<int>& subset);

/// Exact locTV of order k: maximum over all size-k vertex subsets of the
/// total variation between the two models' marginals. Requires n <= 15.
double loctv_k_exact(const TreeIsingModel& p, const TreeIsingModel& q, int k);

/// i.i.d. samples: the root spin is uniform and each child equals its parent
/// with probability (1 + theta_e) / 2. Deterministic given seed.
SampleMatrix sample(const TreeIsingModel& model, int m, std::uint64_t seed);

/// Streaming equivalent of empirical_correlations(sample(model, m, seed));
/// avoids materializing the sample matrix for large m.
CorrelationMatrix sampled_correlations(const TreeIsingModel& model, long m,
                                       std::uint64_t seed);

}  // namespace treelearn
