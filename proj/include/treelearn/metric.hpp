#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "treelearn/tree_topology.hpp"

namespace treelearn {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Symmetric nonnegative dissimilarity with zero diagonal; +inf allowed
/// off-diagonal.
class DistanceEstimate {
 public:
  explicit DistanceEstimate(int n);  // all off-diagonal entries +inf
  DistanceEstimate(int n, std::vector<double> entries);

  int size() const { return n_; }
  double operator()(int u, int v) const { return d_[static_cast<size_t>(u) * n_ + v]; }
  void set(int u, int v, double value);
  DistanceEstimate submatrix(const std::vector<int>& vertices) const;

 private:
  int n_;
  std::vector<double> d_;
};

/// Star metric c(u,v) = ell_u + ell_v. When built from root distances,
/// ell_u = d_max - dist(rho, u) and ell_rho = d_max.
struct CentroidMetric {
  std::vector<double> ell;
  double d_max = 0.0;
  int rho = 0;
};

/// Single-linkage merge tree. Leaves are 0..n-1 at height 0; merge node
/// n + t joins two clusters at nondecreasing heights. The induced
/// dissimilarity value(u,v) -- the height of the lowest common merge -- is
/// an ultrametric.
class Dendrogram {
 public:
  struct Merge {
    int left, right;  // node ids (leaf < n, merge >= n)
    double height;
  };

  Dendrogram(int n_leaves, std::vector<Merge> merges);

  int leaf_count() const { return n_; }
  const std::vector<Merge>& merges() const { return merges_; }
  int parent(int node) const { return parent_[node]; }
  int node_count() const { return n_ + static_cast<int>(merges_.size()); }
  double height_of(int merge_node) const { return merges_[merge_node - n_].height; }

  double value(int u, int v) const;
  std::vector<double> value_matrix() const;  // row-major n*n

 private:
  int n_;
  std::vector<Merge> merges_;
  std::vector<int> parent_;
};

/// Edge-weighted tree over labeled vertices 0..labeled_count()-1 plus
/// Steiner vertices. Vertex 0 is the designated (labeled) root.
class SteinerTree {
 public:
  explicit SteinerTree(int n_labeled);

  int labeled_count() const { return n_labeled_; }
  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int steiner_count() const { return vertex_count() - n_labeled_; }
  bool is_labeled(int v) const { return v < n_labeled_; }

  int add_steiner();
  void add_edge(int a, int b, double length);

  const std::vector<std::pair<int, double>>& neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<std::pair<int, int>, double>> edge_list() const;

  std::vector<double> distances_from(int v) const;
  std::vector<int> hops_from(int v) const;

  void validate() const;  // connected, acyclic, nonnegative lengths

 private:
  int n_labeled_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

/// Tree topology over labeled vertices with per-edge lengths aligned to
/// topology.edges().
struct WeightedTree {
  TreeTopology topology;
  std::vector<double> lengths;

  std::vector<double> distances_from(int v) const;
};

}  // namespace treelearn
