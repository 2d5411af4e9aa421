#pragma once

#include <stdexcept>
#include <string>

#include "treelearn/correlation.hpp"
#include "treelearn/metric.hpp"

namespace treelearn {

/// Raised by the additive reconstruction when some vertex is not reachable
/// from the root at finite distance.
class UnreachableVertexError : public std::runtime_error {
 public:
  UnreachableVertexError(int vertex, const std::string& what)
      : std::runtime_error(what), vertex(vertex) {}
  int vertex;
};

/// Distance estimate d(u,v) = -log(max(0, mu(u,v) - eps)); +inf where the
/// estimate does not exceed eps. Diagonal is zero.
DistanceEstimate evolutionary_estimate(const CorrelationMatrix& mu_tilde, double eps);

/// Exact single-source shortest paths over the complete graph weighted by
/// d_pre. Dense O(n^2); unreachable vertices get +inf.
std::vector<double> shortest_paths_from_root(const DistanceEstimate& d_pre, int rho);

/// Largest ultrametric lying entrywise below `a`, returned as its merge
/// tree. Minimum spanning tree (dense Prim) followed by single-linkage
/// merging; the induced value equals the minimax path weight of `a`.
Dendrogram subdominant_ultrametric(const DistanceEstimate& a);

/// Realizes d(u,v) = e(u,v) - ell_u - ell_v as a tree: each merge node at
/// height h becomes a Steiner vertex, Steiner-Steiner edges get half the
/// height gap, and leaf u hangs from its first merge at h/2 - ell_u. Leaf
/// edge lengths are clamped at zero when the inputs violate that bound;
/// clamp events are counted in *clamp_count when provided.
SteinerTree ultra_minus_centroid(const Dendrogram& e, const CentroidMetric& c,
                                 int rho, int* clamp_count = nullptr);

/// Additive-metric reconstruction from a one-sided distance estimate:
/// root-distance profile by Dijkstra, capped dissimilarity
/// a = min(2*d_max, d_pre + c + 44*eps) below the 3L truncation (2*d_max at
/// or beyond it), subdominant ultrametric, and the tree realizing e - c.
/// Requires eps >= 0, L >= 100*eps, and all vertices reachable from vertex 0.
SteinerTree additive_metric_reconstruction(const DistanceEstimate& d_pre,
                                           double L, double eps);

/// Removes all degree-1 and degree-2 Steiner vertices, splicing edges so
/// that distances between remaining vertices are unchanged.
SteinerTree splice_redundant_steiner(const SteinerTree& t);

/// Largest distance from a Steiner vertex to its nearest labeled vertex;
/// zero when there are no Steiner vertices.
double c_radius(const SteinerTree& t);

/// Contracts every Steiner vertex onto its nearest labeled vertex (ties by
/// hop count, then lowest index) after splicing, then reassigns lengths in
/// breadth-first order from the root so that root distances never shrink.
WeightedTree desteinerize(const SteinerTree& t);

/// additive_metric_reconstruction followed by desteinerize.
WeightedTree tree_metric_reconstruction(const DistanceEstimate& d_pre,
                                        double L, double eps);

}  // namespace treelearn
