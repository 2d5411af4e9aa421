#pragma once

#include <functional>
#include <vector>

#include "treelearn/correlation.hpp"
#include "treelearn/ising.hpp"
#include "treelearn/tree_topology.hpp"

namespace treelearn {

// Spanning-tree edges with estimated correlation at or below this value are
// treated as weak and define the block partition. Fixed, not configurable.
constexpr double kWeakEdgeThreshold = 0.1;

struct WeakEdge {
  int u, v;
  double mu;
};

/// Vertex blocks obtained by removing the weak edges from a maximum
/// spanning tree. Blocks are disjoint, cover 0..n-1, and contracting them
/// while keeping weak edges yields a tree on the blocks.
struct VertexPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<WeakEdge> weak_edges;
  std::vector<int> block_of;  // block index per vertex
};

/// Maximum-weight spanning tree over the complete graph weighted by
/// `weights`, dense Prim in O(n^2). Ties are broken toward the
/// lexicographically smaller (min endpoint, max endpoint) pair so results
/// are reproducible.
TreeTopology max_spanning_tree(const CorrelationMatrix& weights);

/// Splits the spanning tree at weak edges (mu <= kWeakEdgeThreshold) and
/// returns the connected components plus the removed edges. Also checks
/// that estimated correlations between distinct blocks never exceed the
/// threshold, which any maximum spanning tree guarantees.
VertexPartition weak_edge_partition(const TreeTopology& tcl,
                                    const CorrelationMatrix& mu_tilde);

using Subsolver = std::function<TreeIsingModel(const CorrelationMatrix&, double)>;

/// Learns a ferromagnetic model (entries of mu_tilde in [0, 1]) by running
/// the subsolver on each block of the weak-edge partition and stitching the
/// block trees together with the weak edges, whose parameters are set to
/// their estimated correlations.
TreeIsingModel learn_ferro_model(const CorrelationMatrix& mu_tilde, double eps,
                                 const Subsolver& subsolver);

}  // namespace treelearn
