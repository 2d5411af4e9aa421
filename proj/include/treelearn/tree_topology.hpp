#pragma once

#include <utility>
#include <vector>

namespace treelearn {

/// Undirected tree on vertices 0..n-1. Construction validates that the edge
/// list forms a spanning tree (n-1 edges, connected, no self loops or
/// duplicates). Edges are stored with endpoints normalized as (min, max).
class TreeTopology {
 public:
  TreeTopology(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // adjacency()[v] lists (neighbor, edge index into edges()).
  const std::vector<std::vector<std::pair<int, int>>>& adjacency() const;

  // Unique path from u to v, inclusive of both endpoints.
  std::vector<int> path_vertices(int u, int v) const;
  // Edge indices along the path from u to v.
  std::vector<int> path_edges(int u, int v) const;

  bool has_edge(int u, int v) const;
  // Edge sets compared as sorted normalized pairs.
  bool same_edges(const TreeTopology& other) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  mutable std::vector<std::vector<std::pair<int, int>>> adj_;
};

}  // namespace treelearn
