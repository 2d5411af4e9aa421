#include "treelearn/tree_topology.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace treelearn {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

TreeTopology::TreeTopology(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != n_ - 1)
    throw std::invalid_argument("tree on n vertices needs exactly n-1 edges");
  UnionFind uf(n_);
  for (auto& [u, v] : edges_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self loop");
    if (u > v) std::swap(u, v);
    if (!uf.unite(u, v)) throw std::invalid_argument("edges contain a cycle or duplicate");
  }
}

const std::vector<std::vector<std::pair<int, int>>>& TreeTopology::adjacency() const {
  if (adj_.empty()) {
    adj_.assign(n_, {});
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      auto [u, v] = edges_[e];
      adj_[u].push_back({v, e});
      adj_[v].push_back({u, e});
    }
  }
  return adj_;
}

std::vector<int> TreeTopology::path_vertices(int u, int v) const {
  const auto& adj = adjacency();
  std::vector<int> parent(n_, -1);
  std::queue<int> q;
  q.push(u);
  parent[u] = u;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) break;
    for (auto [y, e] : adj[x]) {
      (void)e;
      if (parent[y] == -1) {
        parent[y] = x;
        q.push(y);
      }
    }
  }
  std::vector<int> path;
  for (int x = v; x != u; x = parent[x]) path.push_back(x);
  path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> TreeTopology::path_edges(int u, int v) const {
  const auto& adj = adjacency();
  auto path = path_vertices(u, v);
  std::vector<int> out;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    for (auto [y, e] : adj[path[i]]) {
      if (y == path[i + 1]) {
        out.push_back(e);
        break;
      }
    }
  }
  return out;
}

bool TreeTopology::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (const auto& e : edges_)
    if (e.first == u && e.second == v) return true;
  return false;
}

bool TreeTopology::same_edges(const TreeTopology& other) const {
  if (n_ != other.n_) return false;
  auto a = edges_;
  auto b = other.edges_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace treelearn
