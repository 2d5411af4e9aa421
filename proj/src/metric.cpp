#include "treelearn/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treelearn {

DistanceEstimate::DistanceEstimate(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("distance estimate needs n >= 1");
  d_.assign(static_cast<size_t>(n) * n, kInf);
  for (int u = 0; u < n; ++u) d_[static_cast<size_t>(u) * n + u] = 0.0;
}

DistanceEstimate::DistanceEstimate(int n, std::vector<double> entries)
    : n_(n), d_(std::move(entries)) {
  if (n < 1) throw std::invalid_argument("distance estimate needs n >= 1");
  if (d_.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("distance estimate size mismatch");
  for (int u = 0; u < n; ++u) {
    if (d_[static_cast<size_t>(u) * n + u] != 0.0)
      throw std::invalid_argument("distance estimate diagonal must be zero");
    for (int v = u + 1; v < n; ++v) {
      double x = d_[static_cast<size_t>(u) * n + v];
      if (x != d_[static_cast<size_t>(v) * n + u])
        throw std::invalid_argument("distance estimate not symmetric");
      if (std::isnan(x) || x < 0.0)
        throw std::invalid_argument("distance estimate entries must be nonnegative");
    }
  }
}

void DistanceEstimate::set(int u, int v, double value) {
  if (u == v) return;
  if (std::isnan(value) || value < 0.0)
    throw std::invalid_argument("distance estimate entries must be nonnegative");
  d_[static_cast<size_t>(u) * n_ + v] = value;
  d_[static_cast<size_t>(v) * n_ + u] = value;
}

DistanceEstimate DistanceEstimate::submatrix(const std::vector<int>& vertices) const {
  int k = static_cast<int>(vertices.size());
  DistanceEstimate out(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) out.set(i, j, (*this)(vertices[i], vertices[j]));
  return out;
}

Dendrogram::Dendrogram(int n_leaves, std::vector<Merge> merges)
    : n_(n_leaves), merges_(std::move(merges)) {
  if (n_ < 1) throw std::invalid_argument("dendrogram needs at least one leaf");
  if (merges_.size() != static_cast<size_t>(n_ - 1))
    throw std::invalid_argument("dendrogram needs exactly n-1 merges");
  parent_.assign(n_ + merges_.size(), -1);
  double prev = 0.0;
  for (size_t t = 0; t < merges_.size(); ++t) {
    const Merge& mg = merges_[t];
    int id = n_ + static_cast<int>(t);
    if (mg.left < 0 || mg.left >= id || mg.right < 0 || mg.right >= id || mg.left == mg.right)
      throw std::invalid_argument("dendrogram merge children invalid");
    if (parent_[mg.left] != -1 || parent_[mg.right] != -1)
      throw std::invalid_argument("dendrogram node merged twice");
    if (std::isnan(mg.height) || mg.height < 0.0 || mg.height < prev)
      throw std::invalid_argument("dendrogram heights must be nondecreasing and >= 0");
    parent_[mg.left] = id;
    parent_[mg.right] = id;
    prev = mg.height;
  }
}

double Dendrogram::value(int u, int v) const {
  if (u == v) return 0.0;
  // walk both to the root, marking; heights are nondecreasing so the first
  // common node is the lowest common merge
  std::vector<int> au, av;
  for (int x = u; x != -1; x = parent_[x]) au.push_back(x);
  for (int x = v; x != -1; x = parent_[x]) av.push_back(x);
  size_t i = au.size(), j = av.size();
  int lca = -1;
  while (i > 0 && j > 0 && au[i - 1] == av[j - 1]) {
    lca = au[i - 1];
    --i;
    --j;
  }
  return height_of(lca);
}

std::vector<double> Dendrogram::value_matrix() const {
  std::vector<double> out(static_cast<size_t>(n_) * n_, 0.0);
  // leaves under each node, built bottom-up; cross products get the merge height
  std::vector<std::vector<int>> leaves(node_count());
  for (int u = 0; u < n_; ++u) leaves[u] = {u};
  for (size_t t = 0; t < merges_.size(); ++t) {
    const Merge& mg = merges_[t];
    int id = n_ + static_cast<int>(t);
    for (int a : leaves[mg.left])
      for (int b : leaves[mg.right]) {
        out[static_cast<size_t>(a) * n_ + b] = mg.height;
        out[static_cast<size_t>(b) * n_ + a] = mg.height;
      }
    leaves[id] = std::move(leaves[mg.left]);
    leaves[id].insert(leaves[id].end(), leaves[mg.right].begin(), leaves[mg.right].end());
    leaves[mg.left].clear();
    leaves[mg.right].clear();
  }
  return out;
}

SteinerTree::SteinerTree(int n_labeled) : n_labeled_(n_labeled) {
  if (n_labeled < 1) throw std::invalid_argument("steiner tree needs a labeled vertex");
  adj_.resize(n_labeled);
}

int SteinerTree::add_steiner() {
  adj_.emplace_back();
  return static_cast<int>(adj_.size()) - 1;
}

void SteinerTree::add_edge(int a, int b, double length) {
  if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count() || a == b)
    throw std::invalid_argument("steiner edge endpoints invalid");
  if (std::isnan(length) || length < 0.0)
    throw std::invalid_argument("steiner edge length must be >= 0");
  adj_[a].push_back({b, length});
  adj_[b].push_back({a, length});
}

std::vector<std::pair<std::pair<int, int>, double>> SteinerTree::edge_list() const {
  std::vector<std::pair<std::pair<int, int>, double>> out;
  for (int v = 0; v < vertex_count(); ++v)
    for (auto [w, len] : adj_[v])
      if (v < w) out.push_back({{v, w}, len});
  return out;
}

std::vector<double> SteinerTree::distances_from(int v) const {
  std::vector<double> dist(vertex_count(), kInf);
  std::vector<int> stack = {v};
  dist[v] = 0.0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y, len] : adj_[x])
      if (dist[y] == kInf) {
        dist[y] = dist[x] + len;
        stack.push_back(y);
      }
  }
  return dist;
}

std::vector<int> SteinerTree::hops_from(int v) const {
  std::vector<int> hops(vertex_count(), -1);
  std::vector<int> stack = {v};
  hops[v] = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y, len] : adj_[x]) {
      (void)len;
      if (hops[y] == -1) {
        hops[y] = hops[x] + 1;
        stack.push_back(y);
      }
    }
  }
  return hops;
}

void SteinerTree::validate() const {
  int edges = 0;
  for (int v = 0; v < vertex_count(); ++v) edges += static_cast<int>(adj_[v].size());
  edges /= 2;
  if (edges != vertex_count() - 1)
    throw std::invalid_argument("steiner tree must have exactly V-1 edges");
  auto hops = hops_from(0);
  for (int h : hops)
    if (h < 0) throw std::invalid_argument("steiner tree must be connected");
}

std::vector<double> WeightedTree::distances_from(int v) const {
  const auto& adj = topology.adjacency();
  std::vector<double> dist(topology.vertex_count(), kInf);
  std::vector<int> stack = {v};
  dist[v] = 0.0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [y, e] : adj[x])
      if (dist[y] == kInf) {
        dist[y] = dist[x] + lengths[e];
        stack.push_back(y);
      }
  }
  return dist;
}

}  // namespace treelearn
