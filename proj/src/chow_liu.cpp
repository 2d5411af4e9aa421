#include "treelearn/chow_liu.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treelearn {

TreeTopology max_spanning_tree(const CorrelationMatrix& weights) {
  int n = weights.size();
  std::vector<char> in_tree(n, 0);
  std::vector<double> best_w(n, 0.0);
  std::vector<int> best_from(n, -1);
  in_tree[0] = 1;
  for (int v = 1; v < n; ++v) {
    best_w[v] = weights(0, v);
    best_from[v] = 0;
  }
  auto edge_of = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (pick == -1 || best_w[v] > best_w[pick] ||
          (best_w[v] == best_w[pick] && edge_of(best_from[v], v) < edge_of(best_from[pick], pick)))
        pick = v;
    }
    edges.push_back(edge_of(best_from[pick], pick));
    in_tree[pick] = 1;
    for (int v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      double w = weights(pick, v);
      if (w > best_w[v] ||
          (w == best_w[v] && edge_of(pick, v) < edge_of(best_from[v], v))) {
        best_w[v] = w;
        best_from[v] = pick;
      }
    }
  }
  return TreeTopology(n, std::move(edges));
}

VertexPartition weak_edge_partition(const TreeTopology& tcl,
                                    const CorrelationMatrix& mu_tilde) {
  int n = tcl.vertex_count();
  if (mu_tilde.size() != n) throw std::invalid_argument("partition size mismatch");

  VertexPartition out;
  std::vector<int> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&rep](int x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  for (auto [u, v] : tcl.edges()) {
    if (mu_tilde(u, v) <= kWeakEdgeThreshold) {
      out.weak_edges.push_back({u, v, mu_tilde(u, v)});
    } else {
      rep[find(u)] = find(v);
    }
  }

  out.block_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (out.block_of[r] == -1) {
      out.block_of[r] = static_cast<int>(out.blocks.size());
      out.blocks.emplace_back();
    }
    out.block_of[v] = out.block_of[r];
    out.blocks[out.block_of[v]].push_back(v);
  }

  // any maximum spanning tree keeps cross-block estimates at or below the
  // weak threshold; a violation means the input tree was not maximal
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (out.block_of[u] != out.block_of[v] && mu_tilde(u, v) > kWeakEdgeThreshold)
        throw std::logic_error("cross-block estimate above the weak threshold");

  return out;
}

TreeIsingModel learn_ferro_model(const CorrelationMatrix& mu_tilde, double eps,
                                 const Subsolver& subsolver) {
  if (eps < 0.0) throw std::invalid_argument("learn_ferro_model needs eps >= 0");
  int n = mu_tilde.size();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (mu_tilde(u, v) < 0.0)
        throw std::invalid_argument("learn_ferro_model needs estimates in [0, 1]");

  TreeTopology tcl = max_spanning_tree(mu_tilde);
  VertexPartition partition = weak_edge_partition(tcl, mu_tilde);

  std::vector<std::pair<int, int>> edges;
  std::vector<double> theta;
  for (const auto& block : partition.blocks) {
    if (block.size() == 1) continue;
    TreeIsingModel sub = subsolver(mu_tilde.submatrix(block), eps);
    if (sub.vertex_count() != static_cast<int>(block.size()))
      throw std::logic_error("subsolver returned wrong vertex count");
    const auto& sub_edges = sub.topology().edges();
    for (size_t e = 0; e < sub_edges.size(); ++e) {
      edges.push_back({block[sub_edges[e].first], block[sub_edges[e].second]});
      theta.push_back(sub.theta_of(static_cast<int>(e)));
    }
  }
  for (const auto& w : partition.weak_edges) {
    edges.push_back({w.u, w.v});
    theta.push_back(w.mu);
  }
  return TreeIsingModel(TreeTopology(n, std::move(edges)), std::move(theta));
}

}  // namespace treelearn
