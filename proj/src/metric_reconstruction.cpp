#include "treelearn/metric_reconstruction.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace treelearn {

DistanceEstimate evolutionary_estimate(const CorrelationMatrix& mu_tilde, double eps) {
  if (eps < 0.0) throw std::invalid_argument("evolutionary_estimate needs eps >= 0");
  int n = mu_tilde.size();
  DistanceEstimate out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double shifted = mu_tilde(u, v) - eps;
      out.set(u, v, shifted > 0.0 ? -std::log(shifted) : kInf);
    }
  return out;
}

std::vector<double> shortest_paths_from_root(const DistanceEstimate& d_pre, int rho) {
  int n = d_pre.size();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  dist[rho] = 0.0;
  for (int iter = 0; iter < n; ++iter) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && (best == -1 || dist[v] < dist[best])) best = v;
    if (best == -1 || dist[best] == kInf) break;
    done[best] = 1;
    for (int v = 0; v < n; ++v)
      if (!done[v]) dist[v] = std::min(dist[v], dist[best] + d_pre(best, v));
  }
  return dist;
}

namespace {

struct MstEdge {
  double w;
  int u, v;  // u < v
  bool operator<(const MstEdge& o) const {
    return std::tie(w, u, v) < std::tie(o.w, o.u, o.v);
  }
};

// Dense Prim minimum spanning tree with lexicographic tie-breaks.
std::vector<MstEdge> min_spanning_tree(const DistanceEstimate& a) {
  int n = a.size();
  if (n < 2) return {};
  std::vector<char> in_tree(n, 0);
  std::vector<double> best_w(n, kInf);
  std::vector<int> best_from(n, -1);
  in_tree[0] = 1;
  for (int v = 1; v < n; ++v) {
    best_w[v] = a(0, v);
    best_from[v] = 0;
  }
  std::vector<MstEdge> edges;
  edges.reserve(n - 1);
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (pick == -1) {
        pick = v;
        continue;
      }
      MstEdge cand{best_w[v], std::min(best_from[v], v), std::max(best_from[v], v)};
      MstEdge cur{best_w[pick], std::min(best_from[pick], pick), std::max(best_from[pick], pick)};
      if (cand < cur) pick = v;
    }
    edges.push_back({best_w[pick], std::min(best_from[pick], pick), std::max(best_from[pick], pick)});
    in_tree[pick] = 1;
    for (int v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      double w = a(pick, v);
      if (w < best_w[v] ||
          (w == best_w[v] &&
           std::make_pair(std::min(pick, v), std::max(pick, v)) <
               std::make_pair(std::min(best_from[v], v), std::max(best_from[v], v)))) {
        best_w[v] = w;
        best_from[v] = pick;
      }
    }
  }
  return edges;
}

}  // namespace

Dendrogram subdominant_ultrametric(const DistanceEstimate& a) {
  int n = a.size();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (a(u, v) == kInf)
        throw std::invalid_argument("subdominant_ultrametric needs finite entries");
  if (n == 1) return Dendrogram(1, {});

  auto edges = min_spanning_tree(a);
  std::sort(edges.begin(), edges.end());

  // single linkage: merge clusters in edge order
  std::vector<int> rep(2 * n - 1);  // union-find over dendrogram nodes
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&rep](int x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  std::vector<Dendrogram::Merge> merges;
  merges.reserve(n - 1);
  for (const auto& e : edges) {
    int a_rep = find(e.u), b_rep = find(e.v);
    int id = n + static_cast<int>(merges.size());
    merges.push_back({a_rep, b_rep, e.w});
    rep[a_rep] = id;
    rep[b_rep] = id;
  }
  return Dendrogram(n, std::move(merges));
}

SteinerTree ultra_minus_centroid(const Dendrogram& e, const CentroidMetric& c,
                                 int rho, int* clamp_count) {
  (void)rho;
  int n = e.leaf_count();
  if (static_cast<int>(c.ell.size()) != n)
    throw std::invalid_argument("centroid metric size mismatch");
  SteinerTree tree(n);
  if (clamp_count) *clamp_count = 0;
  if (n == 1) return tree;
  for (const auto& mg : e.merges()) {
    int node = tree.add_steiner();
    for (int child : {mg.left, mg.right}) {
      if (child < n) {
        double len = 0.5 * mg.height - c.ell[child];
        if (len < 0.0) {
          // rounding-level deficits are not hypothesis violations
          if (clamp_count && len < -1e-12) ++*clamp_count;
          len = 0.0;
        }
        tree.add_edge(node, child, len);
      } else {
        tree.add_edge(node, child, 0.5 * (mg.height - e.height_of(child)));
      }
    }
  }
  return tree;
}

SteinerTree additive_metric_reconstruction(const DistanceEstimate& d_pre,
                                           double L, double eps) {
  if (eps < 0.0) throw std::invalid_argument("needs eps >= 0");
  if (!(L > 0.0) || L < 100.0 * eps)
    throw std::invalid_argument("needs L > 0 and L >= 100*eps");
  int n = d_pre.size();
  if (n == 1) return SteinerTree(1);

  const int rho = 0;
  auto dist = shortest_paths_from_root(d_pre, rho);
  for (int v = 0; v < n; ++v)
    if (dist[v] == kInf)
      throw UnreachableVertexError(v, "vertex " + std::to_string(v) +
                                          " unreachable from the root");

  double d_max = *std::max_element(dist.begin(), dist.end());
  std::vector<double> ell(n);
  for (int v = 0; v < n; ++v) ell[v] = d_max - dist[v];

  DistanceEstimate a(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (u == rho || d_pre(u, v) >= 3.0 * L) {
        a.set(u, v, 2.0 * d_max);
      } else {
        a.set(u, v, std::min(2.0 * d_max, d_pre(u, v) + ell[u] + ell[v] + 44.0 * eps));
      }
    }

  Dendrogram e = subdominant_ultrametric(a);
  // the root row forces every merge on rho's path to sit at exactly 2*d_max
  if (e.height_of(e.parent(rho)) != 2.0 * d_max ||
      e.merges().back().height != 2.0 * d_max)
    throw std::logic_error("capped dissimilarity lost the root level");

  CentroidMetric c{std::move(ell), d_max, rho};
  return ultra_minus_centroid(e, c, rho);
}

namespace {

struct NearestLabeled {
  // lexicographic (distance, hops, vertex); identifies f(v) per vertex
  std::vector<double> dist;
  std::vector<int> hops;
  std::vector<int> who;
};

using Cand = std::tuple<double, int, int>;

constexpr Cand kNoCand{kInf, INT_MAX, INT_MAX};

NearestLabeled nearest_labeled(const SteinerTree& t) {
  int nv = t.vertex_count();
  std::vector<int> order, parent(nv, -1);
  std::vector<double> parent_len(nv, 0.0);
  order.reserve(nv);
  order.push_back(0);
  parent[0] = 0;
  for (size_t h = 0; h < order.size(); ++h)
    for (auto [w, len] : t.neighbors(order[h]))
      if (parent[w] == -1) {
        parent[w] = order[h];
        parent_len[w] = len;
        order.push_back(w);
      }

  auto own = [&t](int v) -> Cand {
    return t.is_labeled(v) ? Cand{0.0, 0, v} : kNoCand;
  };
  auto translate = [](const Cand& c, double len) -> Cand {
    if (std::get<0>(c) == kInf) return kNoCand;
    return {std::get<0>(c) + len, std::get<1>(c) + 1, std::get<2>(c)};
  };

  std::vector<Cand> down(nv, kNoCand), up(nv, kNoCand);
  for (int i = nv - 1; i >= 0; --i) {
    int v = order[i];
    down[v] = std::min(down[v], own(v));
    if (v != 0) {
      int p = parent[v];
      down[p] = std::min(down[p], translate(down[v], parent_len[v]));
    }
  }
  for (size_t i = 0; i < order.size(); ++i) {
    int p = order[i];
    // top-2 child contributions so each child can exclude itself
    Cand best1 = kNoCand, best2 = kNoCand;
    int best1_child = -1;
    for (auto [w, len] : t.neighbors(p)) {
      if (parent[w] != p) continue;  // not a child
      Cand c = translate(down[w], len);
      if (c < best1) {
        best2 = best1;
        best1 = c;
        best1_child = w;
      } else if (c < best2) {
        best2 = c;
      }
    }
    for (auto [w, len] : t.neighbors(p)) {
      if (parent[w] != p) continue;
      Cand through_others = (w == best1_child) ? best2 : best1;
      Cand via_p = std::min(std::min(up[p], own(p)), through_others);
      up[w] = translate(via_p, len);
    }
  }

  NearestLabeled out;
  out.dist.resize(nv);
  out.hops.resize(nv);
  out.who.resize(nv);
  for (int v = 0; v < nv; ++v) {
    Cand b = std::min(down[v], up[v]);
    out.dist[v] = std::get<0>(b);
    out.hops[v] = std::get<1>(b);
    out.who[v] = std::get<2>(b);
  }
  return out;
}

}  // namespace

SteinerTree splice_redundant_steiner(const SteinerTree& t) {
  int nv = t.vertex_count();
  int nl = t.labeled_count();
  std::vector<std::map<int, double>> g(nv);
  for (int v = 0; v < nv; ++v)
    for (auto [w, len] : t.neighbors(v)) g[v][w] = len;

  std::vector<char> alive(nv, 1);
  std::vector<int> agenda;
  for (int v = nl; v < nv; ++v)
    if (g[v].size() <= 2) agenda.push_back(v);

  while (!agenda.empty()) {
    int v = agenda.back();
    agenda.pop_back();
    if (!alive[v] || v < nl || g[v].size() > 2) continue;
    alive[v] = 0;
    if (g[v].empty()) continue;
    if (g[v].size() == 1) {
      int w = g[v].begin()->first;
      g[w].erase(v);
      g[v].clear();
      if (w >= nl && g[w].size() <= 2) agenda.push_back(w);
    } else {
      auto it = g[v].begin();
      auto [x, len_x] = *it;
      auto [y, len_y] = *std::next(it);
      g[x].erase(v);
      g[y].erase(v);
      g[v].clear();
      g[x][y] = len_x + len_y;
      g[y][x] = len_x + len_y;
      if (x >= nl && g[x].size() <= 2) agenda.push_back(x);
      if (y >= nl && g[y].size() <= 2) agenda.push_back(y);
    }
  }

  SteinerTree out(nl);
  std::vector<int> remap(nv, -1);
  for (int v = 0; v < nl; ++v) remap[v] = v;
  for (int v = nl; v < nv; ++v)
    if (alive[v]) remap[v] = out.add_steiner();
  for (int v = 0; v < nv; ++v) {
    if (!alive[v] && v >= nl) continue;
    for (auto [w, len] : g[v])
      if (v < w) out.add_edge(remap[v], remap[w], len);
  }
  return out;
}

double c_radius(const SteinerTree& t) {
  if (t.steiner_count() == 0) return 0.0;
  auto nearest = nearest_labeled(t);
  double worst = 0.0;
  for (int v = t.labeled_count(); v < t.vertex_count(); ++v)
    worst = std::max(worst, nearest.dist[v]);
  return worst;
}

WeightedTree desteinerize(const SteinerTree& t) {
  SteinerTree pruned = splice_redundant_steiner(t);
  int nl = pruned.labeled_count();
  int nv = pruned.vertex_count();

  auto nearest = nearest_labeled(pruned);
  const std::vector<int>& f = nearest.who;

  // fibers f^{-1}(w) must induce subtrees
  {
    std::vector<int> rep(nv);
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&rep](int x) {
      while (rep[x] != x) x = rep[x] = rep[rep[x]];
      return x;
    };
    int merges = 0;
    for (auto [edge, len] : pruned.edge_list()) {
      (void)len;
      auto [a, b] = edge;
      if (f[a] == f[b] && find(a) != find(b)) {
        rep[find(a)] = find(b);
        ++merges;
      }
    }
    if (merges != nv - nl) throw std::logic_error("fiber of a labeled vertex is not a subtree");
  }

  std::vector<std::pair<int, int>> edges;
  for (auto [edge, len] : pruned.edge_list()) {
    (void)len;
    int a = f[edge.first], b = f[edge.second];
    if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  TreeTopology topology(nl, edges);

  auto droot = pruned.distances_from(0);
  const auto& adj = topology.adjacency();
  std::vector<double> lengths(topology.edges().size(), 0.0);
  std::vector<double> dprime(nl, kInf);
  std::vector<int> queue = {0};
  dprime[0] = 0.0;
  for (size_t h = 0; h < queue.size(); ++h) {
    int u = queue[h];
    for (auto [v, e] : adj[u]) {
      if (dprime[v] != kInf) continue;
      lengths[e] = std::max(0.0, droot[v] - dprime[u]);
      dprime[v] = dprime[u] + lengths[e];
      queue.push_back(v);
    }
  }
  return WeightedTree{std::move(topology), std::move(lengths)};
}

WeightedTree tree_metric_reconstruction(const DistanceEstimate& d_pre,
                                        double L, double eps) {
  return desteinerize(additive_metric_reconstruction(d_pre, L, eps));
}

}  // namespace treelearn
