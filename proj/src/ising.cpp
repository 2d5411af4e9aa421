#include "treelearn/ising.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "treelearn/rng.hpp"

namespace treelearn {

TreeIsingModel::TreeIsingModel(TreeTopology topology, std::vector<double> theta)
    : topology_(std::move(topology)), theta_(std::move(theta)) {
  if (theta_.size() != topology_.edges().size())
    throw std::invalid_argument("theta size must match edge count");
  for (double t : theta_)
    if (std::isnan(t) || t < -1.0 || t > 1.0)
      throw std::invalid_argument("theta outside [-1, 1]");
}

double TreeIsingModel::coupling(int edge_index) const {
  return std::atanh(theta_[edge_index]);
}

CorrelationMatrix pairwise_correlations(const TreeIsingModel& model) {
  int n = model.vertex_count();
  const auto& adj = model.topology().adjacency();
  CorrelationMatrix out(n);
  std::vector<std::pair<int, double>> stack;
  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.clear();
    stack.push_back({r, 1.0});
    seen[r] = 1;
    while (!stack.empty()) {
      auto [v, prod] = stack.back();
      stack.pop_back();
      if (v > r) out.set(r, v, prod);
      for (auto [w, e] : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, prod * model.theta_of(e)});
        }
      }
    }
  }
  return out;
}

namespace {

// Minimal subtree spanning `subset`, with vertices outside the subset
// eliminated: leaves dropped, degree-2 vertices spliced into a single edge
// carrying the theta product. Remaining non-subset vertices are branch
// points that must be summed over.
struct ContractedTree {
  std::vector<int> original_id;                       // local -> model vertex
  std::vector<std::vector<std::pair<int, double>>> adj;  // local adjacency
  std::vector<int> clamp_slot;  // position in subset, or -1 for free vertices
};

ContractedTree contract(const TreeIsingModel& model, const std::vector<int>& subset) {
  int n = model.vertex_count();
  const auto& adj = model.topology().adjacency();

  std::vector<int> parent(n, -1), parent_edge(n, -1), order;
  order.reserve(n);
  order.push_back(subset[0]);
  parent[subset[0]] = subset[0];
  for (size_t h = 0; h < order.size(); ++h) {
    int v = order[h];
    for (auto [w, e] : adj[v]) {
      if (parent[w] == -1) {
        parent[w] = v;
        parent_edge[w] = e;
        order.push_back(w);
      }
    }
  }

  std::vector<char> marked(n, 0);
  marked[subset[0]] = 1;
  for (int s : subset)
    for (int v = s; !marked[v]; v = parent[v]) marked[v] = 1;

  std::vector<int> local(n, -1), ids;
  for (int v = 0; v < n; ++v)
    if (marked[v]) {
      local[v] = static_cast<int>(ids.size());
      ids.push_back(v);
    }

  int k = static_cast<int>(ids.size());
  std::vector<std::map<int, double>> g(k);
  for (int v = 0; v < n; ++v) {
    if (marked[v] && v != subset[0] && marked[parent[v]]) {
      double t = model.theta_of(parent_edge[v]);
      g[local[v]][local[parent[v]]] = t;
      g[local[parent[v]]][local[v]] = t;
    }
  }

  std::vector<char> in_subset(k, 0);
  for (int s : subset) in_subset[local[s]] = 1;

  std::vector<char> alive(k, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < k; ++v) {
      if (!alive[v] || in_subset[v]) continue;
      if (g[v].empty()) {
        alive[v] = 0;
        changed = true;
      } else if (g[v].size() == 1) {
        int w = g[v].begin()->first;
        g[w].erase(v);
        g[v].clear();
        alive[v] = 0;
        changed = true;
      } else if (g[v].size() == 2) {
        auto it = g[v].begin();
        auto [x, t1] = *it;
        auto [y, t2] = *std::next(it);
        g[x].erase(v);
        g[y].erase(v);
        g[x][y] = t1 * t2;
        g[y][x] = t1 * t2;
        g[v].clear();
        alive[v] = 0;
        changed = true;
      }
    }
  }

  ContractedTree out;
  std::vector<int> remap(k, -1);
  for (int v = 0; v < k; ++v) {
    if (alive[v]) {
      remap[v] = static_cast<int>(out.original_id.size());
      out.original_id.push_back(ids[v]);
    }
  }
  out.adj.resize(out.original_id.size());
  out.clamp_slot.assign(out.original_id.size(), -1);
  for (int v = 0; v < k; ++v) {
    if (!alive[v]) continue;
    for (auto [w, t] : g[v])
      if (v < w) {
        out.adj[remap[v]].push_back({remap[w], t});
        out.adj[remap[w]].push_back({remap[v], t});
      }
  }
  for (size_t j = 0; j < subset.size(); ++j) out.clamp_slot[remap[local[subset[j]]]] = static_cast<int>(j);
  return out;
}

// Probability mass of one subset assignment: message passing over the
// contracted tree with subset spins clamped.
double clamped_mass(const ContractedTree& t, unsigned assignment) {
  int k = static_cast<int>(t.adj.size());
  if (k == 1) return 0.5;

  std::vector<int> parent(k, -1), order;
  order.reserve(k);
  order.push_back(0);
  parent[0] = 0;
  for (size_t h = 0; h < order.size(); ++h)
    for (auto [w, th] : t.adj[order[h]]) {
      (void)th;
      if (parent[w] == -1) {
        parent[w] = order[h];
        order.push_back(w);
      }
    }

  // message[v][(x_parent+1)/2], built leaves-first
  std::vector<std::array<double, 2>> below(k, {1.0, 1.0});
  for (int i = k - 1; i >= 1; --i) {
    int v = order[i];
    double theta_up = 0.0;
    for (auto [w, th] : t.adj[v])
      if (w == parent[v]) theta_up = th;
    std::array<double, 2> msg = {0.0, 0.0};
    for (int sv = -1; sv <= 1; sv += 2) {
      if (t.clamp_slot[v] >= 0) {
        int want = (assignment >> t.clamp_slot[v]) & 1u ? 1 : -1;
        if (sv != want) continue;
      }
      double w_below = below[v][(sv + 1) / 2];
      for (int sp = -1; sp <= 1; sp += 2)
        msg[(sp + 1) / 2] += w_below * 0.5 * (1.0 + theta_up * sv * sp);
    }
    below[parent[v]][0] *= msg[0];
    below[parent[v]][1] *= msg[1];
    // fold the message into the parent's running product via below[]
    below[v] = {1.0, 1.0};
  }

  double total = 0.0;
  int r = order[0];
  for (int sr = -1; sr <= 1; sr += 2) {
    if (t.clamp_slot[r] >= 0) {
      int want = (assignment >> t.clamp_slot[r]) & 1u ? 1 : -1;
      if (sr != want) continue;
    }
    total += 0.5 * below[r][(sr + 1) / 2];
  }
  return total;
}

}  // namespace

std::vector<double> marginal_joint(const TreeIsingModel& model,
                                   const std::vector<int>& subset) {
  int n = model.vertex_count();
  if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
  if (subset.size() > 15) throw std::invalid_argument("subset too large (max 15)");
  std::vector<char> seen(n, 0);
  for (int s : subset) {
    if (s < 0 || s >= n) throw std::invalid_argument("subset vertex out of range");
    if (seen[s]) throw std::invalid_argument("subset vertices must be distinct");
    seen[s] = 1;
  }

  ContractedTree t = contract(model, subset);
  size_t k = subset.size();
  std::vector<double> table(1ull << k, 0.0);
  double total = 0.0;
  for (unsigned a = 0; a < table.size(); ++a) {
    table[a] = clamped_mass(t, a);
    total += table[a];
  }
  for (double& x : table) x /= total;
  return table;
}

double loctv_k_exact(const TreeIsingModel& p, const TreeIsingModel& q, int k) {
  int n = p.vertex_count();
  if (q.vertex_count() != n) throw std::invalid_argument("model size mismatch");
  if (n > 15) throw std::invalid_argument("loctv_k_exact requires n <= 15");
  if (k < 2 || k > n) throw std::invalid_argument("order k must be in [2, n]");

  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  double worst = 0.0;
  while (true) {
    auto tp = marginal_joint(p, subset);
    auto tq = marginal_joint(q, subset);
    double tv = 0.0;
    for (size_t i = 0; i < tp.size(); ++i) tv += std::fabs(tp[i] - tq[i]);
    worst = std::max(worst, 0.5 * tv);

    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return worst;
}

namespace {

struct SampleOrder {
  // (vertex, parent slot, flip probability (1+theta)/2) in BFS order
  std::vector<int> vertex;
  std::vector<int> parent;
  std::vector<double> keep_prob;
};

SampleOrder sampling_order(const TreeIsingModel& model) {
  int n = model.vertex_count();
  const auto& adj = model.topology().adjacency();
  SampleOrder ord;
  std::vector<char> seen(n, 0);
  std::vector<int> queue;
  queue.push_back(0);
  seen[0] = 1;
  for (size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    for (auto [w, e] : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ord.vertex.push_back(w);
        ord.parent.push_back(v);
        ord.keep_prob.push_back(0.5 * (1.0 + model.theta_of(e)));
        queue.push_back(w);
      }
    }
  }
  return ord;
}

inline void fill_row(const SampleOrder& ord, Rng& rng, std::int8_t* row) {
  row[0] = static_cast<std::int8_t>(rng.sign());
  for (size_t i = 0; i < ord.vertex.size(); ++i) {
    std::int8_t p = row[ord.parent[i]];
    row[ord.vertex[i]] = rng.bernoulli(ord.keep_prob[i]) ? p : static_cast<std::int8_t>(-p);
  }
}

}  // namespace

SampleMatrix sample(const TreeIsingModel& model, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("need m >= 1 samples");
  int n = model.vertex_count();
  SampleOrder ord = sampling_order(model);
  Rng rng(seed);
  std::vector<std::int8_t> values(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) fill_row(ord, rng, values.data() + static_cast<size_t>(i) * n);
  return SampleMatrix(m, n, std::move(values));
}

CorrelationMatrix sampled_correlations(const TreeIsingModel& model, long m,
                                       std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("need m >= 1 samples");
  int n = model.vertex_count();
  SampleOrder ord = sampling_order(model);
  Rng rng(seed);
  std::vector<std::int8_t> row(n);
  std::vector<long> agree(static_cast<size_t>(n) * n, 0);
  for (long i = 0; i < m; ++i) {
    fill_row(ord, rng, row.data());
    for (int u = 0; u < n; ++u) {
      const std::int8_t xu = row[u];
      long* arow = agree.data() + static_cast<size_t>(u) * n;
      for (int v = u + 1; v < n; ++v) arow[v] += (xu == row[v]);
    }
  }
  CorrelationMatrix out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      long s = 2 * agree[static_cast<size_t>(u) * n + v] - m;
      out.set(u, v, static_cast<double>(s) / static_cast<double>(m));
    }
  return out;
}

}  // namespace treelearn
