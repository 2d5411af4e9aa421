#include "treelearn/constructions.hpp"

#include <cmath>
#include <stdexcept>

namespace treelearn {

CorrelationMatrix gen_cl_failure_correlations(double delta, int n) {
  if (!(delta > 0.0) || delta >= 0.1)
    throw std::invalid_argument("needs 0 < delta < 0.1");
  if (n < 2) throw std::invalid_argument("needs n >= 2");
  // X_i at index i-1, Y_i at index n+i-1 (1-based i)
  CorrelationMatrix out(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double same = std::exp(-delta * std::abs(i - j));
      double cross = std::exp(-delta * std::abs(i - j) - 2.0 * delta);
      if (i < j) {
        out.set(i, j, same);
        out.set(n + i, n + j, same);
      }
      out.set(i, n + j, cross);
    }
  return out;
}

TreeIsingModel cl_failure_tree_model(double delta, int n) {
  if (!(delta > 0.0) || delta >= 0.1)
    throw std::invalid_argument("needs 0 < delta < 0.1");
  if (n < 2) throw std::invalid_argument("needs n >= 2");
  // path X_1, Y_1, X_2, Y_2, ...; pairing edges are deterministic copies
  std::vector<std::pair<int, int>> edges;
  std::vector<double> theta;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, n + i});
    theta.push_back(1.0);
    if (i + 1 < n) {
      edges.push_back({n + i, i + 1});
      theta.push_back(std::exp(-delta));
    }
  }
  return TreeIsingModel(TreeTopology(2 * n, std::move(edges)), std::move(theta));
}

CorrelationMatrix gen_latent_counterexample(double delta) {
  if (!(delta > 0.0) || delta > 0.125)
    throw std::invalid_argument("needs 0 < delta <= 1/8");
  CorrelationMatrix out(3);
  out.set(0, 1, delta);
  out.set(0, 2, delta);
  out.set(1, 2, 0.25);
  return out;
}

TreeTopology random_tree(int n, Rng& rng) {
  if (n == 1) return TreeTopology(1, {});
  if (n == 2) return TreeTopology(2, {{0, 1}});
  std::vector<int> prufer(n - 2);
  for (int& x : prufer) x = rng.uniform_int(0, n - 1);
  std::vector<int> degree(n, 1);
  for (int x : prufer) ++degree[x];
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  int leaf = -1;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) {
      leaf = v;
      break;
    }
  int ptr = leaf;
  for (int x : prufer) {
    edges.push_back({leaf, x});
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      while (++ptr < n && degree[ptr] != 1) {
      }
      leaf = ptr;
    }
  }
  edges.push_back({leaf, n - 1});
  return TreeTopology(n, std::move(edges));
}

TreeIsingModel random_model(int n, const std::vector<double>& magnitudes,
                            bool with_signs, Rng& rng) {
  TreeTopology t = random_tree(n, rng);
  std::vector<double> theta(t.edges().size());
  for (double& x : theta) {
    x = magnitudes[rng.uniform_int(0, static_cast<int>(magnitudes.size()) - 1)];
    if (with_signs) x *= rng.sign();
  }
  return TreeIsingModel(std::move(t), std::move(theta));
}

TreeIsingModel random_model_uniform(int n, double lo, double hi,
                                    bool with_signs, Rng& rng) {
  TreeTopology t = random_tree(n, rng);
  std::vector<double> theta(t.edges().size());
  for (double& x : theta) {
    x = rng.uniform(lo, hi);
    if (with_signs) x *= rng.sign();
  }
  return TreeIsingModel(std::move(t), std::move(theta));
}

}  // namespace treelearn
