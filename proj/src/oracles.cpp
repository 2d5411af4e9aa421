#include "treelearn/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treelearn {

std::vector<double> brute_force_joint(const TreeIsingModel& model) {
  int n = model.vertex_count();
  if (n > 15) throw std::invalid_argument("brute_force_joint requires n <= 15");
  const auto& edges = model.topology().edges();
  std::vector<double> table(1ull << n);
  double total = 0.0;
  for (unsigned long long state = 0; state < table.size(); ++state) {
    double w = 1.0;
    for (size_t e = 0; e < edges.size(); ++e) {
      int su = (state >> edges[e].first) & 1ull ? 1 : -1;
      int sv = (state >> edges[e].second) & 1ull ? 1 : -1;
      w *= 1.0 + model.theta_of(static_cast<int>(e)) * su * sv;
    }
    table[state] = w;
    total += w;
  }
  for (double& x : table) x /= total;
  return table;
}

DistanceEstimate minimax_path_closure(const DistanceEstimate& a) {
  int n = a.size();
  if (n > 64) throw std::invalid_argument("minimax_path_closure requires n <= 64");
  std::vector<double> e(static_cast<size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      double x = a(u, v);
      if (u != v && x == kInf)
        throw std::invalid_argument("minimax_path_closure requires finite entries");
      e[static_cast<size_t>(u) * n + v] = x;
    }
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double via = std::max(e[static_cast<size_t>(u) * n + w],
                              e[static_cast<size_t>(w) * n + v]);
        double& cur = e[static_cast<size_t>(u) * n + v];
        if (via < cur) cur = via;
      }
  return DistanceEstimate(n, std::move(e));
}

Loctv2Certificate exhaustive_loctv2_certificate(const CorrelationMatrix& p,
                                                const CorrelationMatrix& q) {
  if (p.size() != q.size()) throw std::invalid_argument("dimension mismatch");
  Loctv2Certificate best{0.0, 0, p.size() > 1 ? 1 : 0};
  for (int u = 0; u < p.size(); ++u)
    for (int v = u + 1; v < p.size(); ++v) {
      double d = 0.5 * std::fabs(p(u, v) - q(u, v));
      if (d > best.value) best = {d, u, v};
    }
  return best;
}

}  // namespace treelearn
