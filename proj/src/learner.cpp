#include "treelearn/learner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "treelearn/metric_reconstruction.hpp"

namespace treelearn {

namespace {

constexpr double kEdgeLengthBound = 2.9957322735539909;  // log(20)

// Slack forwarded to the metric reconstruction cap. Zero keeps the capped
// dissimilarity tight; any positive value widens every reconstructed
// distance by up to 44x that amount.
constexpr double kTmrSlack = 0.0;

}  // namespace

TreeIsingModel learn_lwr_bdd_model(const CorrelationMatrix& mu_tilde, double eps) {
  if (eps < 0.0) throw std::invalid_argument("learn_lwr_bdd_model needs eps >= 0");
  int n = mu_tilde.size();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (mu_tilde(u, v) < 0.0)
        throw std::invalid_argument("learn_lwr_bdd_model needs estimates in [0, 1]");

  DistanceEstimate d_pre = evolutionary_estimate(mu_tilde, eps);

  // components of the finite-estimate graph; vertices with no finite
  // estimate toward the root's component are attached with theta 0
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<int> stack = {s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comps[id].push_back(v);
      for (int w = 0; w < n; ++w)
        if (comp[w] == -1 && d_pre(v, w) < kInf) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
  }
  for (auto& c : comps) std::sort(c.begin(), c.end());

  std::vector<std::pair<int, int>> edges;
  std::vector<double> theta;
  for (const auto& c : comps) {
    if (c.size() > 1) {
      WeightedTree wt = tree_metric_reconstruction(d_pre.submatrix(c),
                                                   kEdgeLengthBound, kTmrSlack);
      const auto& sub_edges = wt.topology.edges();
      for (size_t e = 0; e < sub_edges.size(); ++e) {
        edges.push_back({c[sub_edges[e].first], c[sub_edges[e].second]});
        theta.push_back(std::clamp(std::exp(-wt.lengths[e]), 0.0, 1.0));
      }
    }
    if (c[0] != 0) {  // attach this component's lowest vertex to the root
      edges.push_back({0, c[0]});
      theta.push_back(0.0);
    }
  }
  return TreeIsingModel(TreeTopology(n, std::move(edges)), std::move(theta));
}

TreeIsingModel learn_model(const CorrelationMatrix& mu_tilde, double eps) {
  if (eps < 0.0) throw std::invalid_argument("learn_model needs eps >= 0");
  if (eps >= 1e-5) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::cerr << "treelearn: eps >= 1e-5 is outside the guaranteed accuracy regime\n";
  }

  TreeIsingModel ferro = learn_ferro_model(mu_tilde.abs(), eps, learn_lwr_bdd_model);

  const auto& edges = ferro.topology().edges();
  std::vector<double> theta(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    double mu = mu_tilde(edges[e].first, edges[e].second);
    double sgn = mu > 0.0 ? 1.0 : (mu < 0.0 ? -1.0 : 0.0);
    theta[e] = sgn * ferro.theta_of(static_cast<int>(e));
  }
  return TreeIsingModel(ferro.topology(), std::move(theta));
}

std::pair<TreeIsingModel, LearnReport> learn_from_samples(
    const SampleMatrix& samples, double eps, int k) {
  if (k < 2) throw std::invalid_argument("order k must be >= 2");
  auto start = std::chrono::steady_clock::now();

  CorrelationMatrix mu_tilde = empirical_correlations(samples);
  TreeIsingModel model = learn_model(mu_tilde, eps);

  LearnReport report;
  report.m = samples.sample_count();
  report.eps = eps;
  report.k = k;
  report.k_factor = k * std::pow(2.0, k);
  CorrelationMatrix mu_hat = pairwise_correlations(model);
  double err = 0.0;
  for (int u = 0; u < mu_tilde.size(); ++u)
    for (int v = u + 1; v < mu_tilde.size(); ++v)
      err = std::max(err, std::fabs(mu_hat(u, v) - mu_tilde(u, v)));
  report.observed_c = eps > 0.0 ? err / eps : 0.0;
  report.loctv2_radius = report.observed_c * eps;
  report.loctv_k_radius = report.k_factor * report.loctv2_radius;
  report.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return {std::move(model), report};
}

int sign_of_path_product(const TreeIsingModel& model, int u, int v) {
  if (u == v) return 1;
  int sign = 1;
  for (int e : model.topology().path_edges(u, v)) {
    double t = model.theta_of(e);
    if (t == 0.0) return 0;
    if (t < 0.0) sign = -sign;
  }
  return sign;
}

}  // namespace treelearn
