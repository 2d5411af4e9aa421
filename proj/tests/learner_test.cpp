#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "treelearn/learner.hpp"

using namespace treelearn;
using namespace treelearn::testutil;

TEST_CASE("lower-bounded learner on a single edge") {
  CorrelationMatrix mu(2);
  mu.set(0, 1, 0.9);
  TreeIsingModel out = learn_lwr_bdd_model(mu, 1e-7);
  REQUIRE(out.topology().edges().size() == 1);
  CHECK(out.theta_of(0) >= 0.899);
  CHECK(out.theta_of(0) <= 0.901);
}

TEST_CASE("lower-bounded learner on a short path") {
  TreeIsingModel truth(TreeTopology(4, {{0, 1}, {1, 2}, {2, 3}}), {0.5, 0.5, 0.5});
  CorrelationMatrix mu = pairwise_correlations(truth);
  TreeIsingModel out = learn_lwr_bdd_model(mu, 1e-7);
  CHECK(max_entry_diff(pairwise_correlations(out), mu) <= 1e-3);
}

TEST_CASE("lower-bounded learner on stars") {
  // weak star: allowed by the contract even though below the intended regime
  std::vector<std::pair<int, int>> star_edges;
  for (int v = 1; v < 10; ++v) star_edges.push_back({0, v});
  TreeIsingModel weak(TreeTopology(10, star_edges), std::vector<double>(9, 0.06));
  CHECK_NOTHROW(learn_lwr_bdd_model(pairwise_correlations(weak), 1e-6));

  TreeIsingModel strong(TreeTopology(10, star_edges), std::vector<double>(9, 0.9));
  CorrelationMatrix mu = pairwise_correlations(strong);
  TreeIsingModel out = learn_lwr_bdd_model(mu, 1e-6);
  CHECK(max_entry_diff(pairwise_correlations(out), mu) <= 1e-3);
}

TEST_CASE("vertices without finite estimates attach to the root with zero weight") {
  CorrelationMatrix mu(3);
  mu.set(0, 1, 0.9);
  // vertex 2 has no estimate above eps toward anyone
  mu.set(0, 2, 0.005);
  mu.set(1, 2, 0.001);
  TreeIsingModel out = learn_lwr_bdd_model(mu, 0.01);
  CHECK(out.topology().has_edge(0, 2));
  const auto& edges = out.topology().edges();
  for (size_t e = 0; e < edges.size(); ++e)
    if (edges[e] == std::pair<int, int>{0, 2}) CHECK(out.theta_of(static_cast<int>(e)) == 0.0);
}

TEST_CASE("full learner on all-zero estimates returns an independent model") {
  CorrelationMatrix mu(6);
  TreeIsingModel out = learn_model(mu, 1e-6);
  for (double t : out.theta()) CHECK(t == 0.0);
  CHECK(loctv2(pairwise_correlations(out), mu) == 0.0);
}

TEST_CASE("ferromagnetic inputs: full learner equals the ferro learner") {
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + rng.uniform_int(0, 15);
    TreeIsingModel truth = random_model(n, {0.05, 0.5, 0.95}, false, rng);
    CorrelationMatrix mu =
        clamp_nonneg(perturb(pairwise_correlations(truth), 1e-6,
                             mix_seed(7, trial), PerturbMode::kRandomSign));
    TreeIsingModel a = learn_model(mu, 1e-6);
    TreeIsingModel b = learn_ferro_model(mu, 1e-6, learn_lwr_bdd_model);
    CHECK(a.topology().same_edges(b.topology()));
    for (size_t e = 0; e < a.theta().size(); ++e)
      CHECK(a.theta_of(static_cast<int>(e)) == b.theta_of(static_cast<int>(e)));
  }
}

TEST_CASE("full learner holds the error envelope under adversarial corruption") {
  Rng rng(89);
  double eps = 1e-4;
  for (int trial = 0; trial < 8; ++trial) {
    TreeIsingModel truth = random_model(30, {0.05, 0.5, 0.95}, true, rng);
    CorrelationMatrix mu = pairwise_correlations(truth);
    CorrelationMatrix mu_t = perturb(mu, eps, mix_seed(17, trial), PerturbMode::kRandomSign);
    TreeIsingModel out = learn_model(mu_t, eps);
    CHECK(loctv2(pairwise_correlations(out), mu) <= 500.0 * eps);
  }
}

TEST_CASE("learner output is deterministic") {
  Rng rng(97);
  TreeIsingModel truth = random_model(20, {0.05, 0.5, 0.95}, true, rng);
  CorrelationMatrix mu_t =
      perturb(pairwise_correlations(truth), 1e-5, 3, PerturbMode::kRandomSign);
  TreeIsingModel a = learn_model(mu_t, 1e-5);
  TreeIsingModel b = learn_model(mu_t, 1e-5);
  CHECK(a.topology().edges() == b.topology().edges());
  for (size_t e = 0; e < a.theta().size(); ++e)
    CHECK(a.theta_of(static_cast<int>(e)) == b.theta_of(static_cast<int>(e)));
}

TEST_CASE("recovered signs match the truth on confidently nonzero pairs") {
  Rng rng(103);
  double eps = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    TreeIsingModel truth = random_model(20, {0.05, 0.3, 0.9}, true, rng);
    CorrelationMatrix mu = pairwise_correlations(truth);
    CorrelationMatrix mu_t = perturb(mu, eps, mix_seed(23, trial), PerturbMode::kRandomSign);
    TreeIsingModel out = learn_model(mu_t, eps);
    CorrelationMatrix mu_hat = pairwise_correlations(out);
    double c_obs = max_entry_diff(mu_hat, mu_t) / eps;
    for (int u = 0; u < 20; ++u)
      for (int v = u + 1; v < 20; ++v)
        if (std::fabs(mu_hat(u, v)) > (c_obs + 1.0) * eps && mu(u, v) != 0.0)
          CHECK(mu_hat(u, v) * mu(u, v) > 0.0);
  }
}

TEST_CASE("very weak true edges leave a very weak edge in the output path") {
  Rng rng(107);
  double eps = 1e-6;
  for (int trial = 0; trial < 30; ++trial) {
    int n = 6 + rng.uniform_int(0, 10);
    // mix in edges at or below 4*eps
    TreeIsingModel truth = random_model(n, {0.0, 2e-6, 4e-6, 0.4, 0.9}, false, rng);
    CorrelationMatrix mu = pairwise_correlations(truth);
    TreeIsingModel out = learn_model(mu, eps);
    const auto& adj = out.topology().adjacency();
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        bool weak_true = false;
        for (int e : truth.topology().path_edges(u, v))
          if (truth.theta_of(e) <= 4.0 * eps) weak_true = true;
        if (!weak_true) continue;
        double min_theta = 1.0;
        auto path = out.topology().path_vertices(u, v);
        for (size_t i = 0; i + 1 < path.size(); ++i)
          for (auto [w, e] : adj[path[i]])
            if (w == path[i + 1]) min_theta = std::min(min_theta, std::fabs(out.theta_of(e)));
        CHECK(min_theta <= 5.0 * eps);
      }
  }
}

TEST_CASE("learning from samples") {
  TreeIsingModel hard(TreeTopology(2, {{0, 1}}), {1.0});
  auto [model, report] = learn_from_samples(sample(hard, 64, 5), 0.0, 3);
  REQUIRE(model.topology().edges().size() == 1);
  CHECK(model.theta_of(0) == 1.0);
  CHECK(report.k_factor == 24.0);
  CHECK(report.m == 64);
  CHECK(report.loctv_k_radius == 24.0 * report.loctv2_radius);

  Rng rng(109);
  TreeIsingModel truth = random_model_uniform(12, 0.3, 0.8, true, rng);
  long m = 200000;
  auto [learned, rep] = learn_from_samples(sample(truth, m, 11), 0.02, 2);
  CHECK(loctv2(pairwise_correlations(learned), pairwise_correlations(truth)) <= 0.1);
  CHECK(rep.runtime_ms >= 0.0);
}

TEST_CASE("learning succeeds from concentration-sized samples") {
  // n=20, eps=0.1, m = ceil(16 log(2n/0.05) / eps^2); success means the
  // learned model sits within 3*eps of the truth in loctv2
  int n = 20;
  double eps = 0.1;
  long m = static_cast<long>(std::ceil(16.0 * std::log(2.0 * n / 0.05) / (eps * eps)));
  int successes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(mix_seed(140, trial));
    TreeIsingModel truth = random_model_uniform(n, 0.1, 0.9, true, rng);
    CorrelationMatrix mu_hat = sampled_correlations(truth, m, mix_seed(141, trial));
    TreeIsingModel learned = learn_model(mu_hat, eps);
    double d = loctv2(pairwise_correlations(learned), pairwise_correlations(truth));
    if (d <= 3.0 * eps) ++successes;
  }
  CHECK(successes >= 95);
}

TEST_CASE("sign of path product") {
  TreeIsingModel two(TreeTopology(3, {{0, 1}, {1, 2}}), {-0.5, -0.5});
  CHECK(sign_of_path_product(two, 0, 2) == 1);

  TreeIsingModel four(TreeTopology(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}),
                      {-0.5, 0.5, -0.5, -0.5});
  CHECK(sign_of_path_product(four, 0, 4) == -1);

  TreeIsingModel zero(TreeTopology(3, {{0, 1}, {1, 2}}), {0.0, 0.5});
  CHECK(sign_of_path_product(zero, 0, 2) == 0);
}

TEST_CASE("signs multiply along vertex sequences") {
  Rng rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + rng.uniform_int(0, 6);
    TreeIsingModel m = random_model_uniform(n, 0.05, 0.95, true, rng);
    CorrelationMatrix mu = pairwise_correlations(m);
    int t = 3 + rng.uniform_int(0, 3);
    std::vector<int> walk(t);
    for (int& w : walk) w = rng.uniform_int(0, n - 1);
    int prod = 1;
    bool ok = true;
    for (int i = 0; i + 1 < t; ++i) {
      double x = mu(walk[i], walk[i + 1]);
      if (walk[i] == walk[i + 1]) x = 1.0;
      if (x == 0.0) ok = false;
      prod *= x > 0.0 ? 1 : -1;
    }
    if (!ok) continue;
    double direct = walk.front() == walk.back() ? 1.0 : mu(walk.front(), walk.back());
    CHECK(prod == (direct > 0.0 ? 1 : -1));
  }
}
