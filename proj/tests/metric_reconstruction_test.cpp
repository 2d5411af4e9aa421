#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "treelearn/metric_reconstruction.hpp"
#include "treelearn/oracles.hpp"

using namespace treelearn;
using namespace treelearn::testutil;

namespace {

DistanceEstimate random_dissimilarity(int n, Rng& rng, double hi = 10.0) {
  DistanceEstimate a(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) a.set(u, v, rng.uniform(0.0, hi));
  return a;
}

std::vector<std::vector<double>> labeled_distances(const SteinerTree& t) {
  std::vector<std::vector<double>> out;
  for (int u = 0; u < t.labeled_count(); ++u) {
    auto all = t.distances_from(u);
    all.resize(t.labeled_count());
    out.push_back(std::move(all));
  }
  return out;
}

// noisy one-sided estimate of a tree metric, truncated past 3L
DistanceEstimate noisy_estimate(const RandomTreeMetric& tm, double L, double eps, Rng& rng) {
  int n = tm.topology.vertex_count();
  DistanceEstimate d_pre(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (tm.dist[u][v] <= 3.0 * L) d_pre.set(u, v, tm.dist[u][v] + rng.uniform(0.0, eps));
  return d_pre;
}

}  // namespace

TEST_CASE("evolutionary distance estimate") {
  CorrelationMatrix mu(3);
  mu.set(0, 1, 1.0);
  mu.set(0, 2, 0.5);
  mu.set(1, 2, 0.005);
  DistanceEstimate d0 = evolutionary_estimate(mu, 0.0);
  CHECK(d0(0, 1) == 0.0);
  DistanceEstimate d = evolutionary_estimate(mu, 0.01);
  CHECK(d(0, 2) == doctest::Approx(-std::log(0.49)).epsilon(1e-12));
  CHECK(d(1, 2) == kInf);
  CHECK(d(0, 0) == 0.0);
}

TEST_CASE("dense single-source shortest paths") {
  DistanceEstimate d(3);
  d.set(0, 1, 1.0);
  d.set(0, 2, 5.0);
  d.set(1, 2, 1.0);
  auto dist = shortest_paths_from_root(d, 0);
  CHECK(dist[2] == doctest::Approx(2.0).epsilon(1e-15));

  // a metric input returns its own root row
  Rng rng(8);
  RandomTreeMetric tm = random_tree_metric(12, 1.0, rng);
  DistanceEstimate dm(12);
  for (int u = 0; u < 12; ++u)
    for (int v = u + 1; v < 12; ++v) dm.set(u, v, tm.dist[u][v]);
  auto rows = shortest_paths_from_root(dm, 0);
  for (int v = 0; v < 12; ++v) CHECK(rows[v] == doctest::Approx(tm.dist[0][v]).epsilon(1e-12));
}

TEST_CASE("shortest paths match the all-pairs oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + rng.uniform_int(0, 60);
    DistanceEstimate a = random_dissimilarity(n, rng);
    auto fw = fw_shortest_paths(a);
    auto row = shortest_paths_from_root(a, 0);
    for (int v = 0; v < n; ++v)
      CHECK(row[v] == doctest::Approx(fw[static_cast<size_t>(v)]).epsilon(1e-12));
  }
}

TEST_CASE("subdominant ultrametric on a triangle") {
  DistanceEstimate a(3);
  a.set(0, 1, 1.0);
  a.set(0, 2, 3.0);
  a.set(1, 2, 2.0);
  Dendrogram e = subdominant_ultrametric(a);
  CHECK(e.value(0, 1) == 1.0);
  CHECK(e.value(0, 2) == 2.0);
  CHECK(e.value(1, 2) == 2.0);
}

TEST_CASE("an ultrametric is a fixed point") {
  Rng rng(19);
  // three blocks at inner height 1 and 2, outer height 4
  DistanceEstimate a(6);
  auto h = [&](int u, int v, double x) { a.set(u, v, x); };
  h(0, 1, 1.0);
  h(2, 3, 2.0);
  h(4, 5, 2.0);
  for (int u : {0, 1})
    for (int v : {2, 3, 4, 5}) h(u, v, 4.0);
  for (int u : {2, 3})
    for (int v : {4, 5}) h(u, v, 4.0);
  Dendrogram e = subdominant_ultrametric(a);
  auto vm = e.value_matrix();
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v) CHECK(vm[static_cast<size_t>(u) * 6 + v] == a(u, v));
  (void)rng;
}

TEST_CASE("subdominant equals the minimax closure exactly") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + rng.uniform_int(0, 30);
    DistanceEstimate a = random_dissimilarity(n, rng);
    Dendrogram e = subdominant_ultrametric(a);
    auto vm = e.value_matrix();
    DistanceEstimate closure = minimax_path_closure(a);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        CHECK(vm[static_cast<size_t>(u) * n + v] == closure(u, v));
  }
}

TEST_CASE("subdominant output is a maximal dominated ultrametric") {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 5 + rng.uniform_int(0, 9);
    DistanceEstimate a = random_dissimilarity(n, rng);
    Dendrogram e = subdominant_ultrametric(a);
    auto vm = e.value_matrix();
    auto at = [&](int u, int v) { return vm[static_cast<size_t>(u) * n + v]; };
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        CHECK(at(u, v) <= a(u, v));
        for (int w = 0; w < n; ++w)
          CHECK(at(u, v) <= std::max(at(u, w), at(w, v)) + 1e-15);
      }
    // raising any single merge height must break domination or the
    // ultrametric inequality
    double eta = 1e-6;
    for (int g = n; g < e.node_count(); ++g) {
      auto bumped = [&](int u, int v) {
        if (u == v) return 0.0;
        // recompute the lca height with node g raised
        std::vector<int> au, av;
        for (int x = u; x != -1; x = e.parent(x)) au.push_back(x);
        for (int x = v; x != -1; x = e.parent(x)) av.push_back(x);
        size_t i = au.size(), j = av.size();
        int lca = -1;
        while (i > 0 && j > 0 && au[i - 1] == av[j - 1]) {
          lca = au[i - 1];
          --i;
          --j;
        }
        return e.height_of(lca) + (lca == g ? eta : 0.0);
      };
      bool broke = false;
      for (int u = 0; u < n && !broke; ++u)
        for (int v = 0; v < n && !broke; ++v) {
          if (u == v) continue;
          if (bumped(u, v) > a(u, v)) broke = true;
          for (int w = 0; w < n && !broke; ++w)
            if (bumped(u, v) > std::max(bumped(u, w), bumped(w, v))) broke = true;
        }
      CHECK(broke);
    }
  }
}

TEST_CASE("tree realization of ultrametric minus centroid") {
  // two leaves: distance is the merge height minus both leaf offsets
  Dendrogram two(2, {{0, 1, 4.0}});
  CentroidMetric c{{1.0, 0.5}, 2.0, 0};
  SteinerTree t = ultra_minus_centroid(two, c, 0);
  auto d = t.distances_from(0);
  CHECK(d[1] == doctest::Approx(2.5).epsilon(1e-15));

  // zero centroid: leaf-to-leaf distances reproduce the ultrametric
  Rng rng(31);
  DistanceEstimate a = random_dissimilarity(6, rng);
  Dendrogram e = subdominant_ultrametric(a);
  SteinerTree t0 = ultra_minus_centroid(e, CentroidMetric{std::vector<double>(6, 0.0), 0.0, 0}, 0);
  auto vm = e.value_matrix();
  auto dist = labeled_distances(t0);
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v)
      CHECK(dist[u][v] == doctest::Approx(vm[static_cast<size_t>(u) * 6 + v]).epsilon(1e-12));
}

TEST_CASE("realized distances equal e minus c on valid random inputs") {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + rng.uniform_int(0, 14);
    // valid instance via the algorithm itself: random metric plus root row
    RandomTreeMetric tm = random_tree_metric(n, 1.0, rng);
    DistanceEstimate d_pre(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) d_pre.set(u, v, tm.dist[u][v]);
    auto dist = shortest_paths_from_root(d_pre, 0);
    double d_max = 0.0;
    for (double x : dist) d_max = std::max(d_max, x);
    std::vector<double> ell(n);
    for (int v = 0; v < n; ++v) ell[v] = d_max - dist[v];
    DistanceEstimate a(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        a.set(u, v, u == 0 ? 2.0 * d_max
                           : std::min(2.0 * d_max, d_pre(u, v) + ell[u] + ell[v]));
    Dendrogram e = subdominant_ultrametric(a);
    int clamps = 0;
    SteinerTree t = ultra_minus_centroid(e, CentroidMetric{ell, d_max, 0}, 0, &clamps);
    CHECK(clamps == 0);
    auto vm = e.value_matrix();
    auto dist_t = labeled_distances(t);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        double want = vm[static_cast<size_t>(u) * n + v] - ell[u] - ell[v];
        CHECK(std::fabs(dist_t[u][v] - want) <= 1e-9);
      }
  }
}

TEST_CASE("additive reconstruction: zero-noise inputs round trip") {
  DistanceEstimate d(4);
  d.set(0, 1, 1.0);
  d.set(1, 2, 1.0);
  d.set(2, 3, 1.0);
  d.set(0, 2, 2.0);
  d.set(1, 3, 2.0);
  d.set(0, 3, 3.0);
  SteinerTree t = additive_metric_reconstruction(d, 1.5, 0.0);
  auto dist = labeled_distances(t);
  CHECK(std::fabs(dist[0][1] - 1.0) <= 1e-9);
  CHECK(std::fabs(dist[0][3] - 3.0) <= 1e-9);
  CHECK(std::fabs(dist[1][2] - 1.0) <= 1e-9);
  CHECK(std::fabs(dist[2][3] - 1.0) <= 1e-9);
}

TEST_CASE("additive reconstruction: two vertices give a single edge") {
  DistanceEstimate d(2);
  d.set(0, 1, 0.7);
  SteinerTree t = additive_metric_reconstruction(d, 1.0, 0.0);
  auto dist = labeled_distances(t);
  CHECK(dist[0][1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("additive reconstruction stays within the proof constants") {
  Rng rng(41);
  double L = 1.0, eps = 1e-3;
  for (int trial = 0; trial < 10; ++trial) {
    RandomTreeMetric tm = random_tree_metric(40, L, rng);
    DistanceEstimate d_pre = noisy_estimate(tm, L, eps, rng);
    SteinerTree t = additive_metric_reconstruction(d_pre, L, eps);
    auto dist = labeled_distances(t);
    for (int u = 0; u < 40; ++u)
      for (int v = u + 1; v < 40; ++v) {
        double d = tm.dist[u][v];
        CHECK(dist[u][v] - d >= -(2.0 * d / L + 36.0) * eps);
        CHECK(dist[u][v] - d <= (2.0 * d / L + 90.0) * eps);
      }
  }
}

TEST_CASE("additive reconstruction rejects bad inputs") {
  DistanceEstimate d(3);
  d.set(0, 1, 1.0);
  // vertex 2 unreachable
  CHECK_THROWS_AS(additive_metric_reconstruction(d, 1.0, 1e-4), UnreachableVertexError);
  try {
    additive_metric_reconstruction(d, 1.0, 1e-4);
  } catch (const UnreachableVertexError& e) {
    CHECK(e.vertex == 2);
  }
  DistanceEstimate ok(2);
  ok.set(0, 1, 1.0);
  CHECK_THROWS_AS(additive_metric_reconstruction(ok, 1e-3, 1e-4), std::invalid_argument);
}

TEST_CASE("shortest path closure sandwich on valid inputs") {
  Rng rng(43);
  double L = 1.0, eps = 1e-3;
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + rng.uniform_int(0, 25);
    RandomTreeMetric tm = random_tree_metric(n, L, rng);
    DistanceEstimate d_pre = noisy_estimate(tm, L, eps, rng);
    auto closure = fw_shortest_paths(d_pre);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double d = tm.dist[u][v];
        double dt = closure[static_cast<size_t>(u) * n + v];
        CHECK(dt >= d - 1e-12);
        CHECK(dt <= d + (d / L + 1.0) * eps + 1e-12);
      }
  }
}

TEST_CASE("splice removes redundant steiner vertices and keeps distances") {
  // path a - s - b collapses to a single edge
  SteinerTree t(2);
  int s = t.add_steiner();
  t.add_edge(0, s, 1.0);
  t.add_edge(s, 1, 2.0);
  SteinerTree spliced = splice_redundant_steiner(t);
  CHECK(spliced.steiner_count() == 0);
  CHECK(spliced.distances_from(0)[1] == doctest::Approx(3.0).epsilon(1e-15));

  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    int total = 6 + rng.uniform_int(0, 20);
    int labeled = 2 + rng.uniform_int(0, total - 4);
    TreeTopology shape = random_tree(total, rng);
    SteinerTree st(labeled);
    for (int v = labeled; v < total; ++v) st.add_steiner();
    for (auto [u, v] : shape.edges()) st.add_edge(u, v, rng.uniform(0.0, 1.0));
    SteinerTree pruned = splice_redundant_steiner(st);
    auto before = labeled_distances(st);
    auto after = labeled_distances(pruned);
    for (int u = 0; u < labeled; ++u)
      for (int v = 0; v < labeled; ++v)
        CHECK(after[u][v] == doctest::Approx(before[u][v]).epsilon(1e-12));
    // no prunable steiner vertices remain
    for (int v = labeled; v < pruned.vertex_count(); ++v)
      CHECK(pruned.neighbors(v).size() >= 3);
  }
}

TEST_CASE("steiner radius") {
  SteinerTree none(3);
  none.add_edge(0, 1, 1.0);
  none.add_edge(1, 2, 1.0);
  CHECK(c_radius(none) == 0.0);

  SteinerTree one(2);
  int s = one.add_steiner();
  one.add_edge(s, 0, 0.3);
  one.add_edge(s, 1, 0.8);
  CHECK(c_radius(one) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("desteinerize hand traces") {
  {  // no steiner vertices: identity
    SteinerTree t(4);
    t.add_edge(0, 1, 1.0);
    t.add_edge(1, 2, 0.5);
    t.add_edge(1, 3, 0.25);
    WeightedTree out = desteinerize(t);
    CHECK(out.topology.has_edge(0, 1));
    CHECK(out.topology.has_edge(1, 2));
    CHECK(out.topology.has_edge(1, 3));
    auto d = out.distances_from(0);
    CHECK(d[2] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(d[3] == doctest::Approx(1.25).epsilon(1e-12));
  }
  {  // hub steiner merges into the closest labeled vertex
    SteinerTree t(3);
    int hub = t.add_steiner();
    t.add_edge(hub, 0, 0.1);
    t.add_edge(hub, 1, 5.0);
    t.add_edge(hub, 2, 7.0);
    double cr = c_radius(t);
    CHECK(cr == doctest::Approx(0.1).epsilon(1e-15));
    WeightedTree out = desteinerize(t);
    CHECK(out.topology.has_edge(0, 1));
    CHECK(out.topology.has_edge(0, 2));
    auto d0 = out.distances_from(0);
    CHECK(d0[1] == doctest::Approx(5.1).epsilon(1e-12));
    CHECK(d0[2] == doctest::Approx(7.1).epsilon(1e-12));
    auto d1 = out.distances_from(1);
    CHECK(std::fabs(d1[2] - 12.0) <= 12.0 * cr + 1e-12);
  }
}

TEST_CASE("desteinerize distorts by at most twelve steiner radii") {
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    int total = 6 + rng.uniform_int(0, 24);
    int labeled = 2 + rng.uniform_int(0, total - 4);
    TreeTopology shape = random_tree(total, rng);
    SteinerTree st(labeled);
    for (int v = labeled; v < total; ++v) st.add_steiner();
    for (auto [u, v] : shape.edges()) st.add_edge(u, v, rng.uniform(0.0, 1.0));

    SteinerTree pruned = splice_redundant_steiner(st);
    double cr = c_radius(pruned);
    WeightedTree out = desteinerize(st);
    auto want = labeled_distances(pruned);
    for (int u = 0; u < labeled; ++u) {
      auto got = out.distances_from(u);
      for (int v = 0; v < labeled; ++v)
        CHECK(std::fabs(got[v] - want[u][v]) <= 12.0 * cr + 1e-9);
    }
  }
}

TEST_CASE("pipeline-produced steiner trees have small radius") {
  Rng rng(59);
  double L = 1.0, eps = 1e-3;
  for (int trial = 0; trial < 10; ++trial) {
    RandomTreeMetric tm = random_tree_metric(30, L, rng);
    DistanceEstimate d_pre = noisy_estimate(tm, L, eps, rng);
    SteinerTree t = splice_redundant_steiner(additive_metric_reconstruction(d_pre, L, eps));
    CHECK(c_radius(t) <= 30.0 * eps);
  }
}

TEST_CASE("tree metric reconstruction round trips and respects the error envelope") {
  {  // exact input: exact output
    Rng rng(61);
    RandomTreeMetric tm = random_tree_metric(25, 1.0, rng);
    DistanceEstimate d_pre(25);
    for (int u = 0; u < 25; ++u)
      for (int v = u + 1; v < 25; ++v) d_pre.set(u, v, tm.dist[u][v]);
    WeightedTree out = tree_metric_reconstruction(d_pre, 1.0, 0.0);
    for (int u = 0; u < 25; ++u) {
      auto d = out.distances_from(u);
      for (int v = 0; v < 25; ++v) CHECK(std::fabs(d[v] - tm.dist[u][v]) <= 1e-9);
    }
  }
  {  // three-vertex star with small noise
    Rng rng(67);
    DistanceEstimate d(3);
    d.set(0, 1, 2.0 + 1e-4 * rng.uniform());
    d.set(0, 2, 2.0 + 1e-4 * rng.uniform());
    d.set(1, 2, 2.0 + 1e-4 * rng.uniform());
    WeightedTree out = tree_metric_reconstruction(d, 1.5, 1e-4);
    auto d0 = out.distances_from(0);
    CHECK(std::fabs(d0[1] - 2.0) <= 1e-2);
    CHECK(std::fabs(d0[2] - 2.0) <= 1e-2);
  }
  {  // random instances obey the folded constant
    Rng rng(71);
    double L = 1.0, eps = 1e-4;
    for (int trial = 0; trial < 6; ++trial) {
      RandomTreeMetric tm = random_tree_metric(50, L, rng);
      DistanceEstimate d_pre = noisy_estimate(tm, L, eps, rng);
      WeightedTree out = tree_metric_reconstruction(d_pre, L, eps);
      for (int u = 0; u < 50; ++u) {
        auto got = out.distances_from(u);
        for (int v = u + 1; v < 50; ++v) {
          double d = tm.dist[u][v];
          CHECK(std::fabs(got[v] - d) / (d / L + 1.0) <= 500.0 * eps);
        }
      }
    }
  }
}

TEST_CASE("lca depth identity on generated tree metrics") {
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + rng.uniform_int(0, 12);
    RandomTreeMetric tm = random_tree_metric(n, 1.0, rng);
    // lca of (u, v) with respect to root 0: deepest shared path vertex
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        auto pu = tm.topology.path_vertices(0, u);
        auto pv = tm.topology.path_vertices(0, v);
        int lca = 0;
        for (size_t i = 0; i < std::min(pu.size(), pv.size()); ++i)
          if (pu[i] == pv[i]) lca = pu[i];
        double want = (tm.dist[0][u] + tm.dist[0][v] - tm.dist[u][v]) / 2.0;
        CHECK(std::fabs(tm.dist[0][lca] - want) <= 1e-9);
      }
  }
}
