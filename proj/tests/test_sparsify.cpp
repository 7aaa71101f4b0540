#include <gtest/gtest.h>

#include <algorithm>
#include <iostream>
#include <set>
#include <vector>

#include "ftc/sparsify.hpp"
#include "support/oracles.hpp"

namespace ftc {
namespace {

using testing::Rng;

TEST(MapEdges, K3) {
  const Graph g(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto aux = subdivide(g, build_spanning_tree(g));
  const auto c = euler_coordinates(aux.tree);
  // Tour: 0-1 (1), 1-2 (2), 2-1 (3), 1-0 (4), 0-3 (5), 3-0 (6).
  EXPECT_EQ(c(2), 2u);
  EXPECT_EQ(c(3), 5u);
  const auto pts = map_edges(c, aux.nontree);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], (PlanePoint{2, 5, 0}));
  EXPECT_TRUE(map_edges(c, {}).empty());
}

TEST(MapEdges, DistinctPointsWithinRange) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_connected_graph(rng, 25, 70);
    const auto aux = subdivide(g, build_spanning_tree(g));
    const auto pts = map_edges(euler_coordinates(aux.tree), aux.nontree);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& p : pts) {
      EXPECT_LT(p.x, p.y);
      EXPECT_LE(p.y, 2 * aux.tree.size() - 2);
      EXPECT_TRUE(seen.insert({p.x, p.y}).second);
    }
  }
}

// An edge leaves S exactly when its point lies in an odd number of the
// coordinate strips [c(v), up(v)) of the tree edges on the boundary of S,
// counting the x and y coordinates separately.
TEST(MapEdges, BoundaryIsOddCoverageRegion) {
  Rng rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    const Graph g = testing::random_connected_graph(rng, 30, 80);
    const auto aux = subdivide(g, build_spanning_tree(g));
    const auto c = euler_coordinates(aux.tree);
    const auto pts = map_edges(c, aux.nontree);
    for (const auto& s : testing::tree_cut_sets(rng, aux.tree, 4, 40, false)) {
      std::vector<vertex_id> boundary;
      for (vertex_id v = 0; v < aux.tree.size(); ++v) {
        if (v != aux.tree.root() && s[v] != s[aux.tree.parent(v)]) boundary.push_back(v);
      }
      for (std::size_t e = 0; e < pts.size(); ++e) {
        const bool crossing = s[aux.nontree[e].midpoint] != s[aux.nontree[e].far];
        int coverage = 0;
        for (const auto v : boundary) {
          coverage += (pts[e].x >= c(v) && pts[e].x < c.up[v]) ? 1 : 0;
          coverage += (pts[e].y >= c(v) && pts[e].y < c.up[v]) ? 1 : 0;
        }
        EXPECT_EQ(crossing, coverage % 2 == 1);
      }
    }
  }
}

TEST(ThreeSidedNet, Examples) {
  Rng rng(8);
  const auto pts = testing::random_points(rng, 40, 100);
  const auto net = three_sided_net(pts, Anchor::right, 1.0);
  EXPECT_LE(net.size(), 4u);
  EXPECT_FALSE(net.empty());
  EXPECT_TRUE(three_sided_net({}, Anchor::left, 0.5).empty());
  EXPECT_THROW(three_sided_net(pts, Anchor::left, 0.0), config_error);
  EXPECT_THROW(three_sided_net(pts, Anchor::left, 1.5), config_error);

  // All points on one horizontal line.
  std::vector<PlanePoint> line;
  for (std::uint32_t i = 0; i < 16; ++i) line.push_back({i, 50, i});
  const auto lnet = three_sided_net(line, Anchor::right, 0.5);
  EXPECT_EQ(testing::missed_anchored(line, lnet, Anchor::right, 8.0), 0u);
  EXPECT_LE(lnet.size(), 8u);
}

TEST(ThreeSidedNet, BruteForceHitting) {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = testing::uniform(rng, 1, 64);
    const auto pts = testing::random_points(rng, n, testing::uniform(rng, 4, 80));
    const double eps = std::uniform_real_distribution<double>(0.02, 1.0)(rng);
    for (const auto anchor : {Anchor::left, Anchor::right}) {
      const auto net = three_sided_net(pts, anchor, eps);
      EXPECT_LE(static_cast<double>(net.size()), 8.0 / eps);
      EXPECT_EQ(testing::missed_anchored(pts, net, anchor, eps * n), 0u);
    }
  }
}

TEST(NetFind, BaseCase) {
  Rng rng(1);
  const auto pts = testing::random_points(rng, 24, 50);
  EXPECT_TRUE(netfind(pts, 64).empty());  // 24 <= 4 * 6
  EXPECT_TRUE(netfind({}, 1).empty());
}

TEST(NetFind, HalvingAtNEqualsSize) {
  Rng rng(2);
  for (const std::uint32_t n : {50u, 100u, 200u, 400u, 800u, 1500u, 3000u}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto pts = testing::random_points(rng, n, 2 * n);
      const auto net = netfind(pts, n);
      EXPECT_LE(net.size(), (n + 1) / 2) << n;
      EXPECT_TRUE(std::is_sorted(net.begin(), net.end(),
                                 [](const PlanePoint& a, const PlanePoint& b) { return a.payload < b.payload; }));
      for (const auto& p : net) EXPECT_EQ(p, pts[p.payload]);
    }
  }
}

TEST(NetFind, DefaultHittingOnLargeSets) {
  Rng rng(3);
  // Large enough that rectangles with 32·⌈log2 N⌉ points exist.
  const auto pts = testing::random_points(rng, 700, 60);
  const auto net = netfind(pts, pts.size());
  const NetFindConfig cfg;
  EXPECT_FALSE(net.empty());
  EXPECT_EQ(testing::missed_rectangles(pts, net, static_cast<int>(cfg.hitting_threshold(pts.size()))), 0u);
}

TEST(NetFind, ScaledConstantsBruteForce) {
  Rng rng(5);
  const NetFindConfig cfg{1, 2, NetBackend::slab};
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = testing::uniform(rng, 2, 64);
    const auto pts = testing::random_points(rng, n, testing::uniform(rng, 6, 70));
    const auto net = netfind(pts, n, cfg);
    EXPECT_EQ(testing::missed_rectangles(pts, net, static_cast<int>(cfg.hitting_threshold(n))), 0u);
  }
}

TEST(NetFind, OptimalBackendIsUnavailable) {
  const NetFindConfig cfg{4, 16, NetBackend::optimal};
  EXPECT_THROW(netfind({}, 1, cfg), config_error);
  EXPECT_THROW(build_hierarchy_det({}, 1, 4, 32, cfg), config_error);
}

TEST(Hierarchy, DeterministicExamples) {
  const auto empty = build_hierarchy_det({}, 2, 10);
  EXPECT_EQ(empty.h(), 0u);
  ASSERT_EQ(empty.levels.size(), 1u);
  EXPECT_TRUE(empty.levels[0].empty());
  EXPECT_EQ(empty.threshold, 32u * 25u * 4u);

  Rng rng(6);
  const auto few = testing::random_points(rng, 20, 40);
  const auto h1 = build_hierarchy_det(few, 1, 100);
  EXPECT_EQ(h1.h(), 1u);
  EXPECT_EQ(h1.levels[0].size(), 20u);
  EXPECT_TRUE(h1.levels[1].empty());
}

TEST(Hierarchy, DeterministicHalvingOnRandomGraphs) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = testing::uniform(rng, 20, 200);
    const Graph g = testing::random_connected_graph(rng, n, testing::uniform(rng, n, 3000));
    const auto aux = subdivide(g, build_spanning_tree(g));
    const auto pts = map_edges(euler_coordinates(aux.tree), aux.nontree);
    const auto hier = build_hierarchy_det(pts, 2, aux.tree.size());
    EXPECT_TRUE(hier.levels.back().empty());
    for (std::size_t i = 0; i + 1 < hier.levels.size(); ++i) {
      EXPECT_LE(hier.levels[i + 1].size(), (hier.levels[i].size() + 1) / 2);
      EXPECT_TRUE(std::includes(hier.levels[i].begin(), hier.levels[i].end(), hier.levels[i + 1].begin(),
                                hier.levels[i + 1].end()));
    }
    EXPECT_LE(hier.h(), ceil_log2(g.edge_count()) + 1);
  }
}

TEST(Hierarchy, RandomizedIsSeededAndShrinks) {
  Rng rng(8);
  const auto pts = testing::random_points(rng, 5000, 20000);
  const auto a = build_hierarchy_rand(pts, 2, 4000, 99);
  const auto b = build_hierarchy_rand(pts, 2, 4000, 99);
  const auto c = build_hierarchy_rand(pts, 2, 4000, 100);
  EXPECT_EQ(a.levels, b.levels);
  EXPECT_NE(a.levels, c.levels);
  EXPECT_EQ(a.threshold, 5u * 2u * 12u);
  EXPECT_TRUE(a.levels.back().empty());
  for (std::size_t i = 0; i + 1 < a.levels.size(); ++i) {
    if (a.levels[i].size() <= a.threshold) {
      EXPECT_TRUE(a.levels[i + 1].empty());
    } else {
      EXPECT_LE(4 * a.levels[i + 1].size(), 3 * a.levels[i].size());
    }
  }
  const auto small = build_hierarchy_rand(testing::random_points(rng, 30, 50), 1, 100, 1);
  EXPECT_EQ(small.h(), 1u);
}

TEST(Goodness, ExhaustiveSingleCutsOnSmallGraphs) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = testing::uniform(rng, 10, 60);
    const Graph g = testing::random_connected_graph(rng, n, testing::uniform(rng, n, 4 * n));
    const auto aux = subdivide(g, build_spanning_tree(g));
    const auto pts = map_edges(euler_coordinates(aux.tree), aux.nontree);
    for (std::uint32_t f = 1; f <= 3; ++f) {
      const auto sets = testing::tree_cut_sets(rng, aux.tree, f, 100, f == 1);
      const auto hier = build_hierarchy_det(pts, f, aux.tree.size());
      EXPECT_EQ(verify_goodness(hier, aux.nontree, sets).violations, 0u);
      // Scaled net constants, with the matching threshold constant.
      const auto scaled = build_hierarchy_det(pts, f, aux.tree.size(), 4, NetFindConfig{1, 2, NetBackend::slab});
      EXPECT_EQ(verify_goodness(scaled, aux.nontree, sets).violations, 0u);
    }
  }
}

// Randomized hierarchies are good only with high probability, so violations
// are recorded as a property rather than asserted.
TEST(Goodness, RandomizedAuditIsRecorded) {
  Rng rng(10);
  const Graph g = testing::random_connected_graph(rng, 60, 600);
  const auto aux = subdivide(g, build_spanning_tree(g));
  const auto pts = map_edges(euler_coordinates(aux.tree), aux.nontree);
  const auto sets = testing::tree_cut_sets(rng, aux.tree, 3, 500, true);
  std::size_t violations = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto hier = build_hierarchy_rand(pts, 3, aux.tree.size(), seed);
    violations += verify_goodness(hier, aux.nontree, sets).violations;
  }
  RecordProperty("randomized_violations", static_cast<int>(violations));
  std::cout << "randomized goodness violations over 10 seeds: " << violations << "\n";
}

TEST(Goodness, DetectsABrokenHierarchy) {
  // Two levels where the top level misses a large boundary.
  Hierarchy hier;
  hier.levels = {{0, 1, 2}, {}};
  hier.threshold = 2;
  const std::vector<NonTreeHalf> nontree{{0, 1, 0}, {0, 2, 1}, {0, 3, 2}};
  const std::vector<std::vector<bool>> sets{{true, false, false, false}, {true, true, true, true}};
  const auto report = verify_goodness(hier, nontree, sets);
  EXPECT_EQ(report.violations, 1u);
  EXPECT_EQ(report.tight_threshold, 3u);
}

}  // namespace
}  // namespace ftc
