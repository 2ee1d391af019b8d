#include <gtest/gtest.h>

#include <random>

#include "coauthor/metrics.hpp"
#include "support.hpp"

using namespace coauthor;
namespace ts = testing_support;

namespace {

Clustering clustering_of(std::vector<int> ids) {
  Clustering c;
  c.cluster_count = *std::max_element(ids.begin(), ids.end());
  c.cluster_of = std::move(ids);
  return c;
}

// Betweenness by enumerating every shortest path between every pair.
std::vector<double> betweenness_oracle(const CoauthorNetwork& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::vector<int>> dist(n);
  for (int s = 0; s < n; ++s) dist[s] = bfs_distances(g, s);
  std::vector<double> b(n, 0.0);
  // paths[s][t]: number of shortest s-t paths, by DP over distance layers
  std::vector<std::vector<double>> paths(n, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return dist[s][x] < dist[s][y]; });
    paths[s][s] = 1;
    for (int v : order) {
      if (v == s || dist[s][v] < 0) continue;
      for (const auto& nb : g.neighbors(v))
        if (dist[s][nb.node] == dist[s][v] - 1) paths[s][v] += paths[s][nb.node];
    }
  }
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      if (dist[s][t] <= 0) continue;
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t || dist[s][v] < 0 || dist[v][t] < 0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t]) b[v] += paths[s][v] * paths[v][t] / paths[s][t];
      }
    }
  return b;
}

}  // namespace

TEST(Centralization, StarIsOneCycleIsZero) {
  for (int n = 3; n <= 50; ++n) {
    auto s = centralization(ts::star(n)).indices;
    EXPECT_NEAR(s.degree, 1.0, 1e-12) << n;
    EXPECT_NEAR(s.closeness, 1.0, 1e-12) << n;
    EXPECT_NEAR(s.betweenness, 1.0, 1e-12) << n;
    auto c = centralization(ts::cycle(n)).indices;
    EXPECT_NEAR(c.degree, 0.0, 1e-12);
    EXPECT_NEAR(c.closeness, 0.0, 1e-12);
    EXPECT_NEAR(c.betweenness, 0.0, 1e-12);
  }
  auto k = centralization(ts::complete(7)).indices;
  EXPECT_NEAR(k.degree + k.closeness + k.betweenness, 0.0, 1e-12);
}

TEST(Centralization, PathOfFour) {
  auto p = centralization(ts::path(4)).indices;
  EXPECT_NEAR(p.degree, 1.0 / 3.0, 1e-12);
  // closeness: 3/6, 3/4, 3/4, 3/6 -> sum of gaps 0.5, star max 3*2/5
  EXPECT_NEAR(p.closeness, 0.5 / (6.0 / 5.0), 1e-12);
  // betweenness: 0, 2, 2, 0 over 3 -> gaps 4/3, star max 3
  EXPECT_NEAR(p.betweenness, (4.0 / 3.0) / 3.0, 1e-12);
}

TEST(Centralization, ErrorsAndLargestComponent) {
  EXPECT_THROW(centralization(ts::path(2)), Error);
  auto g = ts::graph(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}});
  auto r = centralization(g);
  EXPECT_TRUE(r.disconnected);
  EXPECT_EQ(r.nodes_used, 5);
  EXPECT_NEAR(r.indices.degree, 1.0, 1e-12);
}

TEST(Centralization, RangeOnRandomConnectedGraphs) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + static_cast<int>(rng() % 20);
    auto g = ts::random_connected_graph(n, 0.15, rng);
    auto c = centralization(g).indices;
    for (double v : {c.degree, c.closeness, c.betweenness}) {
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(Betweenness, MatchesPathEnumeration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 14);
    auto g = ts::random_graph(n, 0.3, rng);
    auto fast = betweenness(g), slow = betweenness_oracle(g);
    for (int v = 0; v < n; ++v) ASSERT_NEAR(fast[v], slow[v], 1e-9) << trial << " " << v;
  }
}

TEST(Roles, PaperExamples) {
  EXPECT_EQ(assign_role(0, 0), NodeRole::R1);
  EXPECT_EQ(assign_role(3.0, 0.1), NodeRole::R5);
  EXPECT_EQ(assign_role(2.5, 0.75), NodeRole::R6);
  EXPECT_THROW(assign_role(0, 1.2), Error);
  EXPECT_THROW(assign_role(0, -0.1), Error);
  EXPECT_THROW(assign_role(std::nan(""), 0.1), Error);
}

TEST(Roles, GridAgainstRegionTable) {
  // Region bounds written as (z_hub, P upper bound inclusive).
  struct Region {
    bool hub;
    double p_hi;
    NodeRole role;
  };
  const Region regions[] = {{false, 0.05, NodeRole::R1}, {false, 0.62, NodeRole::R2}, {false, 0.80, NodeRole::R3},
                            {false, 1.00, NodeRole::R4}, {true, 0.30, NodeRole::R5},  {true, 0.75, NodeRole::R6},
                            {true, 1.00, NodeRole::R7}};
  auto expected = [&](double z, double p) {
    bool hub = z >= 2.5;
    for (const auto& r : regions)
      if (r.hub == hub && p <= r.p_hi) return r.role;
    return NodeRole::R7;
  };
  std::vector<double> ps = {0.0, 0.05, 0.62, 0.80, 0.30, 0.75, 1.0};
  for (int i = 0; i <= 1000; ++i) ps.push_back(i / 1000.0);
  for (double b : {0.05, 0.62, 0.80, 0.30, 0.75}) {
    ps.push_back(std::nextafter(b, 0.0));
    ps.push_back(std::nextafter(b, 1.0));
  }
  std::vector<double> zs = {-3, -1, 0, 1, 2.4, 2.5, std::nextafter(2.5, 0.0), 2.6, 5, 40};
  int mismatches = 0;
  for (double z : zs)
    for (double p : ps) mismatches += assign_role(z, p) != expected(z, p);
  EXPECT_EQ(mismatches, 0);
}

TEST(Participation, FormulaExamples) {
  // node 0: links to 1, 2 (own cluster) and 3, 4 (cluster 2)
  auto g = ts::graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_DOUBLE_EQ(participation_coefficient(0, g, clustering_of({1, 1, 1, 2, 2})), 0.5);
  auto h = ts::graph(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_NEAR(participation_coefficient(0, h, clustering_of({1, 2, 3, 4})), 2.0 / 3.0, 1e-15);
  auto k = ts::star(7);
  EXPECT_EQ(participation_coefficient(0, k, clustering_of({1, 1, 1, 1, 1, 1, 1})), 0.0);
  auto iso = ts::graph(3, {{0, 1}});
  auto profiles = node_profiles(iso, clustering_of({1, 1, 2}));
  EXPECT_TRUE(profiles[2].isolated);
  EXPECT_EQ(profiles[2].p, 0.0);
}

TEST(WithinModuleZ, Examples) {
  auto s = ts::star(5);  // internal degrees 4,1,1,1,1
  auto c = clustering_of({1, 1, 1, 1, 1});
  EXPECT_NEAR(within_module_z(0, s, c), 2.0, 1e-12);
  EXPECT_NEAR(node_profiles(s, c)[0].z, 2.0, 1e-12);
  auto cyc = ts::cycle(6);
  for (const auto& p : node_profiles(cyc, clustering_of({1, 1, 1, 1, 1, 1}))) EXPECT_EQ(p.z, 0.0);
  auto pair = ts::graph(2, {{0, 1}});
  for (const auto& p : node_profiles(pair, clustering_of({1, 1}))) EXPECT_EQ(p.z, 0.0);
}

TEST(WithinModuleZ, StandardizedPerCluster) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = ts::random_graph(40, 0.15, rng);
    std::vector<int> ids(40);
    for (auto& id : ids) id = 1 + static_cast<int>(rng() % 3);
    auto c = clustering_of(canonical_labels(ids));
    auto profiles = node_profiles(g, c);
    for (const auto& members : c.members()) {
      double sum = 0, sq = 0;
      bool all_zero = true;
      for (int v : members) {
        sum += profiles[v].z;
        sq += profiles[v].z * profiles[v].z;
        all_zero = all_zero && profiles[v].z == 0;
        EXPECT_NEAR(profiles[v].z, within_module_z(v, g, c), 1e-9);
        EXPECT_NEAR(profiles[v].p, participation_coefficient(v, g, c), 1e-12);
        EXPECT_EQ(profiles[v].role, assign_role(profiles[v].z, profiles[v].p));
      }
      const double n = static_cast<double>(members.size());
      EXPECT_NEAR(sum / n, 0.0, 1e-9);
      if (!all_zero) EXPECT_NEAR(sq / n, 1.0, 1e-9);
    }
  }
}

TEST(RoleDistribution, IsolatedCliquesArePeripheral) {
  std::vector<std::pair<int, int>> e;
  for (int base : {0, 4, 8})
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) e.emplace_back(base + i, base + j);
  auto g = ts::graph(12, e);
  auto d = role_distribution(g, clustering_of({1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3}));
  EXPECT_EQ(d.counts[0], 12);
  EXPECT_EQ(d.fractions[0], 1.0);
  EXPECT_EQ(d.total, 12);
}

TEST(RoleDistribution, MatchesPerNodeRoles) {
  auto g = ts::planted_graph(2, 12, 0.3, 3, 5);
  auto c = clustering_of(std::vector<int>(g.group.begin(), g.group.end()));
  for (auto& id : c.cluster_of) ++id;
  c.cluster_count = 2;
  auto profiles = node_profiles(g.net, c);
  auto d = role_distribution(profiles);
  std::array<long long, 7> counts{};
  for (const auto& p : profiles) ++counts[static_cast<int>(assign_role(p.z, p.p))];
  EXPECT_EQ(d.counts, counts);
  double total = 0;
  for (double f : d.fractions) total += f;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Hubness, Cases) {
  EXPECT_EQ(hubness_of(0), Hubness::none);
  EXPECT_EQ(hubness_of(1), Hubness::single);
  EXPECT_EQ(hubness_of(2), Hubness::multi);
  EXPECT_EQ(hubness_of(5), Hubness::multi);

  ClusterInfo info;
  info.members = {0, 1, 2};
  std::vector<NodeRoleProfile> p(3);
  EXPECT_EQ(cluster_hubness(info, p).value, Hubness::none);
  p[1].z = 3.0;
  p[1].role = NodeRole::R5;
  auto h = cluster_hubness(info, p);
  EXPECT_EQ(h.value, Hubness::single);
  EXPECT_EQ(h.hub_count, 1);
  p[1].role = p[2].role = NodeRole::R6;
  p[2].z = 2.5;
  EXPECT_EQ(cluster_hubness(info, p).value, Hubness::multi);
}

TEST(NodesCsv, Header) {
  auto g = ts::star(4);
  auto c = clustering_of({1, 1, 1, 1});
  auto csv_text = nodes_csv(g, node_profiles(g, c));
  EXPECT_EQ(csv_text.substr(0, csv_text.find('\n')), "key,cluster,k_in,k,z,P,role");
  EXPECT_EQ(std::count(csv_text.begin(), csv_text.end(), '\n'), 5);
}
