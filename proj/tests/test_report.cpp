#include <gtest/gtest.h>

#include <random>

#include "coauthor/analysis.hpp"
#include "coauthor/report.hpp"
#include "support.hpp"

using namespace coauthor;
namespace ts = testing_support;

namespace {

FieldData random_field(std::mt19937_64& rng, std::string name, int clusters, int max_size = 80) {
  FieldData f;
  f.name = std::move(name);
  for (int id = 1; id <= clusters; ++id) {
    ClusterRow r;
    r.id = id;
    r.size = 2 + static_cast<int>(rng() % (max_size - 1));
    r.publications = r.size + static_cast<int>(rng() % 50);
    r.size_category = size_category(r.size);
    r.internal_edges = static_cast<std::size_t>(r.size - 1 + rng() % 5);
    r.pi = "Lead" + std::to_string(id) + "_X";
    if (r.size >= 3) {
      std::uniform_real_distribution<double> u(0, 1);
      r.centralization = CentralizationIndices{u(rng), u(rng), u(rng)};
    } else {
      r.centralization_note = "n<3";
    }
    r.hub_count = static_cast<int>(rng() % 4);
    r.hubness = hubness_of(r.hub_count);
    if (rng() % 5) r.age = AgeClass{kAgeCohorts[rng() % 4], rng() % 7 == 0};
    r.geo = std::array{"Europe", "Asia-Europe", "unknown"}[rng() % 3];
    f.clusters.push_back(std::move(r));
  }
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < clusters; ++i) {
    int a = 1 + static_cast<int>(rng() % clusters), b = 1 + static_cast<int>(rng() % clusters);
    if (a == b || !used.insert(std::minmax(a, b)).second) continue;
    InterClusterConnection c;
    c.cluster_a = std::min(a, b);
    c.cluster_b = std::max(a, b);
    c.separator = 1 + static_cast<int>(rng() % 4);
    c.type = c.separator <= 2 ? LinkType::transfer : LinkType::collaboration;
    c.pattern = c.separator == 1 ? LinkPattern::one_one : c.separator == 2 ? LinkPattern::two_by : LinkPattern::mm_B;
    c.total_weight = 1 + static_cast<long long>(rng() % 9);
    f.connections.push_back(std::move(c));
  }
  for (int r = 0; r < 7; ++r) f.roles.counts[r] = static_cast<long long>(rng() % 30);
  for (int r = 0; r < 7; ++r) f.roles.total += f.roles.counts[r];
  for (int r = 0; r < 7; ++r)
    f.roles.fractions[r] = f.roles.total ? static_cast<double>(f.roles.counts[r]) / f.roles.total : 0.0;
  return f;
}

const ShareRow& row(const FieldSummary& s, std::string_view name) {
  for (const auto& r : s.shares)
    if (r.name == name) return r;
  throw std::runtime_error("no row " + std::string(name));
}

}  // namespace

TEST(FieldReport, SharesSumToOneAndMatchCounts) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_field(rng, "F", 3 + static_cast<int>(rng() % 60));
    auto s = summarize_field(f);
    for (const auto& r : s.shares) {
      if (r.total == 0) continue;
      double sum = 0;
      for (double x : r.shares) sum += x;
      EXPECT_NEAR(sum, 1.0, 1e-12) << r.name;
    }
    std::array<long long, 3> sizes{};
    long long aged = 0;
    std::set<int> collaborating;
    for (const auto& c : f.clusters) {
      ++sizes[static_cast<int>(c.size_category)];
      aged += c.age.has_value();
    }
    for (const auto& c : f.connections)
      if (c.type == LinkType::collaboration) collaborating.insert({c.cluster_a, c.cluster_b});
    EXPECT_EQ(row(s, "size").counts, std::vector<long long>(sizes.begin(), sizes.end()));
    EXPECT_EQ(row(s, "age").total, aged);
    EXPECT_EQ(row(s, "collaboration").counts[0], static_cast<long long>(collaborating.size()));
    EXPECT_EQ(row(s, "link_type").total, static_cast<long long>(f.connections.size()));
    EXPECT_EQ(row(s, "hubness").total, static_cast<long long>(f.clusters.size()));
    long long cells = 0;
    for (const auto& line : s.crosstabs[0].counts)
      for (auto v : line) cells += v;
    EXPECT_EQ(cells, static_cast<long long>(f.clusters.size()));
  }
}

TEST(FieldReport, AllSmallField) {
  std::mt19937_64 rng(72);
  auto f = random_field(rng, "tiny", 20, 10);
  auto s = summarize_field(f);
  EXPECT_EQ(row(s, "size").shares, (std::vector<double>{1.0, 0.0, 0.0}));
  ASSERT_FALSE(s.crosstabs[0].test);
  EXPECT_FALSE(s.crosstabs[0].note.empty());
}

TEST(FieldReport, SizePercentilesAndCorrelation) {
  FieldData f;
  f.name = "P";
  for (int i = 1; i <= 9; ++i) {
    ClusterRow r;
    r.id = i;
    r.size = i + 2;
    r.publications = 2 * (i + 2);
    r.size_category = size_category(r.size);
    f.clusters.push_back(r);
  }
  auto s = summarize_field(f);
  EXPECT_EQ(s.sizes.count, 9u);
  EXPECT_EQ(s.sizes.percentiles.min, 3);
  EXPECT_EQ(s.sizes.percentiles.p25, 4.5);
  EXPECT_EQ(s.sizes.percentiles.median, 7);
  EXPECT_EQ(s.sizes.percentiles.p75, 9.5);
  EXPECT_EQ(s.sizes.percentiles.max, 11);
  ASSERT_TRUE(s.size_publication_r);
  EXPECT_NEAR(*s.size_publication_r, 1.0, 1e-12);
}

TEST(FieldReport, CsvCarriesEveryRow) {
  std::mt19937_64 rng(73);
  std::vector<FieldData> fields = {random_field(rng, "A", 40), random_field(rng, "B", 30)};
  auto report = field_report(fields);
  ASSERT_TRUE(report.field_by_hubness);
  auto text = report_csv(report);
  auto rows = csv::parse(text);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"field", "section", "statistic", "category", "value"}));
  std::set<std::tuple<std::string, std::string, std::string, std::string>> keys;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 5u);
    keys.emplace(rows[i][0], rows[i][1], rows[i][2], rows[i][3]);
  }
  for (std::string field : {"A", "B"}) {
    for (auto cat : {"small", "medium", "large"}) EXPECT_TRUE(keys.contains({field, "size", "share", cat}));
    for (auto cat : {"continuous", "recent", "new", "extinct"}) EXPECT_TRUE(keys.contains({field, "age", "share", cat}));
    for (auto cat : {"no-hub", "single-hub", "multi-hub"}) EXPECT_TRUE(keys.contains({field, "hubness", "share", cat}));
    EXPECT_TRUE(keys.contains({field, "collaboration", "share", "collaborating"}));
    EXPECT_TRUE(keys.contains({field, "link_type", "share", "transfer"}));
    EXPECT_TRUE(keys.contains({field, "link_type", "share", "collaboration"}));
    for (auto p : {"min", "p10", "p25", "median", "p75", "p90", "max"})
      EXPECT_TRUE(keys.contains({field, "cluster_size", "percentile", p}));
  }
  EXPECT_TRUE(keys.contains({"all", "field_x_hubness", "chi_square", "statistic"}));
  EXPECT_FALSE(report_text(report).empty());
}

TEST(ClustersCsv, RoundTrip) {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_field(rng, "F", 25);
    auto text = clusters_csv(f.clusters);
    auto back = parse_clusters_csv(text);
    ASSERT_EQ(back.size(), f.clusters.size());
    EXPECT_EQ(clusters_csv(back), text);
    for (std::size_t i = 0; i < back.size(); ++i) {
      EXPECT_EQ(back[i].age, f.clusters[i].age);
      EXPECT_EQ(back[i].centralization.has_value(), f.clusters[i].centralization.has_value());
      if (back[i].centralization) EXPECT_EQ(back[i].centralization->degree, f.clusters[i].centralization->degree);
    }
  }
  EXPECT_THROW(parse_clusters_csv("id,size\n1,2\n"), ParseError);
}

TEST(ConnectionsCsv, RoundTripThroughSummary) {
  auto g = ts::planted_graph(5, 8, 0.5, 3, 4);
  auto clustering = detect_communities(g.net, 4, 3);
  auto fd = analyze_field("X", g.net, clustering, {});
  auto parsed = parse_connections_csv(connections_csv(g.net, fd.connections));
  ASSERT_EQ(parsed.size(), fd.connections.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    EXPECT_EQ(parsed[i].cluster_a, fd.connections[i].cluster_a);
    EXPECT_EQ(parsed[i].separator, fd.connections[i].separator);
    EXPECT_EQ(parsed[i].type, fd.connections[i].type);
    EXPECT_EQ(parsed[i].pattern, fd.connections[i].pattern);
    EXPECT_EQ(parsed[i].total_weight, fd.connections[i].total_weight);
    EXPECT_EQ(parsed[i].pi_link, fd.connections[i].pi_link);
  }
  FieldData reread = fd;
  reread.connections = parsed;
  reread.clusters = parse_clusters_csv(clusters_csv(fd.clusters));
  reread.roles = parse_role_distribution(nodes_csv(g.net, node_profiles(g.net, clustering)));
  EXPECT_EQ(report_csv(field_report(std::span<const FieldData>(&reread, 1))),
            report_csv(field_report(std::span<const FieldData>(&fd, 1))));
}

TEST(ClusterAttributes, StylesFromGeoLabel) {
  std::vector<ClusterRow> rows(3);
  for (int i = 0; i < 3; ++i) rows[i].id = i + 1;
  rows[0].geo = "Europe";
  rows[1].geo = "Asia-Europe";
  auto attrs = cluster_attributes(rows);
  EXPECT_EQ(attrs[0].shape, "circle");
  EXPECT_EQ(attrs[0].color, "blue");
  EXPECT_EQ(attrs[1].shape, "triangle");
  EXPECT_EQ(attrs[2].shape, "box");
}
