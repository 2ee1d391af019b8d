#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "coauthor/geo.hpp"

using namespace coauthor;

namespace {

CountryTable shipped_table() {
  std::ifstream in(COAUTHOR_CONFIG_DIR "/continents.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  return CountryTable::parse(ss.str());
}

const CountryTable& table() {
  static const CountryTable t = shipped_table();
  return t;
}

}  // namespace

TEST(ContinentAffiliation, RuleCases) {
  EXPECT_EQ(continent_affiliation({{"GERMANY", 10}, {"FRANCE", 4}}, table()).text(), "Europe");
  EXPECT_EQ(continent_affiliation({{"CHINA", 10}, {"GERMANY", 5}}, table()).text(), "Asia-Europe");
  EXPECT_EQ(continent_affiliation({{"USA", 10}, {"CANADA", 9}}, table()).text(), "NorthAmerica");
  EXPECT_EQ(continent_affiliation({{"CHINA", 10}, {"GERMANY", 4}}, table()).text(), "Asia");
  EXPECT_EQ(continent_affiliation({{"GERMANY", 10}, {"CHINA", 5}}, table()).text(), "Asia-Europe");
}

TEST(ContinentAffiliation, UnknownAndTies) {
  EXPECT_EQ(continent_affiliation({}, table()).kind, GeoLabel::Kind::unknown);
  EXPECT_EQ(continent_affiliation({{"ATLANTIS", 7}}, table()).text(), "unknown");
  // unknown countries are ignored, so the runner-up here is FRANCE
  EXPECT_EQ(continent_affiliation({{"ATLANTIS", 50}, {"JAPAN", 10}, {"FRANCE", 6}}, table()).text(), "Asia-Europe");
  // equal top counts on different continents
  EXPECT_EQ(continent_affiliation({{"BRAZIL", 3}, {"EGYPT", 3}}, table()).text(), "Africa-SouthAmerica");
}

TEST(ContinentAffiliation, ScaleInvariance) {
  const std::vector<std::string> names = {"GERMANY", "FRANCE", "CHINA", "JAPAN",  "USA",
                                          "CANADA",  "BRAZIL", "EGYPT", "AUSTRALIA", "ATLANTIS"};
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 2000; ++trial) {
    CountryCounts counts;
    int k = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < k; ++i) counts[names[rng() % names.size()]] += 1 + static_cast<long long>(rng() % 20);
    auto base = continent_affiliation(counts, table());
    for (long long factor : {2LL, 3LL, 7LL, 1000LL}) {
      CountryCounts scaled;
      for (auto& [c, n] : counts) scaled[c] = n * factor;
      ASSERT_EQ(continent_affiliation(scaled, table()), base);
    }
  }
}

TEST(ContinentAffiliation, ThresholdOracle) {
  // top country fixed at 10 on Asia; the runner-up on Europe sweeps 0..10
  for (long long r = 0; r <= 10; ++r) {
    CountryCounts counts = {{"CHINA", 10}};
    if (r > 0) counts["FRANCE"] = r;
    auto label = continent_affiliation(counts, table());
    EXPECT_EQ(label.kind, 2 * r >= 10 ? GeoLabel::Kind::mixed : GeoLabel::Kind::single) << r;
  }
}

TEST(CountryTable, ParsingAndErrors) {
  auto t = CountryTable::parse("# comment\ngermany , Europe\nNew   Zealand,Oceania\n");
  EXPECT_EQ(t.continent("GERMANY"), "Europe");
  EXPECT_EQ(t.continent("new zealand"), "Oceania");
  EXPECT_EQ(t.continent("MARS"), "");
  EXPECT_THROW(CountryTable::parse("GERMANY,Atlantis\n"), ParseError);
  EXPECT_THROW(CountryTable::parse("GERMANY\n"), ParseError);
  EXPECT_GT(table().size(), 100u);
}

TEST(ClusterCountryCounts, Multiset) {
  PublicationRecord p1{"p1", 2000, {AuthorKey::from_text("A"), AuthorKey::from_text("B")}, {"GERMANY", "GERMANY"}, 3};
  PublicationRecord p2{"p2", 2001, {AuthorKey::from_text("A"), AuthorKey::from_text("B")}, {"GERMANY", "GERMANY"}, 3};
  auto corpus = Corpus::from_records({p1, p2});
  auto net = build_network(corpus);
  Clustering c;
  c.cluster_of = {1, 1};
  c.cluster_count = 1;
  auto info = cluster_aggregates(net, c, &corpus);
  AuthorRecordIndex index(corpus);
  auto counts = cluster_country_counts(info[0], net, index);
  EXPECT_EQ(counts, (CountryCounts{{"GERMANY", 4}}));

  PublicationRecord q{"q", 2000, {AuthorKey::from_text("A"), AuthorKey::from_text("B")}, {}, 3};
  auto bare = Corpus::from_records({q});
  AuthorRecordIndex bare_index(bare);
  auto none = cluster_country_counts(info[0], net, bare_index);
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(continent_affiliation(none, table()).text(), "unknown");
}

TEST(GeoStyle, ShapesAndColours) {
  GeoLabel single{GeoLabel::Kind::single, {"Europe"}};
  GeoLabel mixed{GeoLabel::Kind::mixed, {"Asia", "Europe"}};
  EXPECT_EQ(geo_style(single).shape, "circle");
  EXPECT_EQ(geo_style(single).color, "blue");
  EXPECT_EQ(geo_style(mixed).shape, "triangle");
  EXPECT_EQ(geo_style(GeoLabel{}).shape, "box");
}
