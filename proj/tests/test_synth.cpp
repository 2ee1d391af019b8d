#include <gtest/gtest.h>

#include "coauthor/synth.hpp"
#include "planted_eval.hpp"

using namespace coauthor;
namespace ts = testing_support;

namespace {

PlantedSpec small_spec(int groups) {
  PlantedSpec s;
  s.seed = 5;
  s.groups = groups;
  s.size_min = 8;
  s.size_max = 10;
  s.structures = {GroupStructure::star};
  s.guest_share = 0;
  return s;
}

}  // namespace

TEST(Synth, Deterministic) {
  auto s = small_spec(6);
  s.structures = {GroupStructure::star, GroupStructure::multi_hub, GroupStructure::hubless};
  s.random_migrations = 2;
  s.random_collaborations = 2;
  s.random_collaborations_with_pi = 1;
  auto a = generate(s), b = generate(s);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(write_ground_truth(a.truth), write_ground_truth(b.truth));
  s.seed = 6;
  EXPECT_NE(generate(s).records, a.records);
}

TEST(Synth, RecordsSatisfyCorpusInvariants) {
  auto s = small_spec(8);
  s.random_migrations = 3;
  auto c = generate(s);
  std::set<std::string> ids;
  for (const auto& r : c.records) {
    EXPECT_TRUE(ids.insert(r.id).second);
    EXPECT_GE(r.authors.size(), 2u);
    EXPECT_GE(r.n_references, s.min_references);
    EXPECT_LE(r.n_references, s.max_references);
    EXPECT_GE(r.year, s.first_year);
    EXPECT_LE(r.year, s.last_year);
  }
  EXPECT_EQ(filter_corpus(c.records).corpus.records.size(), c.records.size());
}

TEST(Synth, ValidationErrors) {
  auto s = small_spec(3);
  s.migrations = {{1, 4}};
  EXPECT_THROW(generate(s), Error);
  s.migrations = {{2, 2}};
  EXPECT_THROW(generate(s), Error);
  s.migrations = {{1, 2}};
  s.collaborations = {{2, 1, true}};
  EXPECT_THROW(generate(s), Error);
  s.collaborations.clear();
  s.random_migrations = 3;
  EXPECT_THROW(generate(s), Error);
  auto t = small_spec(3);
  t.size_min = 3;
  EXPECT_THROW(generate(t), Error);
  t = small_spec(3);
  t.last_year = t.first_year + 1;
  EXPECT_THROW(generate(t), Error);
}

TEST(Synth, SpecParsing) {
  auto s = parse_planted_spec(
      "# comment\nseed = 9\ngroups = 4\nstructures = star, hubless\nmigration = 1,2\n"
      "collaboration = 3,4,pi\ncountries = FRANCE, JAPAN\n");
  EXPECT_EQ(s.seed, 9u);
  EXPECT_EQ(s.groups, 4);
  EXPECT_EQ(s.structures, (std::vector<GroupStructure>{GroupStructure::star, GroupStructure::hubless}));
  ASSERT_EQ(s.migrations.size(), 1u);
  ASSERT_EQ(s.collaborations.size(), 1u);
  EXPECT_TRUE(s.collaborations[0].pi_link);
  EXPECT_EQ(s.countries, (std::vector<std::string>{"FRANCE", "JAPAN"}));
  EXPECT_THROW(parse_planted_spec("colour = red\n"), ParseError);
  EXPECT_THROW(parse_planted_spec("collaboration = 1,2,maybe\n"), ParseError);
  EXPECT_THROW(parse_planted_spec("groups = many\n"), ParseError);
}

TEST(Synth, MigrationBetweenStarsIsOneToMany) {
  auto s = small_spec(2);
  s.migrations = {{1, 2}};
  auto c = generate(s);
  auto r = ts::run_pipeline(c.records);
  auto f = ts::score(r, c.truth);
  EXPECT_EQ(f.groups_exact, 2);
  ASSERT_EQ(f.events.size(), 1u);
  ASSERT_TRUE(f.events[0].connection);
  EXPECT_EQ(f.events[0].connection->type, LinkType::transfer);
  EXPECT_EQ(f.events[0].connection->pattern, LinkPattern::one_many);
}

TEST(Synth, CollaborationWithLeadsIsMmA) {
  for (bool pi : {true, false}) {
    auto s = small_spec(2);
    s.collaborations = {{1, 2, pi}};
    auto c = generate(s);
    auto f = ts::score(ts::run_pipeline(c.records), c.truth);
    ASSERT_EQ(f.events.size(), 1u);
    ASSERT_TRUE(f.events[0].connection) << pi;
    EXPECT_EQ(f.events[0].connection->type, LinkType::collaboration);
    EXPECT_EQ(f.events[0].connection->pattern, pi ? LinkPattern::mm_A : LinkPattern::mm_B);
  }
}

TEST(Synth, NoEventsGivesOneComponentPerGroup) {
  auto s = small_spec(10);
  s.structures = {GroupStructure::star, GroupStructure::multi_hub, GroupStructure::hubless};
  auto c = generate(s);
  auto corpus = filter_corpus(c.records).corpus;
  auto net = reduce_single_paper_authors(build_network(corpus));
  int components = 0;
  connected_components(net, &components);
  EXPECT_EQ(components, 10);
  auto clustering = detect_communities(net, 1, 5);
  std::vector<int> truth_labels;
  auto membership = c.truth.membership();
  for (std::size_t v = 0; v < net.size(); ++v) truth_labels.push_back(membership.at(net.node(static_cast<int>(v)).key));
  EXPECT_DOUBLE_EQ(normalized_mutual_information(clustering.cluster_of, truth_labels), 1.0);
}

TEST(Synth, GroundTruthRoundTrip) {
  auto s = small_spec(6);
  s.random_migrations = 2;
  s.random_collaborations = 2;
  s.random_collaborations_with_pi = 1;
  auto truth = generate(s).truth;
  auto text = write_ground_truth(truth);
  auto back = parse_ground_truth(text);
  EXPECT_EQ(write_ground_truth(back), text);
  ASSERT_EQ(back.groups.size(), truth.groups.size());
  ASSERT_EQ(back.events.size(), truth.events.size());
  for (std::size_t i = 0; i < truth.groups.size(); ++i) {
    EXPECT_EQ(back.groups[i].members, truth.groups[i].members);
    EXPECT_EQ(back.groups[i].active, truth.groups[i].active);
  }
  EXPECT_EQ(back.membership(), truth.membership());
}

TEST(Synth, LeadAuthorHasMostPapers) {
  auto s = small_spec(6);
  s.structures = {GroupStructure::star, GroupStructure::multi_hub, GroupStructure::hubless};
  auto c = generate(s);
  std::map<AuthorKey, int> papers;
  for (const auto& r : c.records)
    for (const auto& a : r.authors) ++papers[a];
  for (const auto& g : c.truth.groups)
    for (std::size_t i = 1; i < g.members.size(); ++i)
      EXPECT_GE(papers[g.members[0]], papers[g.members[i]] + 2);
}
