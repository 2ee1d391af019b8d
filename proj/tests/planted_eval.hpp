// Runs the analysis pipeline on a synthetic corpus and scores the result
// against its planted ground truth.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "coauthor/cluster.hpp"
#include "coauthor/graph.hpp"
#include "coauthor/ingest.hpp"
#include "coauthor/meso.hpp"
#include "coauthor/synth.hpp"

namespace testing_support {

struct PipelineResult {
  coauthor::Corpus corpus;
  coauthor::CoauthorNetwork net;  // reduced giant component
  coauthor::Clustering clustering;
  std::vector<coauthor::ClusterInfo> clusters;
  std::vector<coauthor::InterClusterConnection> connections;
};

inline PipelineResult run_pipeline(std::vector<coauthor::PublicationRecord> records, std::uint64_t seed = 42,
                                   int trials = 10) {
  using namespace coauthor;
  PipelineResult r;
  r.corpus = filter_corpus(std::move(records)).corpus;
  auto slices = partition_years(r.corpus.first_year, r.corpus.last_year, 3);
  r.net = giant_component(reduce_single_paper_authors(build_network(r.corpus, slices))).net;
  r.clustering = detect_communities(r.net, seed, trials);
  r.clusters = cluster_aggregates(r.net, r.clustering, &r.corpus);
  r.connections = classify_connections(r.net, r.clustering, r.clusters);
  return r;
}

struct EventOutcome {
  coauthor::PlantedEvent event;
  bool groups_recovered = false;  // both groups map one-to-one onto clusters
  std::optional<coauthor::InterClusterConnection> connection;
};

struct Fidelity {
  int groups_exact = 0;  // planted groups whose members form exactly one cluster
  std::vector<EventOutcome> events;
};

/// A group is recovered when all its members in the network share a cluster
/// that holds no other planted member.
inline Fidelity score(const PipelineResult& r, const coauthor::GroundTruth& truth) {
  using namespace coauthor;
  auto membership = truth.membership();
  std::map<int, std::map<int, int>> group_clusters, cluster_groups;
  for (std::size_t v = 0; v < r.net.size(); ++v) {
    auto it = membership.find(r.net.node(static_cast<int>(v)).key);
    if (it == membership.end()) continue;
    ++group_clusters[it->second][r.clustering.cluster_of[v]];
    ++cluster_groups[r.clustering.cluster_of[v]][it->second];
  }
  std::map<int, int> cluster_of_group;
  Fidelity f;
  for (auto& [g, clusters] : group_clusters) {
    if (clusters.size() != 1) continue;
    int c = clusters.begin()->first;
    if (cluster_groups[c].size() != 1) continue;
    cluster_of_group[g] = c;
    ++f.groups_exact;
  }
  std::map<std::pair<int, int>, const InterClusterConnection*> by_pair;
  for (const auto& c : r.connections) by_pair[{c.cluster_a, c.cluster_b}] = &c;
  for (const auto& e : truth.events) {
    EventOutcome o;
    o.event = e;
    auto a = cluster_of_group.find(e.group_a), b = cluster_of_group.find(e.group_b);
    o.groups_recovered = a != cluster_of_group.end() && b != cluster_of_group.end();
    if (o.groups_recovered) {
      auto it = by_pair.find(std::minmax(a->second, b->second));
      if (it != by_pair.end()) o.connection = *it->second;
    }
    f.events.push_back(std::move(o));
  }
  return f;
}

}  // namespace testing_support
