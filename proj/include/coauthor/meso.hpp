// Inter-cluster connections: bridge edges between cluster pairs, the minimum
// author separator of each bridge, transfer/collaboration classification with
// structural patterns, and the two cluster-level networks built from them.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coauthor/cluster.hpp"
#include "coauthor/graph.hpp"

namespace coauthor {

/// Co-author link crossing two clusters. `a` lies in the lower-id cluster.
struct BridgeEdge {
  int a = 0;
  int b = 0;
  int weight = 1;

  friend bool operator==(const BridgeEdge&, const BridgeEdge&) = default;
  friend auto operator<=>(const BridgeEdge&, const BridgeEdge&) = default;
};

using ClusterPair = std::pair<int, int>;  // first < second
using BridgeMap = std::map<ClusterPair, std::vector<BridgeEdge>>;

/// Buckets every inter-cluster edge by its (lower, higher) cluster pair.
inline BridgeMap bridge_edges(const CoauthorNetwork& net, const Clustering& clustering) {
  if (clustering.cluster_of.size() != net.size()) throw Error("clustering does not match network");
  BridgeMap out;
  for (const auto& e : net.edges()) {
    int ca = clustering.cluster_of[e.a], cb = clustering.cluster_of[e.b];
    if (ca == cb) continue;
    if (ca < cb)
      out[{ca, cb}].push_back({e.a, e.b, e.weight});
    else
      out[{cb, ca}].push_back({e.b, e.a, e.weight});
  }
  for (auto& [pair, list] : out) std::sort(list.begin(), list.end());
  return out;
}

/// Size of a maximum matching in the bipartite bridge graph, which equals the
/// minimum number of authors whose removal deletes every bridge edge.
inline int separator_size(std::span<const BridgeEdge> bridge) {
  if (bridge.empty()) throw Error("empty bridge");
  std::map<int, int> left_id, right_id;
  for (const auto& e : bridge) {
    left_id.try_emplace(e.a, static_cast<int>(left_id.size()));
    right_id.try_emplace(e.b, static_cast<int>(right_id.size()));
  }
  std::vector<std::vector<int>> adj(left_id.size());
  for (const auto& e : bridge) adj[left_id[e.a]].push_back(right_id[e.b]);
  std::vector<int> match_right(right_id.size(), -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right[v] < 0 || self(self, match_right[v])) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    visited.assign(right_id.size(), 0);
    if (augment(augment, static_cast<int>(u))) ++matched;
  }
  return matched;
}

enum class LinkType { transfer, collaboration };
enum class LinkPattern { one_one, one_many, two_by, mm_A, mm_B };

inline constexpr std::array kLinkTypes = {LinkType::transfer, LinkType::collaboration};
inline constexpr std::array kLinkPatterns = {LinkPattern::one_one, LinkPattern::one_many, LinkPattern::two_by,
                                             LinkPattern::mm_A, LinkPattern::mm_B};

inline std::string_view to_string(LinkType t) { return t == LinkType::transfer ? "transfer" : "collaboration"; }

inline std::string_view to_string(LinkPattern p) {
  switch (p) {
    case LinkPattern::one_one: return "1-1";
    case LinkPattern::one_many: return "1-m";
    case LinkPattern::two_by: return "2x";
    case LinkPattern::mm_A: return "m-m(A)";
    case LinkPattern::mm_B: return "m-m(B)";
  }
  return "?";
}

inline constexpr int kTransferMaxSeparator = 2;

struct InterClusterConnection {
  int cluster_a = 0;  // cluster_a < cluster_b
  int cluster_b = 0;
  std::vector<BridgeEdge> bridge;
  int separator = 0;
  LinkType type = LinkType::transfer;
  LinkPattern pattern = LinkPattern::one_one;
  long long total_weight = 0;
  int pi_a = -1;  // node index of each cluster's lead author
  int pi_b = -1;
  bool pi_link = false;  // a bridge edge joins the two lead authors
};

/// Lead author of a cluster: most papers, then highest degree in `net`, then
/// smallest key.
inline int principal_investigator(const CoauthorNetwork& net, std::span<const int> members) {
  if (members.empty()) throw Error("empty cluster");
  int best = members.front();
  for (int v : members) {
    const auto& nv = net.node(v);
    const auto& nb = net.node(best);
    if (nv.paper_count != nb.paper_count) {
      if (nv.paper_count > nb.paper_count) best = v;
    } else if (net.degree(v) != net.degree(best)) {
      if (net.degree(v) > net.degree(best)) best = v;
    } else if (nv.key < nb.key) {
      best = v;
    }
  }
  return best;
}

/// Separator rule and structural pattern of one bridge.
inline InterClusterConnection classify_connection(std::vector<BridgeEdge> bridge, const ClusterInfo& a,
                                                  const ClusterInfo& b, const CoauthorNetwork& net) {
  if (bridge.empty()) throw Error("empty bridge");
  if (a.id == b.id) throw Error("connection of a cluster to itself");
  InterClusterConnection c;
  const bool swap = a.id > b.id;
  const ClusterInfo& lo = swap ? b : a;
  const ClusterInfo& hi = swap ? a : b;
  c.cluster_a = lo.id;
  c.cluster_b = hi.id;
  for (auto& e : bridge) {
    if (!std::binary_search(lo.members.begin(), lo.members.end(), e.a)) std::swap(e.a, e.b);
    if (!std::binary_search(lo.members.begin(), lo.members.end(), e.a) ||
        !std::binary_search(hi.members.begin(), hi.members.end(), e.b))
      throw Error("bridge edge does not join the two clusters");
    c.total_weight += e.weight;
  }
  std::sort(bridge.begin(), bridge.end());
  c.bridge = std::move(bridge);
  c.separator = separator_size(c.bridge);
  c.type = c.separator <= kTransferMaxSeparator ? LinkType::transfer : LinkType::collaboration;
  c.pi_a = principal_investigator(net, lo.members);
  c.pi_b = principal_investigator(net, hi.members);
  c.pi_link = std::any_of(c.bridge.begin(), c.bridge.end(),
                          [&](const BridgeEdge& e) { return e.a == c.pi_a && e.b == c.pi_b; });
  if (c.separator == 1)
    c.pattern = c.bridge.size() == 1 ? LinkPattern::one_one : LinkPattern::one_many;
  else if (c.separator == 2)
    c.pattern = LinkPattern::two_by;
  else
    c.pattern = c.pi_link ? LinkPattern::mm_A : LinkPattern::mm_B;
  return c;
}

/// Classifies every connected cluster pair. `clusters` is indexed by id - 1.
inline std::vector<InterClusterConnection> classify_connections(const CoauthorNetwork& net,
                                                                const Clustering& clustering,
                                                                const std::vector<ClusterInfo>& clusters) {
  std::vector<InterClusterConnection> out;
  for (auto& [pair, bridge] : bridge_edges(net, clustering))
    out.push_back(classify_connection(bridge, clusters.at(pair.first - 1), clusters.at(pair.second - 1), net));
  return out;
}

struct ClusterNetworkStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double participating_fraction = 0;  // nodes / all clusters
  double link_type_fraction = 0;      // edges / all classified connections
  double degree_mean = 0;
  double degree_median = 0;
  int degree_max = 0;
  int components = 0;
  double giant_fraction = 0;  // largest component / nodes
  bool giant_present = false;  // largest component holds at least half the nodes
};

struct ClusterLevelNetwork {
  LinkType kind = LinkType::transfer;
  std::vector<int> nodes;  // cluster ids, ascending
  std::vector<InterClusterConnection> edges;
  ClusterNetworkStats stats;

  std::vector<int> degrees() const {
    std::vector<int> deg(nodes.size(), 0);
    for (const auto& e : edges) {
      ++deg[index_of(e.cluster_a)];
      ++deg[index_of(e.cluster_b)];
    }
    return deg;
  }
  std::size_t index_of(int cluster) const {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), cluster) - nodes.begin());
  }
};

/// Keeps the connections of one kind. `cluster_count` is the number of
/// clusters in the underlying clustering.
inline ClusterLevelNetwork build_cluster_network(std::span<const InterClusterConnection> connections, LinkType kind,
                                                 std::size_t cluster_count) {
  ClusterLevelNetwork g;
  g.kind = kind;
  for (const auto& c : connections) {
    if (c.type != kind) continue;
    g.edges.push_back(c);
    g.nodes.push_back(c.cluster_a);
    g.nodes.push_back(c.cluster_b);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());

  auto& s = g.stats;
  s.nodes = g.nodes.size();
  s.edges = g.edges.size();
  if (cluster_count > 0) s.participating_fraction = static_cast<double>(s.nodes) / static_cast<double>(cluster_count);
  if (!connections.empty())
    s.link_type_fraction = static_cast<double>(s.edges) / static_cast<double>(connections.size());
  if (s.nodes == 0) return g;

  auto deg = g.degrees();
  std::vector<double> degd(deg.begin(), deg.end());
  s.degree_mean = std::accumulate(degd.begin(), degd.end(), 0.0) / static_cast<double>(s.nodes);
  s.degree_median = median(degd);
  s.degree_max = *std::max_element(deg.begin(), deg.end());

  std::vector<int> parent(s.nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) {
    int x = find(static_cast<int>(g.index_of(e.cluster_a))), y = find(static_cast<int>(g.index_of(e.cluster_b)));
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::map<int, int> sizes;
  for (std::size_t i = 0; i < s.nodes; ++i) ++sizes[find(static_cast<int>(i))];
  s.components = static_cast<int>(sizes.size());
  int largest = 0;
  for (auto& [root, n] : sizes) largest = std::max(largest, n);
  s.giant_fraction = static_cast<double>(largest) / static_cast<double>(s.nodes);
  s.giant_present = 2 * largest >= static_cast<int>(s.nodes);
  return g;
}

struct Neighborhood {
  CoauthorNetwork net;
  std::vector<int> nodes;       // indices in the source network, ascending
  std::vector<int> cluster_of;  // cluster id per neighborhood node
  std::vector<int> clusters;    // seed first, then linked clusters ascending
};

/// Authors of the seed cluster and of every cluster sharing a bridge edge with it.
inline Neighborhood extract_neighborhood(const CoauthorNetwork& net, const Clustering& clustering, int seed_cluster) {
  if (seed_cluster < 1 || seed_cluster > clustering.cluster_count)
    throw Error("unknown cluster id " + std::to_string(seed_cluster));
  std::vector<char> keep(static_cast<std::size_t>(clustering.cluster_count) + 1, 0);
  keep[seed_cluster] = 1;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (clustering.cluster_of[v] != seed_cluster) continue;
    for (const auto& nb : net.neighbors(static_cast<int>(v))) keep[clustering.cluster_of[nb.node]] = 1;
  }
  Neighborhood h;
  h.clusters.push_back(seed_cluster);
  for (int c = 1; c <= clustering.cluster_count; ++c)
    if (keep[c] && c != seed_cluster) h.clusters.push_back(c);
  for (std::size_t v = 0; v < net.size(); ++v)
    if (keep[clustering.cluster_of[v]]) {
      h.nodes.push_back(static_cast<int>(v));
      h.cluster_of.push_back(clustering.cluster_of[v]);
    }
  h.net = net.induced(h.nodes);
  return h;
}

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

// Evenly spaced gray levels, darkest for the first cluster.
inline std::string gray_shade(std::size_t index, std::size_t count) {
  int level = count <= 1 ? 30 : 30 + static_cast<int>(60 * index / (count - 1));
  return "gray" + std::to_string(level);
}

}  // namespace detail

/// DOT graph of a neighborhood; each cluster gets its own gray shade.
inline std::string neighborhood_dot(const Neighborhood& h) {
  std::string out = "graph neighborhood {\n  node [style=filled];\n";
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    auto pos = std::find(h.clusters.begin(), h.clusters.end(), h.cluster_of[i]) - h.clusters.begin();
    out += "  n" + std::to_string(i + 1) + " [label=" + detail::dot_quote(h.net.node(static_cast<int>(i)).key.text()) +
           ", cluster=" + std::to_string(h.cluster_of[i]) +
           ", fillcolor=" + detail::gray_shade(static_cast<std::size_t>(pos), h.clusters.size()) + "];\n";
  }
  for (const auto& e : h.net.edges())
    out += "  n" + std::to_string(e.a + 1) + " -- n" + std::to_string(e.b + 1) +
           " [weight=" + std::to_string(e.weight) + "];\n";
  out += "}\n";
  return out;
}

/// Per-cluster display attributes for cluster-level exports.
struct ClusterNodeAttributes {
  int size = 0;
  std::string hubness;
  std::string geo;
  std::string shape = "circle";
  std::string color = "gray";
};

/// Pajek NET of a cluster-level network; vertices are labelled "C<id>" in
/// ascending id order, edge weights are summed bridge weights.
inline std::string cluster_network_pajek(const ClusterLevelNetwork& g) {
  std::string out = "*Vertices " + std::to_string(g.nodes.size()) + "\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out += std::to_string(i + 1) + " \"C" + std::to_string(g.nodes[i]) + "\"\n";
  out += "*Edges\n";
  for (const auto& e : g.edges)
    out += std::to_string(g.index_of(e.cluster_a) + 1) + " " + std::to_string(g.index_of(e.cluster_b) + 1) + " " +
           std::to_string(e.total_weight) + "\n";
  return out;
}

/// DOT of a cluster-level network. `attributes` is indexed by cluster id - 1.
inline std::string cluster_network_dot(const ClusterLevelNetwork& g,
                                       std::span<const ClusterNodeAttributes> attributes) {
  std::string out = "graph " + std::string(to_string(g.kind)) + " {\n  node [style=filled];\n";
  for (int id : g.nodes) {
    out += "  C" + std::to_string(id);
    if (static_cast<std::size_t>(id) <= attributes.size()) {
      const auto& a = attributes[id - 1];
      out += " [size=" + std::to_string(a.size) + ", hubness=" + detail::dot_quote(a.hubness) +
             ", geo=" + detail::dot_quote(a.geo) + ", shape=" + a.shape + ", fillcolor=" + a.color + "]";
    }
    out += ";\n";
  }
  for (const auto& e : g.edges)
    out += "  C" + std::to_string(e.cluster_a) + " -- C" + std::to_string(e.cluster_b) +
           " [weight=" + std::to_string(e.total_weight) + ", pattern=" + detail::dot_quote(to_string(e.pattern)) +
           "];\n";
  out += "}\n";
  return out;
}

/// One row per connected cluster pair.
inline std::string connections_csv(const CoauthorNetwork& net, std::span<const InterClusterConnection> connections) {
  std::string out = "cluster_a,cluster_b,bridge_edges,separator,type,pattern,weight,pi_a,pi_b,pi_link\n";
  for (const auto& c : connections) {
    out += csv::join_row({std::to_string(c.cluster_a), std::to_string(c.cluster_b), std::to_string(c.bridge.size()),
                          std::to_string(c.separator), std::string(to_string(c.type)),
                          std::string(to_string(c.pattern)), std::to_string(c.total_weight),
                          net.node(c.pi_a).key.text(), net.node(c.pi_b).key.text(), c.pi_link ? "1" : "0"});
    out.push_back('\n');
  }
  return out;
}

}  // namespace coauthor
