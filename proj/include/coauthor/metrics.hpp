// Cluster-internal structure: Freeman centralization indices, within-module
// degree z-scores, participation coefficients and the seven node roles.
//
// Everything here treats the network as a simple graph (edge multiplicity is
// ignored) unless a weighted degree mode is requested explicitly.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coauthor/cluster.hpp"
#include "coauthor/graph.hpp"

namespace coauthor {

struct CentralizationIndices {
  double degree = 0.0;
  double closeness = 0.0;
  double betweenness = 0.0;
};

struct CentralizationResult {
  CentralizationIndices indices;
  bool disconnected = false;  // computed on the largest component only
  int nodes_used = 0;
};

/// Unweighted shortest-path distances from `source` (-1 for unreachable).
inline std::vector<int> bfs_distances(const CoauthorNetwork& g, int source) {
  std::vector<int> dist(g.size(), -1);
  std::queue<int> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (const auto& nb : g.neighbors(v))
      if (dist[nb.node] < 0) {
        dist[nb.node] = dist[v] + 1;
        queue.push(nb.node);
      }
  }
  return dist;
}

/// Exact betweenness of every node of an unweighted undirected graph
/// (Brandes accumulation; each unordered pair counted once).
inline std::vector<double> betweenness(const CoauthorNetwork& g) {
  const std::size_t n = g.size();
  std::vector<double> cb(n, 0.0), sigma(n), delta(n);
  std::vector<int> dist(n);
  std::vector<std::vector<int>> pred(n);
  std::vector<int> stack;
  std::queue<int> queue;
  for (std::size_t s = 0; s < n; ++s) {
    stack.clear();
    for (std::size_t v = 0; v < n; ++v) {
      pred[v].clear();
      sigma[v] = 0;
      dist[v] = -1;
      delta[v] = 0;
    }
    sigma[s] = 1;
    dist[s] = 0;
    queue.push(static_cast<int>(s));
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      stack.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        int w = nb.node;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (int v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != static_cast<int>(s)) cb[w] += delta[w];
    }
  }
  for (auto& x : cb) x /= 2.0;
  return cb;
}

namespace detail {

inline double centralization_sum(const std::vector<double>& c) {
  double top = *std::max_element(c.begin(), c.end());
  double sum = 0;
  for (double x : c) sum += top - x;
  return sum;
}

}  // namespace detail

/// Freeman centralization of a cluster subgraph, each index normalized by its
/// value on the star with the same node count (1 for a star, 0 when all
/// nodes are equally central). A disconnected input is evaluated on its
/// largest component and flagged.
inline CentralizationResult centralization(const CoauthorNetwork& subgraph) {
  if (subgraph.size() < 3) throw Error("centralization undefined for fewer than 3 nodes");
  CentralizationResult out;
  const CoauthorNetwork* g = &subgraph;
  CoauthorNetwork largest;
  auto components = component_members(subgraph);
  if (components.size() > 1) {
    out.disconnected = true;
    largest = subgraph.induced(components.front());
    if (largest.size() < 3) throw Error("centralization undefined for fewer than 3 nodes");
    g = &largest;
  }
  const std::size_t n = g->size();
  const double nm1 = static_cast<double>(n - 1), nm2 = static_cast<double>(n - 2);
  out.nodes_used = static_cast<int>(n);

  std::vector<double> degree(n), closeness(n);
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = g->degree(static_cast<int>(v)) / nm1;
    long long total = 0;
    for (int d : bfs_distances(*g, static_cast<int>(v))) total += d;
    closeness[v] = nm1 / static_cast<double>(total);
  }
  auto between = betweenness(*g);
  for (auto& b : between) b /= nm1 * nm2 / 2.0;

  // Star maxima of the summed differences for the normalized centralities.
  out.indices.degree = detail::centralization_sum(degree) / nm2;
  out.indices.closeness = detail::centralization_sum(closeness) / (nm1 * nm2 / (2.0 * static_cast<double>(n) - 3.0));
  out.indices.betweenness = detail::centralization_sum(between) / nm1;
  return out;
}

enum class NodeRole { R1, R2, R3, R4, R5, R6, R7 };

inline constexpr std::array kNodeRoles = {NodeRole::R1, NodeRole::R2, NodeRole::R3, NodeRole::R4,
                                          NodeRole::R5, NodeRole::R6, NodeRole::R7};

inline constexpr double kHubThreshold = 2.5;

inline std::string_view to_string(NodeRole r) {
  constexpr std::array names = {"R1", "R2", "R3", "R4", "R5", "R6", "R7"};
  return names[static_cast<int>(r)];
}

inline std::string_view role_name(NodeRole r) {
  constexpr std::array names = {"ultra-peripheral", "peripheral",    "satellite connector", "kinless",
                                "provincial hub",   "connector hub", "global hub"};
  return names[static_cast<int>(r)];
}

/// Role from the within-module z-score and participation coefficient.
/// Hubs have z >= 2.5. Non-hubs: P <= 0.05 R1, <= 0.62 R2, <= 0.80 R3, else R4.
/// Hubs: P <= 0.30 R5, <= 0.75 R6, else R7.
inline NodeRole assign_role(double z, double p) {
  if (!std::isfinite(z)) throw Error("z-score must be finite");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("participation coefficient outside [0,1]");
  if (z < kHubThreshold) {
    if (p <= 0.05) return NodeRole::R1;
    if (p <= 0.62) return NodeRole::R2;
    if (p <= 0.80) return NodeRole::R3;
    return NodeRole::R4;
  }
  if (p <= 0.30) return NodeRole::R5;
  if (p <= 0.75) return NodeRole::R6;
  return NodeRole::R7;
}

enum class DegreeMode { unweighted, weighted };

struct NodeRoleProfile {
  int node = 0;
  int cluster = 0;
  double k_in = 0;   // links into the node's own cluster
  double k = 0;      // total degree
  double z = 0;
  double p = 0;
  NodeRole role = NodeRole::R1;
  bool isolated = false;  // k == 0, P set to 0
};

namespace detail {

inline double link_value(const Neighbor& nb, DegreeMode mode) {
  return mode == DegreeMode::weighted ? nb.weight : 1.0;
}

}  // namespace detail

/// P = 1 - sum_s (k_s / k)^2 over all clusters s, including the node's own.
/// Returns 0 for an isolated node.
inline double participation_coefficient(int node, const CoauthorNetwork& net, const Clustering& clustering,
                                        DegreeMode mode = DegreeMode::unweighted) {
  std::map<int, double> per_cluster;
  double k = 0;
  for (const auto& nb : net.neighbors(node)) {
    double w = detail::link_value(nb, mode);
    per_cluster[clustering.cluster_of[nb.node]] += w;
    k += w;
  }
  if (k == 0) return 0.0;
  double sum = 0;
  for (const auto& [c, ks] : per_cluster) sum += (ks / k) * (ks / k);
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

/// Links from `node` to members of its own cluster.
inline double internal_degree(int node, const CoauthorNetwork& net, const Clustering& clustering,
                              DegreeMode mode = DegreeMode::unweighted) {
  double k = 0;
  const int own = clustering.cluster_of[node];
  for (const auto& nb : net.neighbors(node))
    if (clustering.cluster_of[nb.node] == own) k += detail::link_value(nb, mode);
  return k;
}

/// (k_in - mean) / sd over the node's cluster, population sd; 0 when sd is 0.
inline double within_module_z(int node, const CoauthorNetwork& net, const Clustering& clustering,
                              DegreeMode mode = DegreeMode::unweighted) {
  const int own = clustering.cluster_of[node];
  double sum = 0, sum_sq = 0, count = 0;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (clustering.cluster_of[v] != own) continue;
    double k = internal_degree(static_cast<int>(v), net, clustering, mode);
    sum += k;
    sum_sq += k * k;
    ++count;
  }
  double mean = sum / count;
  double var = std::max(0.0, sum_sq / count - mean * mean);
  if (var <= 1e-12 * std::max(1.0, mean * mean)) return 0.0;
  return (internal_degree(node, net, clustering, mode) - mean) / std::sqrt(var);
}

/// z, P and role of every node, computed in one pass per cluster.
inline std::vector<NodeRoleProfile> node_profiles(const CoauthorNetwork& net, const Clustering& clustering,
                                                  DegreeMode mode = DegreeMode::unweighted) {
  if (clustering.cluster_of.size() != net.size()) throw Error("clustering does not match network");
  std::vector<NodeRoleProfile> out(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) {
    auto& p = out[v];
    p.node = static_cast<int>(v);
    p.cluster = clustering.cluster_of[v];
    std::map<int, double> per_cluster;
    for (const auto& nb : net.neighbors(static_cast<int>(v))) {
      double w = detail::link_value(nb, mode);
      per_cluster[clustering.cluster_of[nb.node]] += w;
      p.k += w;
    }
    p.k_in = per_cluster.contains(p.cluster) ? per_cluster[p.cluster] : 0.0;
    if (p.k == 0) {
      p.isolated = true;
    } else {
      double sum = 0;
      for (const auto& [c, ks] : per_cluster) sum += (ks / p.k) * (ks / p.k);
      p.p = std::clamp(1.0 - sum, 0.0, 1.0);
    }
  }
  for (const auto& members : clustering.members()) {
    double sum = 0;
    for (int v : members) sum += out[v].k_in;
    const double mean = sum / static_cast<double>(members.size());
    double ss = 0;
    for (int v : members) ss += (out[v].k_in - mean) * (out[v].k_in - mean);
    const double sd = std::sqrt(ss / static_cast<double>(members.size()));
    for (int v : members) out[v].z = sd > 1e-12 ? (out[v].k_in - mean) / sd : 0.0;
  }
  for (auto& p : out) p.role = assign_role(p.z, p.p);
  return out;
}

struct RoleDistribution {
  std::array<long long, 7> counts{};
  std::array<double, 7> fractions{};
  long long total = 0;
};

inline RoleDistribution role_distribution(std::span<const NodeRoleProfile> profiles) {
  RoleDistribution d;
  for (const auto& p : profiles) ++d.counts[static_cast<int>(p.role)];
  d.total = static_cast<long long>(profiles.size());
  if (d.total > 0)
    for (int r = 0; r < 7; ++r) d.fractions[r] = static_cast<double>(d.counts[r]) / static_cast<double>(d.total);
  return d;
}

inline RoleDistribution role_distribution(const CoauthorNetwork& net, const Clustering& clustering) {
  auto profiles = node_profiles(net, clustering);
  return role_distribution(profiles);
}

enum class Hubness { none, single, multi };

inline constexpr std::array kHubness = {Hubness::none, Hubness::single, Hubness::multi};

inline std::string_view to_string(Hubness h) {
  switch (h) {
    case Hubness::none: return "no-hub";
    case Hubness::single: return "single-hub";
    case Hubness::multi: return "multi-hub";
  }
  return "?";
}

struct ClusterHubness {
  Hubness value = Hubness::none;
  int hub_count = 0;
};

inline Hubness hubness_of(int hub_count) {
  return hub_count == 0 ? Hubness::none : hub_count == 1 ? Hubness::single : Hubness::multi;
}

/// Counts members with z >= 2.5.
inline ClusterHubness cluster_hubness(const ClusterInfo& cluster, std::span<const NodeRoleProfile> profiles) {
  ClusterHubness h;
  for (int v : cluster.members)
    if (profiles[v].z >= kHubThreshold) ++h.hub_count;
  h.value = hubness_of(h.hub_count);
  return h;
}

/// Per-node CSV: key, cluster, k_in, k, z, P, role.
inline std::string nodes_csv(const CoauthorNetwork& net, std::span<const NodeRoleProfile> profiles) {
  std::string out = "key,cluster,k_in,k,z,P,role\n";
  for (const auto& p : profiles) {
    out += csv::join_row({net.node(p.node).key.text(), std::to_string(p.cluster), text::format_double(p.k_in),
                          text::format_double(p.k), text::format_double(p.z), text::format_double(p.p),
                          std::string(to_string(p.role))});
    out.push_back('\n');
  }
  return out;
}

}  // namespace coauthor
