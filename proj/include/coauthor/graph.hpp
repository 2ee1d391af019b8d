// Weighted co-author network: construction from a corpus, single-paper
// reduction, connected components and cumulative growth curves.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coauthor/ingest.hpp"

namespace coauthor {

struct AuthorNode {
  AuthorKey key;
  int paper_count = 0;               // 0 when unknown (network read from a file)
  std::uint64_t active_slices = 0;  // bit s set when the author published in time slice s

  friend bool operator==(const AuthorNode&, const AuthorNode&) = default;
};

struct Edge {
  int a = 0;  // a < b
  int b = 0;
  int weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
  int node = 0;
  int weight = 1;
};

/// Undirected integer-weighted graph over authors.
///
/// Nodes are stored sorted by key, so a node index is also its position in
/// any exported vertex list. Adjacency lists are sorted by neighbor index.
class CoauthorNetwork {
 public:
  CoauthorNetwork() = default;

  /// Builds from nodes in any order and edges referring to those positions.
  /// Rejects self-loops, duplicate pairs, non-positive weights and duplicate keys.
  CoauthorNetwork(std::vector<AuthorNode> nodes, std::vector<Edge> edges,
                  std::vector<std::vector<std::string>> provenance = {}) {
    const std::size_t n = nodes.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return nodes[x].key < nodes[y].key; });
    std::vector<int> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<int>(i);
    nodes_.reserve(n);
    for (int i : order) nodes_.push_back(std::move(nodes[i]));
    for (std::size_t i = 1; i < n; ++i)
      if (nodes_[i - 1].key == nodes_[i].key) throw Error("duplicate author key " + nodes_[i].key.text());
    if (!provenance.empty()) {
      if (provenance.size() != n) throw Error("provenance size mismatch");
      provenance_.reserve(n);
      for (int i : order) provenance_.push_back(std::move(provenance[i]));
    }

    adjacency_.assign(n, {});
    for (const auto& e : edges) {
      if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= n || static_cast<std::size_t>(e.b) >= n)
        throw Error("edge endpoint out of range");
      if (e.a == e.b) throw Error("self-loop on " + nodes_[rank[e.a]].key.text());
      if (e.weight <= 0) throw Error("non-positive edge weight");
      int a = rank[e.a], b = rank[e.b];
      adjacency_[a].push_back({b, e.weight});
      adjacency_[b].push_back({a, e.weight});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
      for (std::size_t i = 1; i < list.size(); ++i)
        if (list[i - 1].node == list[i].node) throw Error("duplicate edge");
      edge_count_ += list.size();
    }
    edge_count_ /= 2;
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const AuthorNode& node(int i) const { return nodes_[i]; }
  const std::vector<AuthorNode>& nodes() const noexcept { return nodes_; }
  std::span<const Neighbor> neighbors(int i) const { return adjacency_[i]; }
  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

  long long strength(int i) const {
    long long s = 0;
    for (const auto& nb : adjacency_[i]) s += nb.weight;
    return s;
  }

  /// Record ids the author appears on; empty when the network carries no provenance.
  std::span<const std::string> provenance(int i) const {
    if (provenance_.empty()) return {};
    return provenance_[i];
  }
  bool has_provenance() const noexcept { return !provenance_.empty(); }

  std::optional<int> find(const AuthorKey& key) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key,
                               [](const AuthorNode& n, const AuthorKey& k) { return n.key < k; });
    if (it == nodes_.end() || it->key != key) return std::nullopt;
    return static_cast<int>(it - nodes_.begin());
  }

  /// Weight of the edge between i and j, 0 when absent.
  int weight(int i, int j) const {
    const auto& list = adjacency_[i];
    auto it = std::lower_bound(list.begin(), list.end(), j, [](const Neighbor& nb, int v) { return nb.node < v; });
    return it != list.end() && it->node == j ? it->weight : 0;
  }

  /// All edges with a < b, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t a = 0; a < adjacency_.size(); ++a)
      for (const auto& nb : adjacency_[a])
        if (nb.node > static_cast<int>(a)) out.push_back({static_cast<int>(a), nb.node, nb.weight});
    return out;
  }

  long long total_weight() const {
    long long s = 0;
    for (std::size_t i = 0; i < size(); ++i) s += strength(static_cast<int>(i));
    return s / 2;
  }

  /// Subnetwork induced by `members` (node indices of this network).
  CoauthorNetwork induced(std::span<const int> members) const {
    std::vector<int> local(size(), -1);
    std::vector<AuthorNode> nodes;
    std::vector<std::vector<std::string>> prov;
    nodes.reserve(members.size());
    for (int m : members) {
      if (local[m] >= 0) continue;
      local[m] = static_cast<int>(nodes.size());
      nodes.push_back(nodes_[m]);
      if (has_provenance()) prov.push_back(provenance_[m]);
    }
    std::vector<Edge> edges;
    for (int m : members)
      for (const auto& nb : adjacency_[m])
        if (local[nb.node] >= 0 && nb.node > m) edges.push_back({local[m], local[nb.node], nb.weight});
    return CoauthorNetwork(std::move(nodes), std::move(edges), std::move(prov));
  }

  /// Structural equality: same keys, paper counts and weighted edges.
  friend bool operator==(const CoauthorNetwork& x, const CoauthorNetwork& y) {
    return x.nodes_ == y.nodes_ && x.edges() == y.edges();
  }

 private:
  std::vector<AuthorNode> nodes_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::vector<std::string>> provenance_;
  std::size_t edge_count_ = 0;
};

/// Inclusive calendar-year range.
struct YearRange {
  int first = 0;
  int last = 0;
  int length() const { return last - first + 1; }
  bool contains(int year) const { return year >= first && year <= last; }
  friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// Splits [first, last] into `count` consecutive ranges whose lengths differ by
/// at most one year; earlier ranges take the extra years.
inline std::vector<YearRange> partition_years(int first, int last, int count) {
  if (count < 1) throw Error("slice count must be at least 1");
  int span = last - first + 1;
  if (span < count)
    throw Error("time span of " + std::to_string(std::max(span, 0)) + " years is shorter than " +
                std::to_string(count) + " slices");
  std::vector<YearRange> out;
  int base = span / count, extra = span % count, start = first;
  for (int s = 0; s < count; ++s) {
    int len = base + (s < extra ? 1 : 0);
    out.push_back({start, start + len - 1});
    start += len;
  }
  return out;
}

/// Index of the slice containing `year`, or -1.
inline int slice_of(std::span<const YearRange> slices, int year) {
  for (std::size_t s = 0; s < slices.size(); ++s)
    if (slices[s].contains(year)) return static_cast<int>(s);
  return -1;
}

/// Co-author network of a corpus: one node per author, and for every record
/// each unordered pair of its authors gains one unit of edge weight.
/// `slices` (optional) fills each node's activity bitset.
inline CoauthorNetwork build_network(const Corpus& corpus, std::span<const YearRange> slices = {}) {
  std::map<AuthorKey, int> index;
  for (const auto& rec : corpus.records)
    for (const auto& a : rec.authors) index.emplace(a, 0);
  std::vector<AuthorNode> nodes;
  nodes.reserve(index.size());
  for (auto& [key, i] : index) {
    i = static_cast<int>(nodes.size());
    nodes.push_back({key, 0, 0});
  }
  std::vector<std::vector<std::string>> provenance(nodes.size());
  std::unordered_map<std::uint64_t, int> pair_weight;
  std::vector<int> ids;
  for (const auto& rec : corpus.records) {
    ids.clear();
    for (const auto& a : rec.authors) ids.push_back(index.at(a));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    int s = slices.empty() ? -1 : slice_of(slices, rec.year);
    for (int i : ids) {
      ++nodes[i].paper_count;
      if (s >= 0 && s < 64) nodes[i].active_slices |= std::uint64_t{1} << s;
      provenance[i].push_back(rec.id);
    }
    for (std::size_t x = 0; x < ids.size(); ++x)
      for (std::size_t y = x + 1; y < ids.size(); ++y)
        ++pair_weight[(static_cast<std::uint64_t>(ids[x]) << 32) | static_cast<std::uint32_t>(ids[y])];
  }
  for (auto& p : provenance) std::sort(p.begin(), p.end());
  std::vector<Edge> edges;
  edges.reserve(pair_weight.size());
  for (const auto& [k, w] : pair_weight)
    edges.push_back({static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu), w});
  return CoauthorNetwork(std::move(nodes), std::move(edges), std::move(provenance));
}

/// Copy of `net` whose nodes carry paper counts, slice activity and record
/// ids taken from `corpus` (for networks read back from a NET file). Authors
/// absent from the corpus keep zero counts.
inline CoauthorNetwork annotate_from_corpus(const CoauthorNetwork& net, const Corpus& corpus,
                                            std::span<const YearRange> slices = {}) {
  std::vector<AuthorNode> nodes = net.nodes();
  for (auto& n : nodes) {
    n.paper_count = 0;
    n.active_slices = 0;
  }
  std::vector<std::vector<std::string>> provenance(nodes.size());
  for (const auto& rec : corpus.records) {
    int s = slices.empty() ? -1 : slice_of(slices, rec.year);
    for (const auto& a : rec.authors) {
      auto i = net.find(a);
      if (!i) continue;
      ++nodes[*i].paper_count;
      if (s >= 0 && s < 64) nodes[*i].active_slices |= std::uint64_t{1} << s;
      provenance[*i].push_back(rec.id);
    }
  }
  for (auto& p : provenance) std::sort(p.begin(), p.end());
  return CoauthorNetwork(std::move(nodes), net.edges(), std::move(provenance));
}

/// Drops every author with a single paper (one pass; survivors keep their
/// paper counts and remaining edge weights).
inline CoauthorNetwork reduce_single_paper_authors(const CoauthorNetwork& net) {
  std::vector<int> keep;
  for (std::size_t i = 0; i < net.size(); ++i)
    if (net.node(static_cast<int>(i)).paper_count != 1) keep.push_back(static_cast<int>(i));
  return net.induced(keep);
}

/// Connected-component label per node. Components are numbered in order of
/// their smallest node index.
inline std::vector<int> connected_components(const CoauthorNetwork& net, int* count = nullptr) {
  std::vector<int> comp(net.size(), -1);
  std::vector<int> stack;
  int next = 0;
  for (std::size_t s = 0; s < net.size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.assign(1, static_cast<int>(s));
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& nb : net.neighbors(v))
        if (comp[nb.node] < 0) {
          comp[nb.node] = next;
          stack.push_back(nb.node);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

/// Node sets of every component, largest first; equal sizes ordered by
/// smallest member key.
inline std::vector<std::vector<int>> component_members(const CoauthorNetwork& net) {
  int count = 0;
  auto comp = connected_components(net, &count);
  std::vector<std::vector<int>> members(count);
  for (std::size_t i = 0; i < comp.size(); ++i) members[comp[i]].push_back(static_cast<int>(i));
  std::stable_sort(members.begin(), members.end(),
                   [](const auto& x, const auto& y) { return x.size() > y.size(); });
  return members;
}

struct GiantComponent {
  CoauthorNetwork net;
  double relative_size = 0.0;  // fraction of the input's nodes
};

inline GiantComponent giant_component(const CoauthorNetwork& net) {
  if (net.empty()) throw Error("empty network");
  auto members = component_members(net);
  GiantComponent g;
  g.relative_size = static_cast<double>(members.front().size()) / static_cast<double>(net.size());
  g.net = net.induced(members.front());
  return g;
}

struct GrowthPoint {
  YearRange slice;
  std::size_t authors = 0;          // distinct authors up to the end of the slice
  std::size_t reduced_authors = 0;  // after dropping single-paper authors
  double giant_fraction = 0.0;      // giant component share of the reduced network
  double unreduced_giant_fraction = 0.0;
};

/// Cumulative network growth: one point per slice, each built from every
/// record published up to and including that slice.
inline std::vector<GrowthPoint> growth_curve(const Corpus& corpus, int slice_count) {
  if (corpus.empty()) throw Error("empty corpus");
  auto slices = partition_years(corpus.first_year, corpus.last_year, slice_count);
  std::vector<GrowthPoint> out;
  for (const auto& slice : slices) {
    Corpus upto;
    for (const auto& rec : corpus.records)
      if (rec.year <= slice.last) upto.records.push_back(rec);
    GrowthPoint p;
    p.slice = slice;
    auto full = build_network(upto);
    auto reduced = reduce_single_paper_authors(full);
    p.authors = full.size();
    p.reduced_authors = reduced.size();
    if (!full.empty()) p.unreduced_giant_fraction = giant_component(full).relative_size;
    if (!reduced.empty()) p.giant_fraction = giant_component(reduced).relative_size;
    out.push_back(p);
  }
  return out;
}

inline std::string growth_csv(std::span<const GrowthPoint> points) {
  std::string out = "first_year,last_year,authors,reduced_authors,giant_fraction,unreduced_giant_fraction\n";
  for (const auto& p : points)
    out += std::to_string(p.slice.first) + "," + std::to_string(p.slice.last) + "," + std::to_string(p.authors) + "," +
           std::to_string(p.reduced_authors) + "," + text::format_double(p.giant_fraction) + "," +
           text::format_double(p.unreduced_giant_fraction) + "\n";
  return out;
}

}  // namespace coauthor
