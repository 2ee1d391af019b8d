// Graph builders and seeded generators shared by the tests.
#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coauthor/cluster.hpp"
#include "coauthor/graph.hpp"

namespace testing_support {

using coauthor::AuthorKey;
using coauthor::AuthorNode;
using coauthor::CoauthorNetwork;
using coauthor::Edge;

/// Node i is named "N0000i" so that node order equals construction order.
inline std::vector<AuthorNode> numbered_nodes(int n, int paper_count = 2) {
  std::vector<AuthorNode> nodes;
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "N%05d", i);
    nodes.push_back({AuthorKey(buf, ""), paper_count, 0});
  }
  return nodes;
}

inline CoauthorNetwork graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> e;
  for (auto [a, b] : edges) e.push_back({std::min(a, b), std::max(a, b), 1});
  return CoauthorNetwork(numbered_nodes(n), e);
}

inline CoauthorNetwork star(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return graph(n, e);
}

inline CoauthorNetwork cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return graph(n, e);
}

inline CoauthorNetwork path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return graph(n, e);
}

inline CoauthorNetwork complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return graph(n, e);
}

/// Erdos-Renyi graph with edge probability p.
inline CoauthorNetwork random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return graph(n, e);
}

/// Random connected graph: a random spanning tree plus extra random edges.
inline CoauthorNetwork random_connected_graph(int n, double extra_p, std::mt19937_64& rng) {
  std::set<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) {
    int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
    e.emplace(j, i);
  }
  std::bernoulli_distribution coin(extra_p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace(i, j);
  return graph(n, {e.begin(), e.end()});
}

struct PlantedGraph {
  CoauthorNetwork net;
  std::vector<int> group;  // planted group per node
};

/// `groups` groups of `size` nodes; each group is a connected G(size, p_in)
/// and each group sends `bridges` single edges to random other groups.
inline PlantedGraph planted_graph(int groups, int size, double p_in, int bridges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p_in);
  std::set<std::pair<int, int>> e;
  PlantedGraph out;
  const int n = groups * size;
  out.group.resize(n);
  for (int g = 0; g < groups; ++g) {
    const int base = g * size;
    for (int i = 0; i < size; ++i) out.group[base + i] = g;
    for (int i = 1; i < size; ++i) e.emplace(base + std::uniform_int_distribution<int>(0, i - 1)(rng), base + i);
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        if (coin(rng)) e.emplace(base + i, base + j);
  }
  std::uniform_int_distribution<int> pick_group(0, groups - 1), pick_member(0, size - 1);
  for (int g = 0; g < groups && groups > 1; ++g)
    for (int b = 0; b < bridges; ++b) {
      int h;
      do h = pick_group(rng);
      while (h == g);
      int x = g * size + pick_member(rng), y = h * size + pick_member(rng);
      e.emplace(std::min(x, y), std::max(x, y));
    }
  out.net = graph(n, {e.begin(), e.end()});
  return out;
}

}  // namespace testing_support
