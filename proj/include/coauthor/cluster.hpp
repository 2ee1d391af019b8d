// Community detection by minimizing a description length, plus clustering
// import and per-cluster aggregates.
//
// Two code-length objectives are available:
//
//  * map_equation (default): the expected per-step code length of a random
//    walk on the weighted network under a two-level module/node codebook,
//      L = q log q - 2 sum_i q_i log q_i - sum_v p_v log p_v
//          + sum_i (q_i + p_i) log (q_i + p_i)
//    with node visit rates p_v = strength / 2W and module exit rates q_i.
//
//  * module_matrix: the bits needed to describe the simple graph's topology
//    given a partition into m modules,
//      L = n log m + m(m+1)/2 log l
//          + sum_i log C(n_i(n_i-1)/2, l_ii) + sum_{i<j} log C(n_i n_j, l_ij)
//    Its module-matrix term grows quadratically in m, so it merges aggressively
//    on large networks.
//
// Both are minimized by the same search: greedy agglomeration of adjacent
// modules from singletons, then single-node moves, alternated until neither
// changes the partition.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "coauthor/cohort.hpp"
#include "coauthor/graph.hpp"
#include "coauthor/pajek.hpp"

namespace coauthor {

enum class Objective { map_equation, module_matrix };

/// Total assignment of a network's nodes to clusters 1..k, ordered by
/// descending size with ties broken by smallest member key.
struct Clustering {
  std::vector<int> cluster_of;  // indexed by node, values in 1..cluster_count
  int cluster_count = 0;
  double quality = 0.0;  // description length in bits (lower is better)
  std::uint64_t seed = 0;

  std::vector<std::vector<int>> members() const {
    std::vector<std::vector<int>> out(cluster_count);
    for (std::size_t v = 0; v < cluster_of.size(); ++v) out[cluster_of[v] - 1].push_back(static_cast<int>(v));
    return out;
  }
};

/// Relabels arbitrary ids to the dense canonical order. Because nodes are
/// sorted by key, the smallest member key is the smallest node index.
inline std::vector<int> canonical_labels(std::span<const int> raw) {
  std::map<int, std::pair<int, int>> stats;  // raw id -> (size, first node)
  for (std::size_t v = 0; v < raw.size(); ++v) {
    auto [it, inserted] = stats.try_emplace(raw[v], 0, static_cast<int>(v));
    ++it->second.first;
  }
  std::vector<std::pair<int, int>> order;  // (raw id, first node)
  for (const auto& [id, s] : stats) order.emplace_back(id, s.second);
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    int sx = stats[x.first].first, sy = stats[y.first].first;
    return sx != sy ? sx > sy : x.second < y.second;
  });
  std::map<int, int> relabel;
  for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i].first] = static_cast<int>(i) + 1;
  std::vector<int> out(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) out[v] = relabel[raw[v]];
  return out;
}

namespace detail {

using LinkMap = std::unordered_map<int, long long>;

inline long long lookup(const LinkMap& m, int key) {
  auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

/// log2 of the binomial coefficient C(n, k); 0 when k == 0 or k == n.
inline double log2_binomial(double n, double k) {
  if (k <= 0 || k >= n) return 0.0;
  int sign = 0;
  double v = ::lgamma_r(n + 1, &sign) - ::lgamma_r(k + 1, &sign) - ::lgamma_r(n - k + 1, &sign);
  return v / std::numbers::ln2;
}

inline double plogp(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

inline double pairs_within(double size) { return size * (size - 1) / 2; }

/// Module bookkeeping shared by both objectives: sizes and link totals
/// between module pairs. `Weighted` sums edge weights, otherwise counts links.
template <bool Weighted>
class ModuleLinks {
 public:
  ModuleLinks(const CoauthorNetwork& net, std::vector<int> assignment) : net_(net), module_of_(std::move(assignment)) {
    int max_id = 0;
    for (int m : module_of_) max_id = std::max(max_id, m);
    size_.assign(max_id + 1, 0);
    internal_.assign(max_id + 1, 0);
    between_.assign(max_id + 1, {});
    for (int m : module_of_) ++size_[m];
    for (std::size_t v = 0; v < net.size(); ++v)
      for (const auto& nb : net.neighbors(static_cast<int>(v))) {
        if (nb.node < static_cast<int>(v)) continue;
        long long w = Weighted ? nb.weight : 1;
        int a = module_of_[v], b = module_of_[nb.node];
        if (a == b) {
          internal_[a] += w;
        } else {
          between_[a][b] += w;
          between_[b][a] += w;
        }
      }
    for (int s : size_)
      if (s > 0) ++module_count_;
  }

  int module_count() const { return module_count_; }
  int module_of(int v) const { return module_of_[v]; }
  int size(int m) const { return size_[m]; }
  const std::vector<int>& assignment() const { return module_of_; }
  const LinkMap& between(int m) const { return between_[m]; }
  std::size_t id_capacity() const { return size_.size(); }
  long long link(int a, int b) const { return lookup(between_[a], b); }

  /// Link totals from v to each module.
  LinkMap links_of(int v) const {
    LinkMap out;
    for (const auto& nb : net_.neighbors(v)) out[module_of_[nb.node]] += Weighted ? nb.weight : 1;
    return out;
  }

  void reassign_members(std::span<const int> nodes, int module) {
    for (int v : nodes) module_of_[v] = module;
  }

 protected:
  void merge_links(int into, int from) {
    internal_[into] += internal_[from] + link(into, from);
    size_[into] += size_[from];
    between_[into].erase(from);
    for (const auto& [c, l] : between_[from]) {
      if (c == into) continue;
      between_[into][c] += l;
      auto& back = between_[c];
      back.erase(from);
      back[into] += l;
    }
    between_[from].clear();
    size_[from] = 0;
    internal_[from] = 0;
    --module_count_;
  }

  void move_links(int v, int to, const LinkMap& links_to) {
    const int from = module_of_[v];
    internal_[from] -= lookup(links_to, from);
    internal_[to] += lookup(links_to, to);
    for (const auto& [c, k] : links_to) {
      if (c != from) add_link(from, c, -k);
      if (c != to) add_link(to, c, k);
    }
    --size_[from];
    ++size_[to];
    module_of_[v] = to;
    if (size_[from] == 0) --module_count_;
  }

  void add_link(int a, int b, long long delta) {
    if (a == b || delta == 0) return;
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      long long& l = between_[x][y];
      l += delta;
      if (l == 0) between_[x].erase(y);
    }
  }

  const CoauthorNetwork& net_;
  std::vector<int> module_of_;
  std::vector<int> size_;
  std::vector<long long> internal_;
  std::vector<LinkMap> between_;
  int module_count_ = 0;
};

/// Map equation over the weighted network.
class MapEquationState : public ModuleLinks<true> {
 public:
  MapEquationState(const CoauthorNetwork& net, std::vector<int> assignment)
      : ModuleLinks<true>(net, std::move(assignment)) {
    total_ = 2.0 * static_cast<double>(net.total_weight());
    strength_.resize(net.size());
    flow_.assign(size_.size(), 0.0);
    exit_.assign(size_.size(), 0.0);
    for (std::size_t v = 0; v < net.size(); ++v) {
      strength_[v] = static_cast<double>(net.strength(static_cast<int>(v)));
      node_entropy_ += plogp(strength_[v] / total_);
      flow_[module_of_[v]] += strength_[v] / total_;
    }
    for (std::size_t m = 0; m < size_.size(); ++m) {
      for (const auto& [c, w] : between_[m]) exit_[m] += static_cast<double>(w) / total_;
      exit_total_ += exit_[m];
    }
  }

  double code_length() const {
    double l = plogp(exit_total_) - node_entropy_;
    for (std::size_t m = 0; m < size_.size(); ++m)
      if (size_[m] > 0) l += -2 * plogp(exit_[m]) + plogp(exit_[m] + flow_[m]);
    return l;
  }

  double merge_global_delta() const { return 0.0; }

  double merge_local_delta(int a, int b) const {
    const double cross = 2.0 * static_cast<double>(link(a, b)) / total_;
    const double q = exit_[a] + exit_[b] - cross, p = flow_[a] + flow_[b];
    const double total_exit = exit_total_ - cross;
    return plogp(total_exit) - plogp(exit_total_) - 2 * (plogp(q) - plogp(exit_[a]) - plogp(exit_[b])) +
           plogp(q + p) - plogp(exit_[a] + flow_[a]) - plogp(exit_[b] + flow_[b]);
  }

  void merge(int into, int from) {
    const double cross = 2.0 * static_cast<double>(link(into, from)) / total_;
    exit_[into] = std::max(0.0, exit_[into] + exit_[from] - cross);
    flow_[into] += flow_[from];
    exit_total_ -= cross;
    exit_[from] = flow_[from] = 0;
    merge_links(into, from);
  }

  double move_delta(int v, int to, const LinkMap& links_to) const {
    const int from = module_of_[v];
    const double p = strength_[v] / total_;
    const double kf = static_cast<double>(lookup(links_to, from)) / total_;
    const double kt = static_cast<double>(lookup(links_to, to)) / total_;
    const double qf = size_[from] == 1 ? 0.0 : exit_[from] - p + 2 * kf;
    const double pf = size_[from] == 1 ? 0.0 : flow_[from] - p;
    const double qt = exit_[to] + p - 2 * kt;
    const double total_exit = exit_total_ + (qf - exit_[from]) + (qt - exit_[to]);
    return plogp(total_exit) - plogp(exit_total_) -
           2 * (plogp(qf) - plogp(exit_[from]) + plogp(qt) - plogp(exit_[to])) + plogp(qf + pf) -
           plogp(exit_[from] + flow_[from]) + plogp(qt + flow_[to] + p) - plogp(exit_[to] + flow_[to]);
  }

  void move(int v, int to, const LinkMap& links_to) {
    const int from = module_of_[v];
    const double p = strength_[v] / total_;
    const double kf = static_cast<double>(lookup(links_to, from)) / total_;
    const double kt = static_cast<double>(lookup(links_to, to)) / total_;
    const double qf = size_[from] == 1 ? 0.0 : exit_[from] - p + 2 * kf;
    const double qt = exit_[to] + p - 2 * kt;
    exit_total_ += (qf - exit_[from]) + (qt - exit_[to]);
    exit_[from] = qf;
    exit_[to] = qt;
    flow_[from] = size_[from] == 1 ? 0.0 : flow_[from] - p;
    flow_[to] += p;
    move_links(v, to, links_to);
  }

 private:
  double total_ = 0;  // twice the total edge weight
  double node_entropy_ = 0;
  double exit_total_ = 0;
  std::vector<double> strength_;
  std::vector<double> flow_;
  std::vector<double> exit_;
};

/// Assignment, module-matrix and link-placement bits over the simple graph.
class ModuleMatrixState : public ModuleLinks<false> {
 public:
  ModuleMatrixState(const CoauthorNetwork& net, std::vector<int> assignment)
      : ModuleLinks<false>(net, std::move(assignment)), links_(static_cast<double>(net.edge_count())) {}

  double code_length() const {
    double total = global_terms(module_count_);
    for (std::size_t a = 0; a < size_.size(); ++a) {
      if (size_[a] == 0) continue;
      total += log2_binomial(pairs_within(size_[a]), static_cast<double>(internal_[a]));
      for (const auto& [b, l] : between_[a])
        if (b > static_cast<int>(a)) total += log2_binomial(double(size_[a]) * size_[b], static_cast<double>(l));
    }
    return total;
  }

  double merge_global_delta() const { return global_terms(module_count_ - 1) - global_terms(module_count_); }

  double merge_local_delta(int a, int b) const {
    const double na = size_[a], nb = size_[b], nab = na + nb;
    const double lab = static_cast<double>(link(a, b));
    const double ia = static_cast<double>(internal_[a]), ib = static_cast<double>(internal_[b]);
    double d = log2_binomial(pairs_within(nab), ia + ib + lab) - log2_binomial(pairs_within(na), ia) -
               log2_binomial(pairs_within(nb), ib) - log2_binomial(na * nb, lab);
    for (const auto& [c, lac] : between_[a]) {
      if (c == b) continue;
      const double nc = size_[c], lbc = static_cast<double>(link(b, c));
      d += log2_binomial(nab * nc, static_cast<double>(lac) + lbc) - log2_binomial(na * nc, static_cast<double>(lac)) -
           log2_binomial(nb * nc, lbc);
    }
    for (const auto& [c, lbc] : between_[b]) {
      if (c == a || between_[a].contains(c)) continue;
      d += log2_binomial(nab * size_[c], static_cast<double>(lbc)) -
           log2_binomial(nb * size_[c], static_cast<double>(lbc));
    }
    return d;
  }

  void merge(int into, int from) { merge_links(into, from); }

  double move_delta(int v, int to, const LinkMap& links_to) const {
    const int from = module_of_[v];
    const double nf = size_[from], nt = size_[to];
    const double kf = static_cast<double>(lookup(links_to, from)), kt = static_cast<double>(lookup(links_to, to));
    const double in_from = static_cast<double>(internal_[from]), in_to = static_cast<double>(internal_[to]);
    double d = log2_binomial(pairs_within(nf - 1), in_from - kf) - log2_binomial(pairs_within(nf), in_from) +
               log2_binomial(pairs_within(nt + 1), in_to + kt) - log2_binomial(pairs_within(nt), in_to);
    const double lft = static_cast<double>(link(from, to));
    d += log2_binomial((nf - 1) * (nt + 1), lft + kf - kt) - log2_binomial(nf * nt, lft);
    for (const auto& [c, l] : between_[from]) {
      if (c == to) continue;
      const double nc = size_[c];
      d += log2_binomial((nf - 1) * nc, static_cast<double>(l - lookup(links_to, c))) -
           log2_binomial(nf * nc, static_cast<double>(l));
    }
    for (const auto& [c, l] : between_[to]) {
      if (c == from) continue;
      const double nc = size_[c];
      d += log2_binomial((nt + 1) * nc, static_cast<double>(l + lookup(links_to, c))) -
           log2_binomial(nt * nc, static_cast<double>(l));
    }
    for (const auto& [c, k] : links_to) {
      if (c == from || c == to || between_[to].contains(c)) continue;
      d += log2_binomial((nt + 1) * size_[c], static_cast<double>(k));
    }
    if (nf == 1) d += global_terms(module_count_ - 1) - global_terms(module_count_);
    return d;
  }

  void move(int v, int to, const LinkMap& links_to) { move_links(v, to, links_to); }

 private:
  double global_terms(double modules) const {
    if (modules <= 1) return modules == 1 && links_ > 0 ? std::log2(links_) : 0.0;
    return static_cast<double>(net_.size()) * std::log2(modules) +
           0.5 * modules * (modules + 1) * std::log2(links_);
  }

  double links_;
};

inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// True when module `module` stays connected after removing node `removed`
/// (`remaining` members are left).
inline bool connected_without(const CoauthorNetwork& net, const std::vector<int>& module_of, int module, int removed,
                              int remaining) {
  if (remaining <= 1) return true;
  int start = -1;
  for (const auto& nb : net.neighbors(removed))
    if (module_of[nb.node] == module) {
      start = nb.node;
      break;
    }
  if (start < 0) return false;
  std::vector<int> stack{start};
  std::unordered_map<int, bool> seen{{start, true}, {removed, true}};
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& nb : net.neighbors(v)) {
      if (module_of[nb.node] != module || seen.contains(nb.node)) continue;
      seen[nb.node] = true;
      ++reached;
      stack.push_back(nb.node);
    }
  }
  return reached == remaining;
}

template <typename State>
double component_length(const CoauthorNetwork& connected, std::vector<int> assignment) {
  if (connected.size() <= 1) return 0.0;
  return State(connected, std::move(assignment)).code_length();
}

}  // namespace detail

/// Description length (bits) of a clustering: the sum over connected
/// components of the objective evaluated on each component. `assignment`
/// maps nodes to arbitrary non-negative module ids.
inline double description_length(const CoauthorNetwork& net, std::span<const int> assignment,
                                 Objective objective = Objective::map_equation) {
  if (assignment.size() != net.size()) throw Error("assignment size mismatch");
  double total = 0;
  for (const auto& nodes : component_members(net)) {
    auto sub = net.induced(nodes);
    std::map<int, int> dense;
    std::vector<int> local;
    for (int v : nodes)
      local.push_back(dense.try_emplace(assignment[v], static_cast<int>(dense.size())).first->second);
    total += objective == Objective::map_equation ? detail::component_length<detail::MapEquationState>(sub, local)
                                                  : detail::component_length<detail::ModuleMatrixState>(sub, local);
  }
  return total;
}

/// Objective values visited by the search, for inspection in tests.
struct DetectionTrace {
  std::vector<double> merge_phase;   // after each accepted merge
  std::vector<double> refine_phase;  // after each accepted node move
};

namespace detail {

struct MergeCandidate {
  double delta;
  std::uint64_t tie;
  int a, b;
  bool operator>(const MergeCandidate& o) const { return delta != o.delta ? delta > o.delta : tie > o.tie; }
};

inline constexpr double kImprovement = 1e-10;

/// Greedy agglomeration: repeatedly merges the adjacent module pair with the
/// largest reduction until no merge reduces the objective. Keys are refreshed
/// lazily when popped. Returns true if any merge happened.
template <typename State>
bool merge_phase(State& state, std::mt19937_64& rng, DetectionTrace* trace, std::vector<std::vector<int>>& members) {
  bool merged_any = false;
  for (;;) {
    std::vector<MergeCandidate> initial;
    for (std::size_t a = 0; a < state.id_capacity(); ++a) {
      if (state.size(static_cast<int>(a)) == 0) continue;
      for (const auto& [b, l] : state.between(static_cast<int>(a)))
        if (b > static_cast<int>(a))
          initial.push_back({state.merge_local_delta(static_cast<int>(a), b), rng(), static_cast<int>(a), b});
    }
    std::priority_queue<MergeCandidate, std::vector<MergeCandidate>, std::greater<>> heap(std::greater<>{},
                                                                                           std::move(initial));
    bool merged_this_round = false;
    while (!heap.empty() && state.module_count() > 1) {
      auto top = heap.top();
      heap.pop();
      if (state.size(top.a) == 0 || state.size(top.b) == 0 || !state.between(top.a).contains(top.b)) continue;
      double fresh = state.merge_local_delta(top.a, top.b);
      if (!heap.empty() && fresh > heap.top().delta + kImprovement) {
        heap.push({fresh, top.tie, top.a, top.b});
        continue;
      }
      // Stale keys may hide an improving pair; the outer loop rebuilds the heap.
      if (fresh + state.merge_global_delta() >= -kImprovement) break;
      int into = top.a, from = top.b;
      if (members[into].size() < members[from].size()) std::swap(into, from);
      state.merge(into, from);
      state.reassign_members(members[from], into);
      members[into].insert(members[into].end(), members[from].begin(), members[from].end());
      members[from].clear();
      merged_this_round = merged_any = true;
      if (trace) trace->merge_phase.push_back(state.code_length());
      for (const auto& [c, l] : state.between(into))
        heap.push({state.merge_local_delta(into, c), rng(), std::min(into, c), std::max(into, c)});
    }
    if (!merged_this_round) return merged_any;
  }
}

/// Single-node reassignment to a neighboring module until no move reduces the
/// objective. Moves that would disconnect the source module are rejected.
template <typename State>
bool refine_phase(State& state, std::mt19937_64& rng, DetectionTrace* trace, const CoauthorNetwork& net,
                  int max_sweeps = 50) {
  std::vector<int> order(net.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> candidates;
  bool moved_any = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    bool moved = false;
    for (int v : order) {
      auto links = state.links_of(v);
      const int from = state.module_of(v);
      candidates.clear();
      for (const auto& [c, k] : links)
        if (c != from) candidates.push_back(c);
      std::sort(candidates.begin(), candidates.end());
      int best = -1;
      double best_delta = -kImprovement;
      for (int c : candidates) {
        double d = state.move_delta(v, c, links);
        if (d < best_delta) {
          best_delta = d;
          best = c;
        }
      }
      if (best < 0) continue;
      if (!connected_without(net, state.assignment(), from, v, state.size(from) - 1)) continue;
      state.move(v, best, links);
      moved = moved_any = true;
      if (trace) trace->refine_phase.push_back(state.code_length());
    }
    if (!moved) break;
  }
  return moved_any;
}

struct TrialResult {
  std::vector<int> assignment;
  double quality = 0;
};

template <typename State>
TrialResult run_trial(const CoauthorNetwork& net, std::uint64_t seed, DetectionTrace* trace) {
  std::mt19937_64 rng(seed);
  std::vector<int> singletons(net.size());
  std::iota(singletons.begin(), singletons.end(), 0);
  State state(net, singletons);
  std::vector<std::vector<int>> members(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) members[v] = {static_cast<int>(v)};
  for (int round = 0; round < 20; ++round) {
    bool merged = merge_phase(state, rng, trace, members);
    bool moved = refine_phase(state, rng, trace, net);
    if (moved) {
      for (auto& m : members) m.clear();
      for (std::size_t v = 0; v < net.size(); ++v)
        members[state.module_of(static_cast<int>(v))].push_back(static_cast<int>(v));
    }
    if (!merged && !moved) break;
  }
  TrialResult out{state.assignment(), State(net, state.assignment()).code_length()};
  std::vector<int> whole(net.size(), 0);
  double one_module = State(net, whole).code_length();
  if (one_module < out.quality) out = {std::move(whole), one_module};
  return out;
}

/// Best of `trials` restarts on a connected network.
template <typename State>
TrialResult detect_connected(const CoauthorNetwork& net, std::uint64_t seed, int trials, DetectionTrace* trace) {
  if (net.size() == 1) return {{0}, 0.0};
  std::vector<TrialResult> results(trials);
  std::vector<DetectionTrace> traces(trace ? trials : 0);
  auto one = [&](int t) {
    return run_trial<State>(net, mix_seed(seed + static_cast<std::uint64_t>(t)), trace ? &traces[t] : nullptr);
  };
  if (trials == 1 || net.size() < 2000) {
    for (int t = 0; t < trials; ++t) results[t] = one(t);
  } else {
    std::vector<std::future<TrialResult>> futures;
    for (int t = 0; t < trials; ++t) futures.push_back(std::async(std::launch::async, one, t));
    for (int t = 0; t < trials; ++t) results[t] = futures[t].get();
  }
  int best = 0;
  for (int t = 1; t < trials; ++t)
    if (results[t].quality < results[best].quality - kImprovement) best = t;
  if (trace) *trace = std::move(traces[best]);
  return std::move(results[best]);
}

}  // namespace detail

/// True when every cluster induces a connected subgraph.
inline bool clusters_connected(const CoauthorNetwork& net, const Clustering& c) {
  for (const auto& members : c.members()) {
    if (members.size() <= 1) continue;
    int count = 0;
    connected_components(net.induced(members), &count);
    if (count != 1) return false;
  }
  return true;
}

/// Partitions `net` into clusters. Each connected component is clustered on
/// its own with `trials` seeded restarts; the lowest description length wins.
/// `quality` is the sum of the per-component lengths. Deterministic for fixed
/// (net, seed, trials, objective). `trace` records the first component's search.
inline Clustering detect_communities(const CoauthorNetwork& net, std::uint64_t seed, int trials,
                                     Objective objective = Objective::map_equation,
                                     DetectionTrace* trace = nullptr) {
  if (net.empty()) throw Error("empty network");
  if (trials < 1) throw Error("trials must be at least 1");
  std::vector<int> raw(net.size(), 0);
  double quality = 0;
  int next = 0;
  auto components = component_members(net);
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto& nodes = components[ci];
    auto sub = net.induced(nodes);
    DetectionTrace* t = ci == 0 ? trace : nullptr;
    auto result = objective == Objective::map_equation
                      ? detail::detect_connected<detail::MapEquationState>(sub, seed, trials, t)
                      : detail::detect_connected<detail::ModuleMatrixState>(sub, seed, trials, t);
    quality += result.quality;
    std::map<int, int> local;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto [it, inserted] = local.try_emplace(result.assignment[i], next);
      if (inserted) ++next;
      raw[nodes[i]] = it->second;
    }
  }
  Clustering c;
  c.cluster_of = canonical_labels(raw);
  c.cluster_count = next;
  c.quality = quality;
  c.seed = seed;
  if (!clusters_connected(net, c)) throw Error("internal error: detected cluster is not connected");
  return c;
}

/// Builds a clustering from ids listed in network vertex order (CLU text).
/// `vertex_order`, when given, maps file positions to node indices.
inline Clustering load_clustering(std::string_view clu_text, const CoauthorNetwork& net,
                                  std::span<const int> vertex_order = {},
                                  Objective objective = Objective::map_equation) {
  auto ids = import_clu(clu_text);
  if (ids.size() != net.size())
    throw Error("clustering lists " + std::to_string(ids.size()) + " vertices but the network has " +
                std::to_string(net.size()));
  std::vector<int> raw(net.size());
  for (std::size_t i = 0; i < ids.size(); ++i) raw[vertex_order.empty() ? i : vertex_order[i]] = ids[i];
  Clustering c;
  c.cluster_of = canonical_labels(raw);
  c.cluster_count = c.cluster_of.empty() ? 0 : *std::max_element(c.cluster_of.begin(), c.cluster_of.end());
  c.quality = description_length(net, c.cluster_of, objective);
  return c;
}

inline std::string export_clu(const Clustering& c) { return export_clu(std::span<const int>(c.cluster_of)); }

struct ClusterInfo {
  int id = 0;
  std::vector<int> members;  // node indices, ascending
  int size = 0;
  int publications = 0;  // distinct records with at least one member author
  SizeCategory size_category = SizeCategory::small;
  std::size_t internal_edges = 0;
  CoauthorNetwork subgraph;
};

/// Record indices per author key, for publication and activity lookups.
class AuthorRecordIndex {
 public:
  explicit AuthorRecordIndex(const Corpus& corpus) : corpus_(&corpus) {
    for (std::size_t r = 0; r < corpus.records.size(); ++r)
      for (const auto& a : corpus.records[r].authors) index_[a].push_back(static_cast<int>(r));
  }
  std::span<const int> records_of(const AuthorKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return {};
    return it->second;
  }
  /// Distinct records touched by any of the given nodes' authors, ascending.
  std::vector<int> records_of_nodes(const CoauthorNetwork& net, std::span<const int> nodes) const {
    std::vector<int> out;
    for (int v : nodes) {
      auto r = records_of(net.node(v).key);
      out.insert(out.end(), r.begin(), r.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  const Corpus& corpus() const { return *corpus_; }

 private:
  const Corpus* corpus_;
  std::map<AuthorKey, std::vector<int>> index_;
};

/// Per-cluster size, publication count, internal link count and induced
/// subgraph. Publications come from `corpus` when given, otherwise from the
/// network's provenance.
inline std::vector<ClusterInfo> cluster_aggregates(const CoauthorNetwork& net, const Clustering& clustering,
                                                   const Corpus* corpus = nullptr) {
  if (clustering.cluster_of.size() != net.size()) throw Error("clustering does not match network");
  std::optional<AuthorRecordIndex> index;
  if (corpus) index.emplace(*corpus);
  std::vector<ClusterInfo> out;
  auto members = clustering.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    ClusterInfo info;
    info.id = static_cast<int>(i) + 1;
    info.members = std::move(members[i]);
    info.size = static_cast<int>(info.members.size());
    info.size_category = size_category(info.size);
    info.subgraph = net.induced(info.members);
    info.internal_edges = info.subgraph.edge_count();
    if (index) {
      info.publications = static_cast<int>(index->records_of_nodes(net, info.members).size());
    } else if (net.has_provenance()) {
      std::vector<std::string> ids;
      for (int v : info.members) ids.insert(ids.end(), net.provenance(v).begin(), net.provenance(v).end());
      std::sort(ids.begin(), ids.end());
      info.publications = static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
    }
    out.push_back(std::move(info));
  }
  return out;
}

struct SizePercentiles {
  double min = 0, p10 = 0, p25 = 0, median = 0, p75 = 0, p90 = 0, max = 0;
};

struct ClusterSizeSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  SizePercentiles percentiles;
};

inline SizePercentiles size_percentiles(const std::vector<double>& sizes) {
  SizePercentiles p;
  if (sizes.empty()) return p;
  p.min = *std::min_element(sizes.begin(), sizes.end());
  p.max = *std::max_element(sizes.begin(), sizes.end());
  p.p10 = percentile(sizes, 0.10);
  p.p25 = percentile(sizes, 0.25);
  p.median = median(sizes);
  p.p75 = percentile(sizes, 0.75);
  p.p90 = percentile(sizes, 0.90);
  return p;
}

inline ClusterSizeSummary summarize_sizes(const std::vector<ClusterInfo>& clusters) {
  ClusterSizeSummary s;
  std::vector<double> sizes;
  for (const auto& c : clusters) sizes.push_back(c.size);
  s.count = sizes.size();
  if (sizes.empty()) return s;
  s.mean = std::accumulate(sizes.begin(), sizes.end(), 0.0) / static_cast<double>(sizes.size());
  s.median = median(sizes);
  s.percentiles = size_percentiles(sizes);
  return s;
}

/// Normalized mutual information 2 I(X;Y) / (H(X) + H(Y)) of two labelings of
/// the same items; 1 when both are a single block.
inline double normalized_mutual_information(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw Error("labelings differ in length");
  if (x.empty()) throw Error("empty labeling");
  const double n = static_cast<double>(x.size());
  std::map<int, double> px, py;
  std::map<std::pair<int, int>, double> pxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1;
    py[y[i]] += 1;
    pxy[{x[i], y[i]}] += 1;
  }
  auto entropy = [&](const std::map<int, double>& p) {
    double h = 0;
    for (const auto& [k, c] : p) h -= c / n * std::log(c / n);
    return h;
  };
  const double hx = entropy(px), hy = entropy(py);
  if (hx + hy == 0) return 1.0;
  double mi = 0;
  for (const auto& [k, c] : pxy) mi += c / n * std::log(c * n / (px[k.first] * py[k.second]));
  return std::clamp(2 * mi / (hx + hy), 0.0, 1.0);
}

}  // namespace coauthor
