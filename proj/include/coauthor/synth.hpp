// Synthetic corpora with planted research groups, migrations and m-m
// collaborations, plus the ground truth needed to score clustering and
// connection classification against them.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coauthor/ingest.hpp"

namespace coauthor {

enum class GroupStructure { star, multi_hub, hubless };

inline std::string_view to_string(GroupStructure s) {
  switch (s) {
    case GroupStructure::star: return "star";
    case GroupStructure::multi_hub: return "multi_hub";
    case GroupStructure::hubless: return "hubless";
  }
  return "?";
}

inline GroupStructure parse_group_structure(std::string_view s) {
  if (s == "star") return GroupStructure::star;
  if (s == "multi_hub") return GroupStructure::multi_hub;
  if (s == "hubless") return GroupStructure::hubless;
  throw Error("unknown group structure '" + std::string(s) + "'");
}

struct PlannedMigration {
  int from = 0;  // 1-based group ids
  int to = 0;
};

struct PlannedCollaboration {
  int group_a = 0;
  int group_b = 0;
  bool pi_link = false;  // both lead authors sign the joint paper
};

struct PlantedSpec {
  std::uint64_t seed = 1;
  int groups = 10;
  int size_min = 8;
  int size_max = 14;
  std::vector<GroupStructure> structures = {GroupStructure::star, GroupStructure::multi_hub, GroupStructure::hubless};
  int first_year = 1991;
  int last_year = 2011;
  int random_migrations = 0;
  int random_collaborations = 0;
  int random_collaborations_with_pi = 0;  // how many of the random ones include both PIs
  std::vector<PlannedMigration> migrations;
  std::vector<PlannedCollaboration> collaborations;
  std::vector<std::string> countries = {"GERMANY", "FRANCE", "UK",    "ITALY",  "USA",   "CANADA",
                                        "CHINA",   "JAPAN",  "INDIA", "BRAZIL", "AUSTRALIA"};
  double mixed_country_share = 0.2;  // groups whose members split over two countries
  double guest_share = 0.1;          // chance a group paper gets a one-off extra author
  int min_references = 5;
  int max_references = 40;
};

/// Reads a flat key=value spec. `migration = a,b` and
/// `collaboration = a,b,pi|nopi` may repeat.
inline PlantedSpec parse_planted_spec(std::string_view text) {
  PlantedSpec s;
  std::size_t number = 0;
  auto to_int = [&](std::string_view v) {
    auto x = text::parse_int<long long>(v);
    if (!x) throw ParseError("expected an integer, got '" + std::string(v) + "'", number);
    return *x;
  };
  auto to_real = [&](std::string_view v) {
    auto x = text::parse_double(v);
    if (!x) throw ParseError("expected a number, got '" + std::string(v) + "'", number);
    return *x;
  };
  for (auto line : text::lines(text)) {
    ++number;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", number);
    auto key = text::trim(t.substr(0, eq));
    auto value = text::trim(t.substr(eq + 1));
    auto list = [&] {
      std::vector<std::string> out;
      for (auto& item : text::split(value, ',')) out.emplace_back(text::trim(item));
      return out;
    };
    if (key == "seed") s.seed = static_cast<std::uint64_t>(to_int(value));
    else if (key == "groups") s.groups = static_cast<int>(to_int(value));
    else if (key == "size_min") s.size_min = static_cast<int>(to_int(value));
    else if (key == "size_max") s.size_max = static_cast<int>(to_int(value));
    else if (key == "first_year") s.first_year = static_cast<int>(to_int(value));
    else if (key == "last_year") s.last_year = static_cast<int>(to_int(value));
    else if (key == "migrations") s.random_migrations = static_cast<int>(to_int(value));
    else if (key == "collaborations") s.random_collaborations = static_cast<int>(to_int(value));
    else if (key == "collaborations_with_pi") s.random_collaborations_with_pi = static_cast<int>(to_int(value));
    else if (key == "mixed_country_share") s.mixed_country_share = to_real(value);
    else if (key == "guest_share") s.guest_share = to_real(value);
    else if (key == "min_references") s.min_references = static_cast<int>(to_int(value));
    else if (key == "max_references") s.max_references = static_cast<int>(to_int(value));
    else if (key == "countries") s.countries = list();
    else if (key == "structures") {
      s.structures.clear();
      for (auto& item : list()) s.structures.push_back(parse_group_structure(item));
    } else if (key == "migration") {
      auto v = list();
      if (v.size() != 2) throw ParseError("migration expects from,to", number);
      s.migrations.push_back({static_cast<int>(to_int(v[0])), static_cast<int>(to_int(v[1]))});
    } else if (key == "collaboration") {
      auto v = list();
      if (v.size() != 3 || (v[2] != "pi" && v[2] != "nopi"))
        throw ParseError("collaboration expects a,b,pi|nopi", number);
      s.collaborations.push_back({static_cast<int>(to_int(v[0])), static_cast<int>(to_int(v[1])), v[2] == "pi"});
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", number);
    }
  }
  return s;
}

struct PlantedGroup {
  int id = 0;
  GroupStructure structure = GroupStructure::star;
  std::array<bool, 3> active{};  // per time slice
  std::vector<AuthorKey> members;  // lead author first
  std::vector<std::string> countries;  // 1 or 2
};

struct PlantedEvent {
  enum class Kind { migration, collaboration };
  Kind kind = Kind::migration;
  int group_a = 0;  // migration: origin group
  int group_b = 0;
  bool pi_link = false;
  std::vector<AuthorKey> side_a;  // migration: the migrating author
  std::vector<AuthorKey> side_b;  // migration: hosting lead author and member
};

struct GroundTruth {
  std::vector<PlantedGroup> groups;
  std::vector<PlantedEvent> events;

  /// Group id of each planted author (one-off guests are absent).
  std::map<AuthorKey, int> membership() const {
    std::map<AuthorKey, int> out;
    for (const auto& g : groups)
      for (const auto& m : g.members) out[m] = g.id;
    return out;
  }
};

struct SyntheticCorpus {
  std::vector<PublicationRecord> records;
  GroundTruth truth;
};

namespace detail {

// Portable bounded draws on top of mt19937_64, whose output sequence is fixed
// by the standard (the std distributions are not).
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(static_cast<int>(i)))]);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string synthetic_surname(SynthRng& rng) {
  static constexpr std::array<std::string_view, 24> onsets = {"B", "D", "F", "G", "H", "K", "L", "M",
                                                              "N", "P", "R", "S", "T", "V", "W", "Z",
                                                              "Br", "Ch", "Kr", "St", "Tr", "Gr", "Sch", "Pl"};
  static constexpr std::array<std::string_view, 8> vowels = {"a", "e", "i", "o", "u", "ei", "au", "ie"};
  static constexpr std::array<std::string_view, 10> codas = {"", "n", "r", "l", "s", "m", "rt", "nd", "ck", "th"};
  std::string s;
  int syllables = rng.between(2, 3);
  for (int i = 0; i < syllables; ++i) {
    std::string_view onset = onsets[rng.below(onsets.size())];
    s += i == 0 ? std::string(onset) : text::to_lower(onset);
    s += vowels[rng.below(vowels.size())];
    s += codas[rng.below(codas.size())];
  }
  return s;
}

}  // namespace detail

inline void validate(const PlantedSpec& s) {
  if (s.groups < 1) throw Error("spec needs at least one group");
  if (s.size_min < 4 || s.size_max < s.size_min) throw Error("group sizes must satisfy 4 <= size_min <= size_max");
  if (s.structures.empty()) throw Error("spec needs at least one group structure");
  if (s.last_year - s.first_year + 1 < 3) throw Error("year span must cover at least three years");
  if (s.countries.empty()) throw Error("spec needs at least one country");
  if (s.min_references < 2 || s.max_references < s.min_references)
    throw Error("reference counts must satisfy 2 <= min_references <= max_references");
  if (s.random_collaborations_with_pi < 0 || s.random_collaborations_with_pi > s.random_collaborations)
    throw Error("collaborations_with_pi exceeds collaborations");
  if (s.random_migrations < 0 || s.random_collaborations < 0) throw Error("event counts must be non-negative");
  const bool events = s.random_migrations + s.random_collaborations > 0 || !s.migrations.empty() ||
                      !s.collaborations.empty();
  if (events && s.groups < 2) throw Error("inter-group events need at least two groups");
  std::set<std::pair<int, int>> pairs;
  auto check = [&](int a, int b) {
    if (a < 1 || a > s.groups || b < 1 || b > s.groups)
      throw Error("event references missing group " + std::to_string(a < 1 || a > s.groups ? a : b));
    if (a == b) throw Error("event joins group " + std::to_string(a) + " to itself");
    if (!pairs.insert(std::minmax(a, b)).second)
      throw Error("group pair " + std::to_string(a) + "," + std::to_string(b) + " used by two events");
  };
  for (const auto& m : s.migrations) check(m.from, m.to);
  for (const auto& c : s.collaborations) check(c.group_a, c.group_b);
  const long long available = static_cast<long long>(s.groups) * (s.groups - 1) / 2 - static_cast<long long>(pairs.size());
  if (s.random_migrations + s.random_collaborations > available) throw Error("not enough distinct group pairs for events");
}

/// Builds a corpus from `spec`. The same spec always yields the same corpus.
///
/// Every planted author publishes at least two papers, and each group's lead
/// author ends with at least two papers more than any other member. A
/// migration is one paper of a member of the origin group with the lead
/// author and one member of the host group; a collaboration is one paper
/// signed by three members of each group. Each author joins at most one event
/// (lead authors excepted) and each group pair carries at most one event.
inline SyntheticCorpus generate(const PlantedSpec& spec) {
  validate(spec);
  detail::SynthRng rng(spec.seed);
  SyntheticCorpus out;
  auto& truth = out.truth;

  const int span = spec.last_year - spec.first_year + 1;
  const int base = span / 3, extra = span % 3;
  std::array<std::pair<int, int>, 3> slices;
  for (int s = 0, y = spec.first_year; s < 3; ++s) {
    int len = base + (s < extra ? 1 : 0);
    slices[s] = {y, y + len - 1};
    y += len;
  }
  static constexpr std::array<std::array<bool, 3>, 6> windows = {
      {{true, true, true}, {true, true, true}, {false, true, true}, {false, false, true}, {true, true, false},
       {true, false, false}}};

  std::set<std::string> used_names;
  auto fresh_key = [&] {
    for (;;) {
      std::string initials;
      int n = rng.between(1, 2);
      for (int i = 0; i < n; ++i) initials.push_back(static_cast<char>('A' + rng.below(26)));
      AuthorKey key(detail::synthetic_surname(rng), initials);
      if (used_names.insert(key.text()).second) return key;
    }
  };

  struct Paper {
    int year;
    std::vector<int> authors;  // global author ids
  };
  std::vector<AuthorKey> keys;
  std::vector<std::string> home_country;
  std::vector<int> group_of;
  std::vector<int> papers_of;
  std::vector<Paper> papers;
  std::vector<std::set<int>> coauthors;

  auto year_in = [&](const std::array<bool, 3>& active) {
    std::vector<int> slots;
    for (int s = 0; s < 3; ++s)
      if (active[s]) slots.push_back(s);
    auto [lo, hi] = slices[slots[rng.below(static_cast<int>(slots.size()))]];
    return rng.between(lo, hi);
  };
  auto add_paper = [&](int year, std::vector<int> authors) {
    for (int a : authors) {
      ++papers_of[a];
      for (int b : authors)
        if (a != b) coauthors[a].insert(b);
    }
    papers.push_back({year, std::move(authors)});
  };
  auto new_author = [&](int group, const std::string& country) {
    keys.push_back(fresh_key());
    home_country.push_back(country);
    group_of.push_back(group);
    papers_of.push_back(0);
    coauthors.emplace_back();
    return static_cast<int>(keys.size()) - 1;
  };

  std::vector<std::vector<int>> members(spec.groups);
  for (int g = 0; g < spec.groups; ++g) {
    PlantedGroup pg;
    pg.id = g + 1;
    pg.structure = spec.structures[g % spec.structures.size()];
    pg.active = windows[rng.below(windows.size())];
    pg.countries.push_back(spec.countries[rng.below(static_cast<int>(spec.countries.size()))]);
    if (spec.countries.size() > 1 && rng.unit() < spec.mixed_country_share) {
      std::string second;
      do second = spec.countries[rng.below(static_cast<int>(spec.countries.size()))];
      while (second == pg.countries.front());
      pg.countries.push_back(second);
    }
    const int size = rng.between(spec.size_min, spec.size_max);
    for (int i = 0; i < size; ++i) {
      const auto& country = pg.countries.size() > 1 && i % 3 == 2 ? pg.countries[1] : pg.countries[0];
      members[g].push_back(new_author(pg.id, country));
    }
    truth.groups.push_back(std::move(pg));
  }

  auto guest = [&](int g, std::vector<int>& authors) {
    if (rng.unit() < spec.guest_share) authors.push_back(new_author(0, truth.groups[g].countries.front()));
  };

  // Group-internal papers.
  constexpr int kInternalPasses = 3;
  for (int g = 0; g < spec.groups; ++g) {
    const auto& m = members[g];
    const auto& active = truth.groups[g].active;
    const int lead = m[0];
    std::vector<int> rest(m.begin() + 1, m.end());
    switch (truth.groups[g].structure) {
      case GroupStructure::star:
        // Lead author on every paper; each pass gives every member one paper.
        for (int pass = 0; pass < kInternalPasses; ++pass) {
          rng.shuffle(rest);
          for (std::size_t i = 0; i < rest.size();) {
            std::size_t chunk = std::min<std::size_t>(static_cast<std::size_t>(rng.between(1, 3)), rest.size() - i);
            std::vector<int> authors = {lead};
            authors.insert(authors.end(), rest.begin() + static_cast<long>(i), rest.begin() + static_cast<long>(i + chunk));
            guest(g, authors);
            add_paper(year_in(active), std::move(authors));
            i += chunk;
          }
        }
        break;
      case GroupStructure::multi_hub: {
        // Two or three hubs share papers; the others attach to one hub per paper.
        const int hubs = std::min<int>(rng.between(2, 3), static_cast<int>(m.size()) - 2);
        std::vector<int> hub_ids(m.begin(), m.begin() + hubs);
        std::vector<int> others(m.begin() + hubs, m.end());
        for (int k = 0; k < 2; ++k) add_paper(year_in(active), hub_ids);
        for (int pass = 0; pass < kInternalPasses; ++pass) {
          rng.shuffle(others);
          for (std::size_t i = 0; i < others.size(); i += 2) {
            std::vector<int> authors = {hub_ids[(i / 2 + static_cast<std::size_t>(pass)) % hub_ids.size()]};
            authors.insert(authors.end(), others.begin() + static_cast<long>(i),
                           others.begin() + static_cast<long>(std::min(i + 2, others.size())));
            guest(g, authors);
            add_paper(year_in(active), std::move(authors));
          }
        }
        break;
      }
      case GroupStructure::hubless: {
        // A ring of pair papers plus random triples.
        std::vector<int> ring = m;
        rng.shuffle(ring);
        for (std::size_t i = 0; i < ring.size(); ++i) {
          std::vector<int> authors = {ring[i], ring[(i + 1) % ring.size()]};
          guest(g, authors);
          add_paper(year_in(active), std::move(authors));
        }
        const int triples = static_cast<int>(m.size());
        for (int t = 0; t < triples; ++t) {
          std::vector<int> pick = m;
          rng.shuffle(pick);
          pick.resize(3);
          add_paper(year_in(active), std::move(pick));
        }
        break;
      }
    }
  }

  // Events on distinct group pairs.
  std::set<std::pair<int, int>> used_pairs;
  std::vector<char> in_event(keys.size(), 0);
  for (const auto& mg : spec.migrations) used_pairs.insert(std::minmax(mg.from, mg.to));
  for (const auto& c : spec.collaborations) used_pairs.insert(std::minmax(c.group_a, c.group_b));
  auto random_pair = [&] {
    for (;;) {
      int a = rng.between(1, spec.groups), b = rng.between(1, spec.groups);
      if (a != b && used_pairs.insert(std::minmax(a, b)).second) return std::make_pair(a, b);
    }
  };
  // Best-connected free non-lead members of a group.
  auto pick_members = [&](int group, std::size_t count) {
    std::vector<int> pool;
    for (std::size_t i = 1; i < members[group - 1].size(); ++i)
      if (!in_event[members[group - 1][i]]) pool.push_back(members[group - 1][i]);
    std::stable_sort(pool.begin(), pool.end(),
                     [&](int x, int y) { return coauthors[x].size() > coauthors[y].size(); });
    if (pool.size() < count) throw Error("group " + std::to_string(group) + " has too few free members for its events");
    pool.resize(count);
    for (int a : pool) in_event[a] = 1;
    return pool;
  };
  auto event_year = [&](int a, int b) {
    std::array<bool, 3> both{};
    bool any = false;
    for (int s = 0; s < 3; ++s) {
      both[s] = truth.groups[a - 1].active[s] && truth.groups[b - 1].active[s];
      any = any || both[s];
    }
    return year_in(any ? both : truth.groups[b - 1].active);
  };
  auto plant_migration = [&](int from, int to) {
    auto mover = pick_members(from, 1);
    auto host = pick_members(to, 1);
    const int lead = members[to - 1][0];
    add_paper(event_year(from, to), {mover[0], lead, host[0]});
    PlantedEvent e;
    e.kind = PlantedEvent::Kind::migration;
    e.group_a = from;
    e.group_b = to;
    e.side_a = {keys[mover[0]]};
    e.side_b = {keys[lead], keys[host[0]]};
    truth.events.push_back(std::move(e));
  };
  auto plant_collaboration = [&](int a, int b, bool pi) {
    std::vector<int> side_a, side_b;
    if (pi) {
      side_a = pick_members(a, 2);
      side_a.insert(side_a.begin(), members[a - 1][0]);
      side_b = pick_members(b, 2);
      side_b.insert(side_b.begin(), members[b - 1][0]);
    } else {
      side_a = pick_members(a, 3);
      side_b = pick_members(b, 3);
    }
    std::vector<int> authors = side_a;
    authors.insert(authors.end(), side_b.begin(), side_b.end());
    add_paper(event_year(a, b), authors);
    PlantedEvent e;
    e.kind = PlantedEvent::Kind::collaboration;
    e.group_a = a;
    e.group_b = b;
    e.pi_link = pi;
    for (int x : side_a) e.side_a.push_back(keys[x]);
    for (int x : side_b) e.side_b.push_back(keys[x]);
    truth.events.push_back(std::move(e));
  };
  for (const auto& mg : spec.migrations) plant_migration(mg.from, mg.to);
  for (const auto& c : spec.collaborations) plant_collaboration(c.group_a, c.group_b, c.pi_link);
  for (int i = 0; i < spec.random_migrations; ++i) {
    auto [a, b] = random_pair();
    plant_migration(a, b);
  }
  for (int i = 0; i < spec.random_collaborations; ++i) {
    auto [a, b] = random_pair();
    plant_collaboration(a, b, i < spec.random_collaborations_with_pi);
  }

  // Lead-author margin: extra papers with the lead's least-published in-group co-author.
  for (int g = 0; g < spec.groups; ++g) {
    const auto& m = members[g];
    const int lead = m[0];
    for (int guard = 0; guard < 1000; ++guard) {
      int top_other = 0;
      for (std::size_t i = 1; i < m.size(); ++i) top_other = std::max(top_other, papers_of[m[i]]);
      if (papers_of[lead] >= top_other + 2) break;
      int partner = -1;
      for (int c : coauthors[lead])
        if (group_of[c] == g + 1 && (partner < 0 || papers_of[c] < papers_of[partner])) partner = c;
      if (partner < 0) partner = m[1];
      add_paper(year_in(truth.groups[g].active), {lead, partner});
    }
  }

  for (int g = 0; g < spec.groups; ++g)
    for (int a : members[g]) truth.groups[g].members.push_back(keys[a]);

  int serial = 0;
  for (const auto& p : papers) {
    PublicationRecord rec;
    char id[32];
    std::snprintf(id, sizeof id, "SYN%06d", ++serial);
    rec.id = id;
    rec.year = p.year;
    for (int a : p.authors) {
      rec.authors.push_back(keys[a]);
      rec.countries.push_back(home_country[a]);
    }
    rec.n_references = rng.between(spec.min_references, spec.max_references);
    out.records.push_back(std::move(rec));
  }
  return out;
}

inline constexpr std::string_view kGroundTruthHeader = "kind,group_a,group_b,detail,window,authors";

/// CSV ground truth: one `group` row per planted group (lead author first),
/// then one row per planted event.
inline std::string write_ground_truth(const GroundTruth& truth) {
  std::string out(kGroundTruthHeader);
  out.push_back('\n');
  auto join = [](const std::vector<AuthorKey>& keys) {
    std::string s;
    for (std::size_t i = 0; i < keys.size(); ++i) s += (i ? ";" : "") + keys[i].text();
    return s;
  };
  for (const auto& g : truth.groups) {
    std::string window;
    for (bool b : g.active) window.push_back(b ? '1' : '0');
    std::string countries;
    for (std::size_t i = 0; i < g.countries.size(); ++i) countries += (i ? "/" : "") + g.countries[i];
    out += csv::join_row({"group", std::to_string(g.id), "", std::string(to_string(g.structure)) + ":" + countries,
                          window, join(g.members)});
    out.push_back('\n');
  }
  for (const auto& e : truth.events) {
    const bool mig = e.kind == PlantedEvent::Kind::migration;
    out += csv::join_row({mig ? "migration" : "collaboration", std::to_string(e.group_a), std::to_string(e.group_b),
                          mig ? "" : (e.pi_link ? "pi" : "nopi"), "", join(e.side_a) + "|" + join(e.side_b)});
    out.push_back('\n');
  }
  return out;
}

inline GroundTruth parse_ground_truth(std::string_view text) {
  std::vector<std::size_t> line_numbers;
  auto rows = csv::parse(text, &line_numbers);
  if (rows.empty() || csv::join_row(rows[0]) != kGroundTruthHeader) throw Error("not a ground-truth file");
  auto keys_of = [](std::string_view list) {
    std::vector<AuthorKey> out;
    if (list.empty()) return out;
    for (auto& k : text::split(list, ';')) out.push_back(AuthorKey::from_text(k));
    return out;
  };
  GroundTruth truth;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 6) throw ParseError("expected 6 columns", line_numbers[r]);
    auto id = [&](const std::string& v) {
      auto x = text::parse_int<int>(v);
      if (!x) throw ParseError("bad group id '" + v + "'", line_numbers[r]);
      return *x;
    };
    if (row[0] == "group") {
      PlantedGroup g;
      g.id = id(row[1]);
      auto colon = row[3].find(':');
      g.structure = parse_group_structure(std::string_view(row[3]).substr(0, colon));
      if (colon != std::string::npos) g.countries = text::split(std::string_view(row[3]).substr(colon + 1), '/');
      if (row[4].size() != 3) throw ParseError("window must have three flags", line_numbers[r]);
      for (int s = 0; s < 3; ++s) g.active[s] = row[4][s] == '1';
      g.members = keys_of(row[5]);
      truth.groups.push_back(std::move(g));
    } else if (row[0] == "migration" || row[0] == "collaboration") {
      PlantedEvent e;
      e.kind = row[0] == "migration" ? PlantedEvent::Kind::migration : PlantedEvent::Kind::collaboration;
      e.group_a = id(row[1]);
      e.group_b = id(row[2]);
      e.pi_link = row[3] == "pi";
      auto bar = row[5].find('|');
      if (bar == std::string::npos) throw ParseError("event authors need a '|' separator", line_numbers[r]);
      e.side_a = keys_of(std::string_view(row[5]).substr(0, bar));
      e.side_b = keys_of(std::string_view(row[5]).substr(bar + 1));
      truth.events.push_back(std::move(e));
    } else {
      throw ParseError("unknown row kind '" + row[0] + "'", line_numbers[r]);
    }
  }
  return truth;
}

}  // namespace coauthor
