// Per-cluster summary rows (size, output, centralization, hubness, age,
// geography) and their CSV form, shared by the metrics, classify and report
// stages.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coauthor/cluster.hpp"
#include "coauthor/cohort.hpp"
#include "coauthor/geo.hpp"
#include "coauthor/graph.hpp"
#include "coauthor/meso.hpp"
#include "coauthor/metrics.hpp"

namespace coauthor {

inline constexpr int kAgeSlices = 3;

struct ClusterRow {
  int id = 0;
  int size = 0;
  int publications = 0;
  SizeCategory size_category = SizeCategory::small;
  std::size_t internal_edges = 0;
  std::string pi;  // lead author key
  std::optional<CentralizationIndices> centralization;
  std::string centralization_note;  // "n<3" or "largest component"
  int hub_count = 0;
  Hubness hubness = Hubness::none;
  std::optional<AgeClass> age;
  std::string geo = "unknown";
};

struct FieldData {
  std::string name;
  std::vector<ClusterRow> clusters;
  std::vector<InterClusterConnection> connections;
  RoleDistribution roles;
};

struct AnalysisInputs {
  const Corpus* corpus = nullptr;          // publications, age and geography
  const CountryTable* continents = nullptr;
};

/// Per-slice activity of a cluster. With a corpus, from the years of every
/// record signed by a member; otherwise from the nodes' slice bits.
inline std::optional<std::array<bool, 3>> cluster_activity(const CoauthorNetwork& net, std::span<const int> members,
                                                           const AuthorRecordIndex* index) {
  std::array<bool, 3> active{};
  if (index) {
    const auto& corpus = index->corpus();
    if (corpus.empty() || corpus.last_year - corpus.first_year + 1 < kAgeSlices) return std::nullopt;
    auto slices = partition_years(corpus.first_year, corpus.last_year, kAgeSlices);
    for (int r : index->records_of_nodes(net, members)) active[slice_of(slices, corpus.records[r].year)] = true;
  } else {
    for (int v : members)
      for (int s = 0; s < kAgeSlices; ++s)
        if (net.node(v).active_slices >> s & 1U) active[s] = true;
  }
  if (!active[0] && !active[1] && !active[2]) return std::nullopt;
  return active;
}

inline std::vector<ClusterRow> cluster_rows(const CoauthorNetwork& net, const std::vector<ClusterInfo>& clusters,
                                            std::span<const NodeRoleProfile> profiles, const AnalysisInputs& in) {
  std::optional<AuthorRecordIndex> index;
  if (in.corpus) index.emplace(*in.corpus);
  std::vector<ClusterRow> rows;
  for (const auto& c : clusters) {
    ClusterRow row;
    row.id = c.id;
    row.size = c.size;
    row.publications = c.publications;
    row.size_category = c.size_category;
    row.internal_edges = c.internal_edges;
    row.pi = net.node(principal_investigator(net, c.members)).key.text();
    if (c.size >= 3) {
      try {
        auto cent = centralization(c.subgraph);
        row.centralization = cent.indices;
        if (cent.disconnected) row.centralization_note = "largest component";
      } catch (const Error&) {
        row.centralization_note = "n<3";
      }
    } else {
      row.centralization_note = "n<3";
    }
    auto hub = cluster_hubness(c, profiles);
    row.hub_count = hub.hub_count;
    row.hubness = hub.value;
    if (auto act = cluster_activity(net, c.members, index ? &*index : nullptr)) row.age = age_cohort(*act);
    if (index && in.continents)
      row.geo = continent_affiliation(cluster_country_counts(c, net, *index), *in.continents).text();
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Everything the report needs for one field, computed in memory.
inline FieldData analyze_field(std::string name, const CoauthorNetwork& net, const Clustering& clustering,
                               const AnalysisInputs& in) {
  FieldData f;
  f.name = std::move(name);
  auto clusters = cluster_aggregates(net, clustering, in.corpus);
  auto profiles = node_profiles(net, clustering);
  f.roles = role_distribution(profiles);
  f.clusters = cluster_rows(net, clusters, profiles, in);
  f.connections = classify_connections(net, clustering, clusters);
  return f;
}

inline constexpr std::string_view kClusterCsvHeader =
    "id,size,publications,size_category,internal_edges,pi,degree_centralization,closeness_centralization,"
    "betweenness_centralization,centralization_note,hub_count,hubness,age_cohort,age_gap,geo";

inline std::string clusters_csv(std::span<const ClusterRow> rows) {
  std::string out(kClusterCsvHeader);
  out.push_back('\n');
  auto opt = [](const std::optional<CentralizationIndices>& c, double CentralizationIndices::*field) {
    return c ? text::format_double((*c).*field) : std::string{};
  };
  for (const auto& r : rows) {
    out += csv::join_row({std::to_string(r.id), std::to_string(r.size), std::to_string(r.publications),
                          std::string(to_string(r.size_category)), std::to_string(r.internal_edges), r.pi,
                          opt(r.centralization, &CentralizationIndices::degree),
                          opt(r.centralization, &CentralizationIndices::closeness),
                          opt(r.centralization, &CentralizationIndices::betweenness), r.centralization_note,
                          std::to_string(r.hub_count), std::string(to_string(r.hubness)),
                          r.age ? std::string(to_string(r.age->cohort)) : std::string{},
                          r.age ? (r.age->gap ? "1" : "0") : std::string{}, r.geo});
    out.push_back('\n');
  }
  return out;
}

namespace detail {

// Column lookup by header name over a parsed CSV.
class CsvTable {
 public:
  CsvTable(std::string_view text, std::string_view what) {
    rows_ = csv::parse(text, &lines_);
    if (rows_.empty()) throw Error(std::string(what) + ": missing header");
    for (std::size_t i = 0; i < rows_[0].size(); ++i) columns_[rows_[0][i]] = i;
  }
  std::size_t column(std::string_view name) const {
    auto it = columns_.find(std::string(name));
    if (it == columns_.end()) throw ParseError("missing column '" + std::string(name) + "'", 1);
    return it->second;
  }
  std::size_t rows() const { return rows_.size() - 1; }
  const std::string& cell(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r + 1];
    if (c >= row.size()) throw ParseError("short row", lines_[r + 1]);
    return row[c];
  }
  std::size_t line(std::size_t r) const { return lines_[r + 1]; }
  template <class Int>
  Int integer(std::size_t r, std::size_t c) const {
    auto v = text::parse_int<Int>(cell(r, c));
    if (!v) throw ParseError("expected an integer, got '" + cell(r, c) + "'", line(r));
    return *v;
  }
  double real(std::size_t r, std::size_t c) const {
    auto v = text::parse_double(cell(r, c));
    if (!v) throw ParseError("expected a number, got '" + cell(r, c) + "'", line(r));
    return *v;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
  std::map<std::string, std::size_t> columns_;
};

template <class Enum, std::size_t N>
Enum parse_enum(const std::array<Enum, N>& values, std::string_view s, std::size_t line) {
  for (auto v : values)
    if (to_string(v) == s) return v;
  throw ParseError("unexpected value '" + std::string(s) + "'", line);
}

}  // namespace detail

inline std::vector<ClusterRow> parse_clusters_csv(std::string_view text) {
  detail::CsvTable t(text, "clusters");
  const auto id = t.column("id"), size = t.column("size"), pubs = t.column("publications"),
             cat = t.column("size_category"), edges = t.column("internal_edges"), pi = t.column("pi"),
             deg = t.column("degree_centralization"), clo = t.column("closeness_centralization"),
             bet = t.column("betweenness_centralization"), note = t.column("centralization_note"),
             hubs = t.column("hub_count"), hubness = t.column("hubness"), age = t.column("age_cohort"),
             gap = t.column("age_gap"), geo = t.column("geo");
  std::vector<ClusterRow> rows;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    ClusterRow row;
    row.id = t.integer<int>(r, id);
    row.size = t.integer<int>(r, size);
    row.publications = t.integer<int>(r, pubs);
    row.size_category = detail::parse_enum(kSizeCategories, t.cell(r, cat), t.line(r));
    row.internal_edges = t.integer<std::size_t>(r, edges);
    row.pi = t.cell(r, pi);
    if (!t.cell(r, deg).empty())
      row.centralization = CentralizationIndices{t.real(r, deg), t.real(r, clo), t.real(r, bet)};
    row.centralization_note = t.cell(r, note);
    row.hub_count = t.integer<int>(r, hubs);
    row.hubness = detail::parse_enum(kHubness, t.cell(r, hubness), t.line(r));
    if (!t.cell(r, age).empty())
      row.age = AgeClass{detail::parse_enum(kAgeCohorts, t.cell(r, age), t.line(r)), t.cell(r, gap) == "1"};
    row.geo = t.cell(r, geo);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Connections as written by connections_csv (bridge edges themselves are not
/// stored; `bridge` stays empty).
inline std::vector<InterClusterConnection> parse_connections_csv(std::string_view text) {
  detail::CsvTable t(text, "connections");
  const auto a = t.column("cluster_a"), b = t.column("cluster_b"), sep = t.column("separator"),
             type = t.column("type"), pattern = t.column("pattern"), weight = t.column("weight"),
             link = t.column("pi_link");
  std::vector<InterClusterConnection> out;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    InterClusterConnection c;
    c.cluster_a = t.integer<int>(r, a);
    c.cluster_b = t.integer<int>(r, b);
    c.separator = t.integer<int>(r, sep);
    c.type = detail::parse_enum(kLinkTypes, t.cell(r, type), t.line(r));
    c.pattern = detail::parse_enum(kLinkPatterns, t.cell(r, pattern), t.line(r));
    c.total_weight = t.integer<long long>(r, weight);
    c.pi_link = t.cell(r, link) == "1";
    out.push_back(std::move(c));
  }
  return out;
}

/// Role counts from a nodes CSV.
inline RoleDistribution parse_role_distribution(std::string_view nodes_csv_text) {
  detail::CsvTable t(nodes_csv_text, "nodes");
  const auto role = t.column("role");
  std::vector<NodeRoleProfile> profiles(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r)
    profiles[r].role = detail::parse_enum(kNodeRoles, t.cell(r, role), t.line(r));
  return role_distribution(profiles);
}

/// Display attributes for cluster-level exports, indexed by id - 1.
inline std::vector<ClusterNodeAttributes> cluster_attributes(std::span<const ClusterRow> rows) {
  std::vector<ClusterNodeAttributes> out(rows.size());
  for (const auto& r : rows) {
    auto& a = out.at(static_cast<std::size_t>(r.id - 1));
    a.size = r.size;
    a.hubness = std::string(to_string(r.hubness));
    a.geo = r.geo;
    GeoLabel label;
    if (r.geo != "unknown") {
      auto parts = text::split(r.geo, '-');
      label.kind = parts.size() == 2 ? GeoLabel::Kind::mixed : GeoLabel::Kind::single;
      label.continents = parts;
    }
    auto style = geo_style(label);
    a.shape = style.shape;
    a.color = style.color;
  }
  return out;
}

}  // namespace coauthor
