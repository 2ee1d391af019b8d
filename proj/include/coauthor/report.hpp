// Field report: category shares of clusters and connections, cluster size
// percentiles, cross-tabulations with chi-square tests, the size/output
// correlation, node roles and cluster-level network statistics, for one or
// more fields.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coauthor/analysis.hpp"
#include "coauthor/cohort.hpp"
#include "coauthor/meso.hpp"

namespace coauthor {

struct ShareRow {
  std::string name;
  std::vector<std::string> categories;
  std::vector<long long> counts;
  std::vector<double> shares;  // counts / total, all 0 when total is 0
  long long total = 0;
};

struct CrossTab {
  std::string name;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<long long>> counts;
  std::optional<ChiSquareResult> test;
  std::string note;  // why no test was run
};

struct FieldSummary {
  std::string name;
  std::vector<ShareRow> shares;  // size, age, hubness, collaboration, link_type, pattern
  ClusterSizeSummary sizes;
  std::optional<double> size_publication_r;
  std::optional<double> size_publication_r_log;
  RoleDistribution roles;
  ClusterNetworkStats transfer;
  ClusterNetworkStats collaboration;
  std::vector<CrossTab> crosstabs;
};

struct FieldReport {
  std::vector<FieldSummary> fields;
  std::optional<CrossTab> field_by_hubness;  // with two or more fields
};

namespace detail {

inline ShareRow share_row(std::string name, std::vector<std::string> categories, std::vector<long long> counts) {
  ShareRow row{std::move(name), std::move(categories), std::move(counts), {}, 0};
  for (auto c : row.counts) row.total += c;
  for (auto c : row.counts)
    row.shares.push_back(row.total > 0 ? static_cast<double>(c) / static_cast<double>(row.total) : 0.0);
  return row;
}

template <class Enum, std::size_t N>
std::vector<std::string> labels(const std::array<Enum, N>& values) {
  std::vector<std::string> out;
  for (auto v : values) out.emplace_back(to_string(v));
  return out;
}

// Tests the table after dropping empty rows and columns.
inline CrossTab cross_tab(std::string name, std::vector<std::string> rows, std::vector<std::string> cols,
                          std::vector<std::vector<long long>> counts) {
  CrossTab t{std::move(name), std::move(rows), std::move(cols), std::move(counts), std::nullopt, {}};
  std::vector<std::size_t> keep_rows, keep_cols;
  for (std::size_t r = 0; r < t.counts.size(); ++r) {
    long long s = 0;
    for (auto v : t.counts[r]) s += v;
    if (s > 0) keep_rows.push_back(r);
  }
  for (std::size_t c = 0; c < t.col_labels.size(); ++c) {
    long long s = 0;
    for (const auto& row : t.counts) s += row[c];
    if (s > 0) keep_cols.push_back(c);
  }
  if (keep_rows.size() < 2 || keep_cols.size() < 2) {
    t.note = "fewer than two non-empty rows or columns";
    return t;
  }
  std::vector<std::vector<long long>> reduced;
  for (auto r : keep_rows) {
    reduced.emplace_back();
    for (auto c : keep_cols) reduced.back().push_back(t.counts[r][c]);
  }
  t.test = chi_square(ContingencyTable(std::move(reduced)));
  if (keep_rows.size() < t.counts.size() || keep_cols.size() < t.col_labels.size())
    t.note = "empty rows or columns dropped";
  return t;
}

}  // namespace detail

inline FieldSummary summarize_field(const FieldData& f) {
  FieldSummary s;
  s.name = f.name;
  const std::size_t n_clusters = f.clusters.size();

  std::vector<char> collaborating(n_clusters + 1, 0);
  for (const auto& c : f.connections)
    if (c.type == LinkType::collaboration) {
      if (static_cast<std::size_t>(c.cluster_a) <= n_clusters) collaborating[c.cluster_a] = 1;
      if (static_cast<std::size_t>(c.cluster_b) <= n_clusters) collaborating[c.cluster_b] = 1;
    }

  std::vector<long long> size_counts(3), age_counts(4), hub_counts(3), collab_counts(2), type_counts(2),
      pattern_counts(5);
  std::vector<std::vector<long long>> size_hub(3, std::vector<long long>(3)),
      small_hubless_age(2, std::vector<long long>(4)), collab_size(2, std::vector<long long>(3)),
      collab_age(2, std::vector<long long>(4));
  for (const auto& c : f.clusters) {
    auto si = static_cast<std::size_t>(c.size_category);
    auto hi = static_cast<std::size_t>(c.hubness);
    auto ci = collaborating[c.id] ? 0U : 1U;
    ++size_counts[si];
    ++hub_counts[hi];
    ++collab_counts[ci];
    ++size_hub[si][hi];
    ++collab_size[ci][si];
    if (c.age) {
      auto ai = static_cast<std::size_t>(c.age->cohort);
      ++age_counts[ai];
      ++collab_age[ci][ai];
      bool small_hubless = c.size_category == SizeCategory::small && c.hubness == Hubness::none;
      ++small_hubless_age[small_hubless ? 0 : 1][ai];
    }
  }
  for (const auto& c : f.connections) {
    ++type_counts[static_cast<std::size_t>(c.type)];
    ++pattern_counts[static_cast<std::size_t>(c.pattern)];
  }
  s.shares.push_back(detail::share_row("size", detail::labels(kSizeCategories), size_counts));
  s.shares.push_back(detail::share_row("age", detail::labels(kAgeCohorts), age_counts));
  s.shares.push_back(detail::share_row("hubness", detail::labels(kHubness), hub_counts));
  s.shares.push_back(detail::share_row("collaboration", {"collaborating", "not collaborating"}, collab_counts));
  s.shares.push_back(detail::share_row("link_type", detail::labels(kLinkTypes), type_counts));
  s.shares.push_back(detail::share_row("pattern", detail::labels(kLinkPatterns), pattern_counts));

  std::vector<ClusterInfo> infos;
  std::vector<double> sizes, pubs;
  for (const auto& c : f.clusters) {
    ClusterInfo info;
    info.size = c.size;
    infos.push_back(std::move(info));
    sizes.push_back(c.size);
    pubs.push_back(c.publications);
  }
  s.sizes = summarize_sizes(infos);
  try {
    s.size_publication_r = pearson_r(sizes, pubs);
    s.size_publication_r_log = pearson_r(sizes, pubs, true);
  } catch (const Error&) {
    // too few clusters, constant series or missing publication counts
  }
  s.roles = f.roles;
  s.transfer = build_cluster_network(f.connections, LinkType::transfer, n_clusters).stats;
  s.collaboration = build_cluster_network(f.connections, LinkType::collaboration, n_clusters).stats;

  const std::vector<std::string> collab_labels = {"collaborating", "not collaborating"};
  s.crosstabs.push_back(detail::cross_tab("size_x_hubness", detail::labels(kSizeCategories), detail::labels(kHubness),
                                          size_hub));
  s.crosstabs.push_back(detail::cross_tab("small_hubless_x_age", {"small hubless", "other"},
                                          detail::labels(kAgeCohorts), small_hubless_age));
  s.crosstabs.push_back(
      detail::cross_tab("collaboration_x_size", collab_labels, detail::labels(kSizeCategories), collab_size));
  s.crosstabs.push_back(
      detail::cross_tab("collaboration_x_age", collab_labels, detail::labels(kAgeCohorts), collab_age));
  return s;
}

inline FieldReport field_report(std::span<const FieldData> fields) {
  FieldReport r;
  for (const auto& f : fields) r.fields.push_back(summarize_field(f));
  if (fields.size() >= 2) {
    std::vector<std::string> names;
    std::vector<std::vector<long long>> counts;
    for (const auto& f : r.fields) {
      names.push_back(f.name);
      counts.push_back(f.shares[2].counts);
    }
    r.field_by_hubness = detail::cross_tab("field_x_hubness", names, detail::labels(kHubness), counts);
  }
  return r;
}

namespace detail {

inline void emit(std::string& out, std::string_view field, std::string_view section, std::string_view statistic,
                 std::string_view category, const std::string& value) {
  out += csv::join_row({std::string(field), std::string(section), std::string(statistic), std::string(category), value});
  out.push_back('\n');
}

inline void emit_crosstab(std::string& out, std::string_view field, const CrossTab& t) {
  for (std::size_t r = 0; r < t.row_labels.size(); ++r)
    for (std::size_t c = 0; c < t.col_labels.size(); ++c)
      emit(out, field, t.name, "count", t.row_labels[r] + "|" + t.col_labels[c], std::to_string(t.counts[r][c]));
  if (t.test) {
    emit(out, field, t.name, "chi_square", "statistic", text::format_fixed(t.test->statistic, 4));
    emit(out, field, t.name, "chi_square", "df", std::to_string(t.test->df));
    emit(out, field, t.name, "chi_square", "p", format_p_value(t.test->p));
    emit(out, field, t.name, "chi_square", "n", std::to_string(t.test->n));
  }
  if (!t.note.empty()) emit(out, field, t.name, "note", "", t.note);
}

inline void emit_network(std::string& out, std::string_view field, std::string_view section,
                         const ClusterNetworkStats& s) {
  emit(out, field, section, "network", "nodes", std::to_string(s.nodes));
  emit(out, field, section, "network", "edges", std::to_string(s.edges));
  emit(out, field, section, "network", "participating_fraction", text::format_double(s.participating_fraction));
  emit(out, field, section, "network", "link_type_fraction", text::format_double(s.link_type_fraction));
  emit(out, field, section, "network", "degree_mean", text::format_double(s.degree_mean));
  emit(out, field, section, "network", "degree_median", text::format_double(s.degree_median));
  emit(out, field, section, "network", "degree_max", std::to_string(s.degree_max));
  emit(out, field, section, "network", "components", std::to_string(s.components));
  emit(out, field, section, "network", "giant_fraction", text::format_double(s.giant_fraction));
  emit(out, field, section, "network", "giant_present", s.giant_present ? "1" : "0");
}

}  // namespace detail

inline constexpr std::string_view kReportCsvHeader = "field,section,statistic,category,value";

/// Long-format CSV: one row per field, section, statistic and category.
inline std::string report_csv(const FieldReport& report) {
  std::string out(kReportCsvHeader);
  out.push_back('\n');
  for (const auto& f : report.fields) {
    for (const auto& row : f.shares) {
      for (std::size_t i = 0; i < row.categories.size(); ++i) {
        detail::emit(out, f.name, row.name, "count", row.categories[i], std::to_string(row.counts[i]));
        detail::emit(out, f.name, row.name, "share", row.categories[i], text::format_double(row.shares[i]));
      }
      detail::emit(out, f.name, row.name, "total", "", std::to_string(row.total));
    }
    const auto& p = f.sizes.percentiles;
    const std::array<std::pair<const char*, double>, 9> size_stats = {{{"count", static_cast<double>(f.sizes.count)},
                                                                        {"mean", f.sizes.mean},
                                                                        {"min", p.min},
                                                                        {"p10", p.p10},
                                                                        {"p25", p.p25},
                                                                        {"median", p.median},
                                                                        {"p75", p.p75},
                                                                        {"p90", p.p90},
                                                                        {"max", p.max}}};
    for (auto [name, value] : size_stats) detail::emit(out, f.name, "cluster_size", "percentile", name, text::format_double(value));
    detail::emit(out, f.name, "correlation", "pearson_r", "size_publications",
                 f.size_publication_r ? text::format_double(*f.size_publication_r) : "");
    detail::emit(out, f.name, "correlation", "pearson_r", "size_publications_log",
                 f.size_publication_r_log ? text::format_double(*f.size_publication_r_log) : "");
    for (auto role : kNodeRoles) {
      auto i = static_cast<std::size_t>(role);
      detail::emit(out, f.name, "roles", "count", to_string(role), std::to_string(f.roles.counts[i]));
      detail::emit(out, f.name, "roles", "share", to_string(role), text::format_double(f.roles.fractions[i]));
    }
    detail::emit_network(out, f.name, "transfer_network", f.transfer);
    detail::emit_network(out, f.name, "collaboration_network", f.collaboration);
    for (const auto& t : f.crosstabs) detail::emit_crosstab(out, f.name, t);
  }
  if (report.field_by_hubness) detail::emit_crosstab(out, "all", *report.field_by_hubness);
  return out;
}

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string percent(double share) { return text::format_fixed(100.0 * share, 1) + "%"; }

inline void text_crosstab(std::string& out, const CrossTab& t) {
  out += "  " + t.name + "\n";
  std::size_t w0 = 4;
  for (const auto& l : t.row_labels) w0 = std::max(w0, l.size());
  out += "    " + pad("", w0 + 2);
  for (const auto& l : t.col_labels) out += pad(l, std::max<std::size_t>(l.size(), 6) + 2);
  out += "\n";
  for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
    out += "    " + pad(t.row_labels[r], w0 + 2);
    for (std::size_t c = 0; c < t.col_labels.size(); ++c)
      out += pad(std::to_string(t.counts[r][c]), std::max<std::size_t>(t.col_labels[c].size(), 6) + 2);
    out += "\n";
  }
  if (t.test)
    out += "    chi-square " + text::format_fixed(t.test->statistic, 4) + ", df " + std::to_string(t.test->df) +
           ", p " + format_p_value(t.test->p) + ", N " + std::to_string(t.test->n) + "\n";
  if (!t.note.empty()) out += "    (" + t.note + ")\n";
}

inline void text_network(std::string& out, std::string_view name, const ClusterNetworkStats& s) {
  out += "  " + std::string(name) + " network: " + std::to_string(s.nodes) + " clusters, " +
         std::to_string(s.edges) + " links, " + percent(s.participating_fraction) + " of clusters, " +
         percent(s.link_type_fraction) + " of connections; degree mean " + text::format_fixed(s.degree_mean, 2) +
         ", median " + num(s.degree_median) + ", max " + std::to_string(s.degree_max) + "; " +
         std::to_string(s.components) + " components, giant " + (s.giant_present ? "present" : "absent") + " (" +
         percent(s.giant_fraction) + ")\n";
}

}  // namespace detail

/// Plain-text mirror of report_csv.
inline std::string report_text(const FieldReport& report) {
  std::string out;
  for (const auto& f : report.fields) {
    out += "Field " + f.name + "\n";
    for (const auto& row : f.shares) {
      out += "  " + detail::pad(row.name, 14);
      for (std::size_t i = 0; i < row.categories.size(); ++i)
        out += "  " + row.categories[i] + " " + detail::percent(row.shares[i]) + " (" + std::to_string(row.counts[i]) + ")";
      out += "  [n=" + std::to_string(row.total) + "]\n";
    }
    const auto& p = f.sizes.percentiles;
    out += "  cluster size  n " + std::to_string(f.sizes.count) + ", mean " + text::format_fixed(f.sizes.mean, 2) +
           "; min " + detail::num(p.min) + ", 10% " + detail::num(p.p10) + ", 25% " + detail::num(p.p25) +
           ", median " + detail::num(p.median) + ", 75% " + detail::num(p.p75) + ", 90% " + detail::num(p.p90) +
           ", max " + detail::num(p.max) +
           "\n";
    out += "  size vs publications: r = " +
           (f.size_publication_r ? text::format_fixed(*f.size_publication_r, 4) : std::string("n/a")) +
           " (log-log " +
           (f.size_publication_r_log ? text::format_fixed(*f.size_publication_r_log, 4) : std::string("n/a")) + ")\n";
    out += "  node roles   ";
    for (auto role : kNodeRoles) {
      auto i = static_cast<std::size_t>(role);
      out += "  " + std::string(to_string(role)) + " " + detail::percent(f.roles.fractions[i]) + " (" +
             std::to_string(f.roles.counts[i]) + ")";
    }
    out += "\n";
    detail::text_network(out, "transfer", f.transfer);
    detail::text_network(out, "collaboration", f.collaboration);
    for (const auto& t : f.crosstabs) detail::text_crosstab(out, t);
    out += "\n";
  }
  if (report.field_by_hubness) {
    out += "All fields\n";
    detail::text_crosstab(out, *report.field_by_hubness);
  }
  return out;
}

}  // namespace coauthor
