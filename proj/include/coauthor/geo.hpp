// Continent-level geographic labels for clusters from the country lists of
// their papers.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coauthor/cluster.hpp"
#include "coauthor/ingest.hpp"

namespace coauthor {

inline constexpr std::array<std::string_view, 6> kContinents = {"Africa",       "Asia",         "Europe",
                                                                "NorthAmerica", "Oceania",      "SouthAmerica"};

/// Country name -> continent code. Names are matched after upper-casing.
class CountryTable {
 public:
  CountryTable() = default;

  /// Parses "country,continent" lines; '#' starts a comment line.
  static CountryTable parse(std::string_view text) {
    CountryTable t;
    std::size_t number = 0;
    for (auto line : text::lines(text)) {
      ++number;
      auto s = text::trim(line);
      if (s.empty() || s.front() == '#') continue;
      auto comma = s.rfind(',');
      if (comma == std::string_view::npos) throw ParseError("expected country,continent", number);
      auto country = text::to_upper(text::collapse_whitespace(text::trim(s.substr(0, comma))));
      std::string continent(text::trim(s.substr(comma + 1)));
      if (country.empty()) throw ParseError("empty country name", number);
      if (std::find(kContinents.begin(), kContinents.end(), continent) == kContinents.end())
        throw ParseError("unknown continent '" + continent + "'", number);
      t.table_[country] = continent;
    }
    return t;
  }

  void add(std::string_view country, std::string_view continent) {
    table_[text::to_upper(text::collapse_whitespace(country))] = std::string(continent);
  }

  /// Continent code, or empty when the country is not listed.
  std::string continent(std::string_view country) const {
    auto it = table_.find(text::to_upper(text::collapse_whitespace(country)));
    return it == table_.end() ? std::string{} : it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::string, std::string> table_;
};

using CountryCounts = std::map<std::string, long long>;

/// Countries over every record with at least one member author; each record
/// contributes its full country list.
inline CountryCounts cluster_country_counts(const ClusterInfo& cluster, const CoauthorNetwork& net,
                                            const AuthorRecordIndex& index) {
  CountryCounts counts;
  for (int r : index.records_of_nodes(net, cluster.members))
    for (const auto& c : index.corpus().records[r].countries) ++counts[c];
  return counts;
}

struct GeoLabel {
  enum class Kind { single, mixed, unknown };
  Kind kind = Kind::unknown;
  std::vector<std::string> continents;  // 1 (single) or 2 alphabetical (mixed)

  std::string text() const {
    if (kind == Kind::unknown) return "unknown";
    if (kind == Kind::single) return continents.front();
    return continents[0] + "-" + continents[1];
  }
  friend bool operator==(const GeoLabel&, const GeoLabel&) = default;
};

inline constexpr double kMixedRunnerUpShare = 0.5;

/// Continent of the most listed country; when the runner-up country is
/// listed at least half as often and lies on another continent, a mixed
/// label of both. Countries missing from `table` are ignored.
inline GeoLabel continent_affiliation(const CountryCounts& counts, const CountryTable& table) {
  struct Entry {
    std::string country, continent;
    long long count;
  };
  std::vector<Entry> known;
  for (const auto& [country, count] : counts) {
    if (count <= 0) continue;
    auto cont = table.continent(country);
    if (!cont.empty()) known.push_back({country, cont, count});
  }
  GeoLabel label;
  if (known.empty()) return label;
  std::sort(known.begin(), known.end(), [](const Entry& x, const Entry& y) {
    return x.count != y.count ? x.count > y.count : x.country < y.country;
  });
  label.kind = GeoLabel::Kind::single;
  label.continents = {known[0].continent};
  if (known.size() > 1 && static_cast<double>(known[1].count) >= kMixedRunnerUpShare * static_cast<double>(known[0].count) &&
      known[1].continent != known[0].continent) {
    label.kind = GeoLabel::Kind::mixed;
    label.continents = {known[0].continent, known[1].continent};
    std::sort(label.continents.begin(), label.continents.end());
  }
  return label;
}

struct GeoStyle {
  std::string shape;
  std::string color;
};

/// DOT styling: circles coloured by continent, triangles for mixed labels
/// (coloured by the first continent), grey boxes for unknown.
inline GeoStyle geo_style(const GeoLabel& label) {
  auto color_of = [](std::string_view c) -> std::string {
    if (c == "Asia") return "green";
    if (c == "Europe") return "blue";
    if (c == "NorthAmerica") return "red";
    if (c == "SouthAmerica") return "orange";
    if (c == "Africa") return "brown";
    if (c == "Oceania") return "purple";
    return "gray";
  };
  switch (label.kind) {
    case GeoLabel::Kind::single: return {"circle", color_of(label.continents[0])};
    case GeoLabel::Kind::mixed: return {"triangle", color_of(label.continents[0])};
    case GeoLabel::Kind::unknown: break;
  }
  return {"box", "gray"};
}

}  // namespace coauthor
