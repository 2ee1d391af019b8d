// Publication records: the field-tagged and tabular readers, the record
// filters and per-corpus summary statistics.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coauthor/text.hpp"

namespace coauthor {

/// Normalized author identity: surname plus concatenated upper-case initials.
///
/// Two name strings that normalize to the same key are the same author; no
/// further disambiguation is attempted. Keys order by their canonical text
/// `Surname_INITIALS` (just `Surname` when there are no initials), which is
/// also the label written to network files.
class AuthorKey {
 public:
  AuthorKey() = default;
  AuthorKey(std::string_view surname, std::string_view initials)
      : surname_(text::collapse_whitespace(surname)), initials_(normalize_initials(initials)) {
    text_ = initials_.empty() ? surname_ : surname_ + "_" + initials_;
  }

  /// Parses a field-tagged author line such as `Smith, J.K.`.
  static AuthorKey from_name(std::string_view name) {
    auto comma = name.find(',');
    if (comma == std::string_view::npos) return AuthorKey(name, "");
    return AuthorKey(name.substr(0, comma), name.substr(comma + 1));
  }

  /// Parses the canonical text form `Surname_INITIALS`.
  static AuthorKey from_text(std::string_view text) {
    text = text::trim(text);
    auto underscore = text.rfind('_');
    if (underscore == std::string_view::npos) return AuthorKey(text, "");
    return AuthorKey(text.substr(0, underscore), text.substr(underscore + 1));
  }

  const std::string& surname() const noexcept { return surname_; }
  const std::string& initials() const noexcept { return initials_; }
  const std::string& text() const noexcept { return text_; }
  bool empty() const noexcept { return surname_.empty(); }

  /// Anonymous placeholder author as written by the bibliographic database.
  bool is_anonymous() const {
    std::string s = text::to_lower(surname_);
    std::erase_if(s, [](char c) { return c == '[' || c == ']'; });
    return s == "anon" || s == "anonymous";
  }

  friend bool operator==(const AuthorKey& a, const AuthorKey& b) { return a.text_ == b.text_; }
  friend auto operator<=>(const AuthorKey& a, const AuthorKey& b) { return a.text_ <=> b.text_; }

 private:
  static std::string normalize_initials(std::string_view raw) {
    std::string out;
    for (char c : raw)
      if (std::isalpha(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::toupper(c)));
    return out;
  }

  std::string surname_;
  std::string initials_;
  std::string text_;
};

struct PublicationRecord {
  std::string id;
  int year = 0;
  std::vector<AuthorKey> authors;      // distinct, in first-listed order
  std::vector<std::string> countries;  // one entry per address line
  int n_references = 0;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// Removes repeated authors, keeping the first occurrence.
inline void dedupe_authors(std::vector<AuthorKey>& authors) {
  std::set<AuthorKey> seen;
  std::erase_if(authors, [&](const AuthorKey& k) { return k.empty() || !seen.insert(k).second; });
}

struct Corpus {
  std::vector<PublicationRecord> records;
  int first_year = 0;
  int last_year = 0;

  /// Builds a corpus whose time span brackets exactly the record years.
  static Corpus from_records(std::vector<PublicationRecord> records) {
    Corpus c;
    c.records = std::move(records);
    if (!c.records.empty()) {
      auto [lo, hi] = std::minmax_element(c.records.begin(), c.records.end(),
                                          [](const auto& a, const auto& b) { return a.year < b.year; });
      c.first_year = lo->year;
      c.last_year = hi->year;
    }
    return c;
  }

  bool empty() const noexcept { return records.empty(); }
};

/// Maps raw address country spellings onto one canonical name.
class CountryAliases {
 public:
  CountryAliases() = default;
  explicit CountryAliases(std::map<std::string, std::string> table) : table_(std::move(table)) {}

  /// Common Web of Science spellings.
  static CountryAliases defaults() {
    return CountryAliases({{"PEOPLES R CHINA", "CHINA"},
                           {"FED REP GER", "GERMANY"},
                           {"W GERMANY", "GERMANY"},
                           {"GER DEM REP", "GERMANY"},
                           {"ENGLAND", "UK"},
                           {"SCOTLAND", "UK"},
                           {"WALES", "UK"},
                           {"NORTH IRELAND", "UK"},
                           {"U ARAB EMIRATES", "UNITED ARAB EMIRATES"},
                           {"USSR", "RUSSIA"},
                           {"REP OF GEORGIA", "GEORGIA"},
                           {"TAIWAN", "TAIWAN"},
                           {"KOREA", "SOUTH KOREA"},
                           {"SOUTH KOREA", "SOUTH KOREA"}});
  }

  /// Reads `raw,canonical` lines; `#` starts a comment.
  static CountryAliases parse(std::string_view text) {
    std::map<std::string, std::string> table;
    std::size_t n = 0;
    for (auto line : text::lines(text)) {
      ++n;
      line = text::trim(line);
      if (line.empty() || line.front() == '#') continue;
      auto comma = line.find(',');
      if (comma == std::string_view::npos) throw ParseError("expected 'raw,canonical'", n);
      table[text::to_upper(text::collapse_whitespace(line.substr(0, comma)))] =
          text::to_upper(text::collapse_whitespace(line.substr(comma + 1)));
    }
    return CountryAliases(std::move(table));
  }

  std::string canonical(std::string_view raw) const {
    std::string name = text::to_upper(text::collapse_whitespace(raw));
    while (!name.empty() && (name.back() == '.' || name.back() == ';')) name.pop_back();
    name = text::collapse_whitespace(name);
    // US addresses end in "<STATE> <ZIP> USA".
    if (name.size() > 4 && name.ends_with(" USA")) name = "USA";
    if (auto it = table_.find(name); it != table_.end()) return it->second;
    return name;
  }

 private:
  std::map<std::string, std::string> table_;
};

/// Country token of one address line: the last comma-separated field, after
/// dropping a leading `[author list]` block.
inline std::string country_of_address(std::string_view address, const CountryAliases& aliases) {
  address = text::trim(address);
  if (!address.empty() && address.front() == '[') {
    auto close = address.find(']');
    if (close != std::string_view::npos) address.remove_prefix(close + 1);
  }
  auto comma = address.rfind(',');
  auto token = comma == std::string_view::npos ? address : address.substr(comma + 1);
  return aliases.canonical(token);
}

struct ParseOutcome {
  std::vector<PublicationRecord> records;
  std::vector<std::string> warnings;  // one per skipped block or row
};

/// Reads field-tagged export text (two-letter tags at line start, continuation
/// lines indented, records terminated by `ER`).
///
/// Recognized tags: AU (one author per line), PY, C1, NR, UT (record id) and
/// CR (used to count references when NR is absent). Other tags are ignored.
/// Blocks without PY or AU are skipped and reported in `warnings`.
inline ParseOutcome parse_field_tagged(std::string_view text,
                                       const CountryAliases& aliases = CountryAliases::defaults()) {
  ParseOutcome out;
  std::set<std::string> ids;

  struct Block {
    std::size_t start_line = 0;
    std::vector<AuthorKey> authors;
    std::vector<std::string> countries;
    std::optional<int> year;
    std::optional<int> n_refs;
    int cited_refs = 0;
    std::string id;
    bool bad_year = false;
    bool touched = false;
  } block;
  std::size_t ordinal = 0;

  auto flush = [&] {
    if (!block.touched) return;
    ++ordinal;
    std::string where = "record " + std::to_string(ordinal) + " (line " + std::to_string(block.start_line) + ")";
    dedupe_authors(block.authors);
    if (!block.year) {
      out.warnings.push_back(where + ": missing or invalid PY");
    } else if (block.authors.empty()) {
      out.warnings.push_back(where + ": missing AU");
    } else {
      PublicationRecord rec;
      rec.id = block.id.empty() ? "rec" + std::to_string(ordinal) : block.id;
      if (!ids.insert(rec.id).second) {
        out.warnings.push_back(where + ": duplicate record id " + rec.id);
      } else {
        rec.year = *block.year;
        rec.authors = std::move(block.authors);
        rec.countries = std::move(block.countries);
        rec.n_references = block.n_refs.value_or(block.cited_refs);
        out.records.push_back(std::move(rec));
      }
    }
    block = Block{};
  };

  std::string tag;
  std::size_t line_no = 0;
  for (auto line : text::lines(text)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    std::string_view value;
    bool tagged = line.size() >= 2 && !text::is_space(line[0]) && (line.size() == 2 || line[2] == ' ');
    if (tagged) {
      tag = std::string(line.substr(0, 2));
      value = line.size() > 3 ? text::trim(line.substr(3)) : std::string_view{};
    } else {
      value = text::trim(line);
    }
    if (tag == "FN" || tag == "VR" || tag == "EF") continue;
    if (tag == "ER") {
      flush();
      tag.clear();
      continue;
    }
    if (!block.touched) {
      block.touched = true;
      block.start_line = line_no;
    }
    if (tag == "AU") {
      if (!value.empty()) block.authors.push_back(AuthorKey::from_name(value));
    } else if (tag == "PY") {
      block.year = text::parse_int<int>(value);
    } else if (tag == "NR") {
      block.n_refs = text::parse_int<int>(value);
    } else if (tag == "CR") {
      if (!value.empty()) ++block.cited_refs;
    } else if (tag == "UT") {
      block.id = std::string(value);
    } else if (tag == "C1") {
      if (!value.empty()) {
        auto country = country_of_address(value, aliases);
        if (!country.empty()) block.countries.push_back(std::move(country));
      }
    }
  }
  flush();
  return out;
}

inline constexpr std::string_view kTabularHeader = "record_id,year,authors,countries,n_references";

/// Reads the canonical comma-separated corpus format. Column order is free;
/// extra columns are ignored. Missing mandatory columns throw `ParseError`.
inline ParseOutcome parse_tabular(std::string_view text) {
  ParseOutcome out;
  std::vector<std::size_t> line_numbers;
  auto rows = csv::parse(text, &line_numbers);
  if (rows.empty()) throw ParseError("missing header row", 1);

  const auto& header = rows.front();
  auto column = [&](std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (text::trim(header[i]) == name) return i;
    throw ParseError("missing mandatory column '" + std::string(name) + "'", 1);
  };
  const std::size_t c_id = column("record_id"), c_year = column("year"), c_authors = column("authors"),
                    c_countries = column("countries"), c_refs = column("n_references");
  const std::size_t width = std::max({c_id, c_year, c_authors, c_countries, c_refs}) + 1;

  std::set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string where = "line " + std::to_string(line_numbers[r]);
    if (row.size() < width) {
      out.warnings.push_back(where + ": expected at least " + std::to_string(width) + " cells");
      continue;
    }
    PublicationRecord rec;
    rec.id = std::string(text::trim(row[c_id]));
    auto year = text::parse_int<int>(row[c_year]);
    auto refs = text::parse_int<int>(row[c_refs]);
    if (rec.id.empty()) {
      out.warnings.push_back(where + ": empty record_id");
      continue;
    }
    if (!year) {
      out.warnings.push_back(where + ": unparseable year '" + row[c_year] + "'");
      continue;
    }
    if (!refs || *refs < 0) {
      out.warnings.push_back(where + ": unparseable n_references '" + row[c_refs] + "'");
      continue;
    }
    for (const auto& a : text::split(row[c_authors], ';'))
      if (!text::trim(a).empty()) rec.authors.push_back(AuthorKey::from_text(a));
    dedupe_authors(rec.authors);
    if (rec.authors.empty()) {
      out.warnings.push_back(where + ": empty authors");
      continue;
    }
    if (!text::trim(row[c_countries]).empty())
      for (const auto& c : text::split(row[c_countries], ';'))
        if (auto t = text::collapse_whitespace(c); !t.empty()) rec.countries.push_back(std::move(t));
    if (!ids.insert(rec.id).second) {
      out.warnings.push_back(where + ": duplicate record_id " + rec.id);
      continue;
    }
    rec.year = *year;
    rec.n_references = *refs;
    out.records.push_back(std::move(rec));
  }
  return out;
}

/// Writes the canonical corpus format (fixed column order, LF line endings).
inline std::string write_tabular(const std::vector<PublicationRecord>& records) {
  std::string out(kTabularHeader);
  out.push_back('\n');
  for (const auto& rec : records) {
    std::string authors, countries;
    for (std::size_t i = 0; i < rec.authors.size(); ++i) {
      if (i) authors.push_back(';');
      authors += rec.authors[i].text();
    }
    for (std::size_t i = 0; i < rec.countries.size(); ++i) {
      if (i) countries.push_back(';');
      countries += rec.countries[i];
    }
    out += csv::join_row({rec.id, std::to_string(rec.year), authors, countries, std::to_string(rec.n_references)});
    out.push_back('\n');
  }
  return out;
}

struct FilterResult {
  Corpus corpus;
  std::size_t removed_too_few_authors = 0;  // fewer than two named authors
  std::size_t removed_few_references = 0;   // at most one reference
};

/// Drops anonymous author entries, then removes records left with fewer than
/// two authors and records with at most one reference.
inline FilterResult filter_corpus(std::vector<PublicationRecord> records) {
  FilterResult result;
  std::vector<PublicationRecord> kept;
  kept.reserve(records.size());
  for (auto& rec : records) {
    std::erase_if(rec.authors, [](const AuthorKey& k) { return k.is_anonymous(); });
    dedupe_authors(rec.authors);
    if (rec.authors.size() < 2) {
      ++result.removed_too_few_authors;
    } else if (rec.n_references <= 1) {
      ++result.removed_few_references;
    } else {
      kept.push_back(std::move(rec));
    }
  }
  result.corpus = Corpus::from_records(std::move(kept));
  return result;
}

struct CorpusStats {
  std::size_t records = 0;
  std::size_t authors = 0;
  double mean_authors = 0.0;
  double median_authors = 0.0;
};

/// Median with midpoint averaging for even counts; 0 for an empty sample.
inline double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  if (corpus.empty()) return s;
  std::set<AuthorKey> authors;
  std::vector<double> counts;
  double total = 0;
  for (const auto& rec : corpus.records) {
    authors.insert(rec.authors.begin(), rec.authors.end());
    counts.push_back(static_cast<double>(rec.authors.size()));
    total += static_cast<double>(rec.authors.size());
  }
  s.records = corpus.records.size();
  s.authors = authors.size();
  s.mean_authors = total / static_cast<double>(s.records);
  s.median_authors = median(std::move(counts));
  return s;
}

}  // namespace coauthor
