// Pajek NET and CLU readers and writers.
//
// NET files written here list vertices in node order (sorted by label, 1-based)
// followed by an `*Edges` section of `i j w` lines with i < j, sorted. CLU files
// carry a `*Vertices N` header and one cluster id per line in vertex order.
#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coauthor/graph.hpp"

namespace coauthor {

inline std::string export_pajek(const CoauthorNetwork& net) {
  std::string out = "*Vertices " + std::to_string(net.size()) + "\n";
  for (std::size_t i = 0; i < net.size(); ++i)
    out += std::to_string(i + 1) + " \"" + net.node(static_cast<int>(i)).key.text() + "\"\n";
  out += "*Edges\n";
  for (const auto& e : net.edges())
    out += std::to_string(e.a + 1) + " " + std::to_string(e.b + 1) + " " + std::to_string(e.weight) + "\n";
  return out;
}

struct PajekImport {
  CoauthorNetwork net;
  std::vector<int> vertex_order;  // file vertex position -> node index in `net`
};

/// Reads a NET file. Vertices may appear in any label order; `vertex_order`
/// maps them onto the sorted node order of the returned network.
inline PajekImport read_pajek(std::string_view text) {
  enum class Section { none, vertices, edges } section = Section::none;
  std::size_t declared = 0;
  std::vector<AuthorNode> nodes;
  std::vector<bool> seen;
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> pairs;
  std::size_t line_no = 0;
  bool had_vertices = false;

  for (auto raw : text::lines(text)) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '%') continue;
    if (line.front() == '*') {
      auto head = text::to_lower(line.substr(0, line.find_first_of(" \t") == std::string_view::npos
                                                     ? line.size()
                                                     : line.find_first_of(" \t")));
      if (head == "*vertices") {
        if (had_vertices) throw ParseError("repeated *Vertices section", line_no);
        auto count = text::parse_int<long long>(line.substr(head.size()));
        if (!count || *count < 0) throw ParseError("invalid vertex count", line_no);
        declared = static_cast<std::size_t>(*count);
        nodes.assign(declared, {});
        seen.assign(declared, false);
        section = Section::vertices;
        had_vertices = true;
      } else if (head == "*edges") {
        if (!had_vertices) throw ParseError("*Edges before *Vertices", line_no);
        section = Section::edges;
      } else {
        throw ParseError("unknown section header '" + std::string(line) + "'", line_no);
      }
      continue;
    }
    if (section == Section::vertices) {
      auto space = line.find_first_of(" \t");
      auto index = text::parse_int<long long>(line.substr(0, space));
      if (!index) throw ParseError("invalid vertex line", line_no);
      if (*index < 1 || static_cast<std::size_t>(*index) > declared)
        throw ParseError("vertex index " + std::to_string(*index) + " out of range", line_no);
      std::size_t pos = static_cast<std::size_t>(*index - 1);
      if (seen[pos]) throw ParseError("duplicate vertex " + std::to_string(*index), line_no);
      std::string_view label = space == std::string_view::npos ? std::string_view{} : text::trim(line.substr(space));
      if (auto open = label.find('"'); open != std::string_view::npos) {
        auto close = label.rfind('"');
        if (close == open) throw ParseError("unterminated vertex label", line_no);
        label = label.substr(open + 1, close - open - 1);
      } else {
        label = label.substr(0, label.find_first_of(" \t"));
      }
      if (label.empty()) throw ParseError("empty vertex label", line_no);
      nodes[pos].key = AuthorKey::from_text(label);
      seen[pos] = true;
    } else if (section == Section::edges) {
      auto fields = text::split(text::collapse_whitespace(line), ' ');
      if (fields.size() < 2 || fields.size() > 3) throw ParseError("expected 'i j [w]'", line_no);
      auto a = text::parse_int<long long>(fields[0]);
      auto b = text::parse_int<long long>(fields[1]);
      if (!a || !b) throw ParseError("invalid edge endpoints", line_no);
      for (auto v : {*a, *b})
        if (v < 1 || static_cast<std::size_t>(v) > declared)
          throw ParseError("vertex index " + std::to_string(v) + " out of range", line_no);
      if (*a == *b) throw ParseError("self-loop", line_no);
      int w = 1;
      if (fields.size() == 3) {
        auto weight = text::parse_int<int>(fields[2]);
        if (!weight || *weight <= 0) throw ParseError("edge weight must be a positive integer", line_no);
        w = *weight;
      }
      int x = static_cast<int>(std::min(*a, *b) - 1), y = static_cast<int>(std::max(*a, *b) - 1);
      if (!pairs.emplace(x, y).second) throw ParseError("duplicate edge " + std::to_string(x + 1) + "-" +
                                                            std::to_string(y + 1), line_no);
      edges.push_back({x, y, w});
    } else {
      throw ParseError("data before any section header", line_no);
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ParseError("vertex " + std::to_string(i + 1) + " not listed", 0);

  std::vector<AuthorKey> keys;
  keys.reserve(nodes.size());
  for (const auto& n : nodes) keys.push_back(n.key);
  PajekImport out;
  try {
    out.net = CoauthorNetwork(std::move(nodes), std::move(edges));
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
  out.vertex_order.reserve(keys.size());
  for (const auto& k : keys) out.vertex_order.push_back(*out.net.find(k));
  return out;
}

inline CoauthorNetwork import_pajek(std::string_view text) { return read_pajek(text).net; }

/// Writes one cluster id per vertex line under a `*Vertices N` header.
inline std::string export_clu(std::span<const int> ids) {
  std::string out = "*Vertices " + std::to_string(ids.size()) + "\n";
  for (int id : ids) out += std::to_string(id) + "\n";
  return out;
}

/// Reads cluster ids in vertex order. The header is optional; when present its
/// count must match the number of id lines.
inline std::vector<int> import_clu(std::string_view text) {
  std::vector<int> ids;
  std::optional<std::size_t> declared;
  std::size_t line_no = 0;
  for (auto raw : text::lines(text)) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '%') continue;
    if (line.front() == '*') {
      auto lower = text::to_lower(line);
      if (!lower.starts_with("*vertices") || declared || !ids.empty())
        throw ParseError("unexpected header '" + std::string(line) + "'", line_no);
      auto count = text::parse_int<long long>(line.substr(9));
      if (!count || *count < 0) throw ParseError("invalid vertex count", line_no);
      declared = static_cast<std::size_t>(*count);
      continue;
    }
    auto id = text::parse_int<int>(line);
    if (!id) throw ParseError("invalid cluster id '" + std::string(line) + "'", line_no);
    ids.push_back(*id);
  }
  if (declared && *declared != ids.size())
    throw ParseError("header declares " + std::to_string(*declared) + " vertices but " +
                         std::to_string(ids.size()) + " ids follow", 0);
  return ids;
}

}  // namespace coauthor
