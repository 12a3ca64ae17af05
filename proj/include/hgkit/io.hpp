#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgkit/analytics.hpp"
#include "hgkit/hypergraph.hpp"
#include "hgkit/views.hpp"

namespace hgkit {

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  // a terminating newline does not open another line
  if (!text.empty() && text.back() == '\n') lines.pop_back();
  return lines;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline bool is_blank(std::string_view line) { return split_ws(line).empty(); }

inline std::optional<std::size_t> parse_count(std::string_view token) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

inline std::optional<double> parse_real(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline std::string shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Shortest round-trip decimal form, always with a decimal point
/// ("1.0", "2.5", "1.0e+20").
inline std::string format_weight(double w) {
  std::string s = detail::shortest(w);
  if (s.find('.') != std::string::npos) return s;
  const auto exp = s.find('e');
  if (exp == std::string::npos) return s + ".0";
  return s.substr(0, exp) + ".0" + s.substr(exp);
}

/// Report formatting: 6 significant digits, or 17 with full precision.
inline std::string format_real(double value, bool full_precision = false) {
  char buf[64];
  std::snprintf(buf, sizeof buf, full_precision ? "%.17g" : "%.6g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// HGF: "n k" header, then one line per hyperedge of space separated
// vertex=weight tokens (an empty line is an empty hyperedge).

inline std::string write_hgf(const Hypergraph& h) {
  std::string out = std::to_string(h.nhv()) + " " + std::to_string(h.nhe()) + "\n";
  for (auto e : h.hyperedges()) {
    bool first = true;
    for (const auto& [v, w] : h.get_vertices(e)) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(v.value());
      out += '=';
      out += format_weight(w);
    }
    out += '\n';
  }
  return out;
}

/// Parses HGF. Tokens may be separated by any run of blanks; a bare vertex
/// index means weight 1.0. Trailing blank lines after the last hyperedge are
/// ignored. Metadata is not part of the format.
inline Hypergraph read_hgf(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::MalformedHeader, "empty document");
  const auto header = detail::split_ws(lines.front());
  if (header.size() != 2) throw Error(ErrorCode::MalformedHeader, "expected \"n k\"");
  const auto n = detail::parse_count(header[0]);
  const auto k = detail::parse_count(header[1]);
  if (!n || !k) throw Error(ErrorCode::MalformedHeader, "header counts must be integers");

  const std::size_t body = lines.size() - 1;
  if (body < *k) {
    throw Error(ErrorCode::LineCountMismatch, "header announces " + std::to_string(*k) +
                                                  " hyperedges, found " + std::to_string(body));
  }
  for (std::size_t i = 1 + *k; i < lines.size(); ++i) {
    if (!detail::is_blank(lines[i])) {
      throw Error(ErrorCode::LineCountMismatch,
                  "content after hyperedge " + std::to_string(*k) + " on line " + std::to_string(i + 1));
    }
  }

  Hypergraph h(*n, *k);
  for (std::size_t j = 1; j <= *k; ++j) {
    const HyperedgeId e{j};
    for (auto token : detail::split_ws(lines[j])) {
      const auto eq = token.find('=');
      const auto index = detail::parse_count(token.substr(0, eq));
      if (!index) {
        throw Error(ErrorCode::BadWeightToken, "line " + std::to_string(j + 1) + ": '" +
                                                   std::string(token) + "'");
      }
      if (*index < 1 || *index > *n) {
        throw Error(ErrorCode::IndexOutOfRange, "line " + std::to_string(j + 1) + ": vertex " +
                                                    std::to_string(*index) + " with n=" + std::to_string(*n));
      }
      double w = 1.0;
      if (eq != std::string_view::npos) {
        const auto parsed = detail::parse_real(token.substr(eq + 1));
        if (!parsed) {
          throw Error(ErrorCode::BadWeightToken, "line " + std::to_string(j + 1) + ": '" +
                                                     std::string(token) + "'");
        }
        w = *parsed;
      }
      const VertexId v{*index};
      if (h.get_weight(v, e)) {
        throw Error(ErrorCode::DuplicateEntry, "line " + std::to_string(j + 1) + ": vertex " +
                                                   std::to_string(*index) + " listed twice");
      }
      h.set_weight(v, e, w);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// JSON

inline constexpr int kJsonFormatVersion = 1;

inline nlohmann::json to_json(const Hypergraph& h) {
  nlohmann::json v2he = nlohmann::json::array();
  nlohmann::json vmeta = nlohmann::json::array();
  for (auto v : h.vertices()) {
    nlohmann::json row = nlohmann::json::object();
    for (const auto& [e, w] : h.get_hyperedges(v)) row[std::to_string(e.value())] = w;
    v2he.push_back(std::move(row));
    vmeta.push_back(h.get_vertex_meta(v));
  }
  nlohmann::json he2v = nlohmann::json::array();
  nlohmann::json hemeta = nlohmann::json::array();
  for (auto e : h.hyperedges()) {
    nlohmann::json column = nlohmann::json::object();
    for (const auto& [v, w] : h.get_vertices(e)) column[std::to_string(v.value())] = w;
    he2v.push_back(std::move(column));
    hemeta.push_back(h.get_hyperedge_meta(e));
  }
  return {{"format_version", kJsonFormatVersion},
          {"n", h.nhv()},
          {"k", h.nhe()},
          {"v2he", std::move(v2he)},
          {"he2v", std::move(he2v)},
          {"vmeta", std::move(vmeta)},
          {"hemeta", std::move(hemeta)}};
}

inline std::string write_json(const Hypergraph& h) { return to_json(h).dump() + "\n"; }

namespace detail {

[[noreturn]] inline void schema(const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, what);
}

inline std::size_t json_count(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned()) {
    schema(std::string("\"") + key + "\" must be a non-negative integer");
  }
  return doc[key].get<std::size_t>();
}

/// Reads one {"id": weight} object of v2he/he2v.
inline std::map<std::size_t, double> json_entries(const nlohmann::json& obj, std::size_t bound,
                                                  const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  std::map<std::size_t, double> out;
  for (const auto& [key, value] : obj.items()) {
    const auto id = parse_count(key);
    if (!id || *id < 1 || *id > bound) schema(where + ": bad id \"" + key + "\"");
    if (!value.is_number() || !std::isfinite(value.get<double>())) {
      schema(where + ": weight of " + key + " is not a finite number");
    }
    out.emplace(*id, value.get<double>());
  }
  return out;
}

inline const nlohmann::json& json_array(const nlohmann::json& doc, const char* key,
                                        std::size_t length) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != length) {
    schema(std::string("\"") + key + "\" must be an array of length " + std::to_string(length));
  }
  return doc[key];
}

}  // namespace detail

inline Hypergraph from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) detail::schema("document must be a JSON object");
  if (doc.contains("format_version") &&
      (!doc["format_version"].is_number_integer() || doc["format_version"] != kJsonFormatVersion)) {
    detail::schema("unsupported format_version");
  }
  const std::size_t n = detail::json_count(doc, "n");
  const std::size_t k = detail::json_count(doc, "k");
  const auto& v2he = detail::json_array(doc, "v2he", n);
  const auto& he2v = detail::json_array(doc, "he2v", k);

  Hypergraph h(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = detail::json_entries(v2he[i], k, "v2he[" + std::to_string(i) + "]");
    for (const auto& [e, w] : row) h.set_weight(VertexId{i + 1}, HyperedgeId{e}, w);
  }
  for (std::size_t j = 0; j < k; ++j) {
    const auto column = detail::json_entries(he2v[j], n, "he2v[" + std::to_string(j) + "]");
    const auto& actual = h.get_vertices(HyperedgeId{j + 1});
    bool same = column.size() == actual.size();
    for (const auto& [v, w] : column) {
      auto it = actual.find(VertexId{v});
      same = same && it != actual.end() && it->second == w;
    }
    if (!same) {
      throw Error(ErrorCode::DualInconsistency,
                  "he2v[" + std::to_string(j) + "] disagrees with v2he for hyperedge " + std::to_string(j + 1));
    }
  }

  if (doc.contains("vmeta")) {
    const auto& vmeta = detail::json_array(doc, "vmeta", n);
    for (std::size_t i = 0; i < n; ++i) h.set_vertex_meta(VertexId{i + 1}, vmeta[i]);
  }
  if (doc.contains("hemeta")) {
    const auto& hemeta = detail::json_array(doc, "hemeta", k);
    for (std::size_t j = 0; j < k; ++j) h.set_hyperedge_meta(HyperedgeId{j + 1}, hemeta[j]);
  }
  return h;
}

inline Hypergraph read_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::schema(e.what());
  }
  return from_json(doc);
}

// ---------------------------------------------------------------------------
// DOT

/// Graphviz rendering of a materialized view. With `hyperedge_offset` set
/// (bipartite views), nodes above the offset are drawn as hyperedge boxes.
inline std::string write_dot(const MaterializedGraph& g,
                             std::optional<std::size_t> hyperedge_offset = std::nullopt) {
  auto name = [&](std::size_t node) {
    if (hyperedge_offset && node > *hyperedge_offset) return "e" + std::to_string(node - *hyperedge_offset);
    return "v" + std::to_string(node);
  };
  std::string out = "graph G {\n";
  for (std::size_t node = 1; node <= g.node_count; ++node) {
    out += "  " + name(node);
    if (hyperedge_offset && node > *hyperedge_offset) out += " [shape=box]";
    out += ";\n";
  }
  for (const auto& edge : g.edges) {
    out += "  " + name(edge.u) + " -- " + name(edge.v);
    if (!hyperedge_offset) out += " [weight=" + detail::shortest(edge.weight) + "]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Partitions: JSON {"label": [vertex, ...]} or CSV "vertex,label".

/// vertex id -> label as read from a file; the domain is whatever the file
/// lists.
using LabelAssignment = std::map<std::size_t, Label>;

inline std::string write_partition_json(const Partition& p) {
  std::map<Label, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < p.size(); ++i) blocks[p.labels()[i]].push_back(i + 1);
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [label, members] : blocks) doc[std::to_string(label)] = members;
  return doc.dump() + "\n";
}

inline std::string write_partition_csv(const Partition& p) {
  std::string out = "vertex,label\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += std::to_string(i + 1) + "," + std::to_string(p.labels()[i]) + "\n";
  }
  return out;
}

inline LabelAssignment read_partition(std::string_view text) {
  LabelAssignment out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      detail::schema(e.what());
    }
    for (const auto& [key, members] : doc.items()) {
      Label label = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), label);
      if (ec != std::errc{} || ptr != key.data() + key.size()) detail::schema("bad label \"" + key + "\"");
      if (!members.is_array()) detail::schema("label " + key + " must map to an array");
      for (const auto& v : members) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) detail::schema("bad vertex id under " + key);
        if (!out.emplace(v.get<std::size_t>(), label).second) {
          throw Error(ErrorCode::PartitionNotTotal, "vertex " + v.dump() + " in two communities");
        }
      }
    }
    return out;
  }

  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_blank(lines[i])) continue;
    if (i == 0 && lines[i].rfind("vertex", 0) == 0) continue;
    const auto comma = lines[i].find(',');
    if (comma == std::string_view::npos) detail::schema("line " + std::to_string(i + 1) + ": expected vertex,label");
    const auto v = detail::parse_count(lines[i].substr(0, comma));
    Label label = 0;
    const auto rest = lines[i].substr(comma + 1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), label);
    if (!v || *v == 0 || ec != std::errc{} || ptr != rest.data() + rest.size()) {
      detail::schema("line " + std::to_string(i + 1) + ": expected vertex,label");
    }
    if (!out.emplace(*v, label).second) {
      throw Error(ErrorCode::PartitionNotTotal, "vertex " + std::to_string(*v) + " listed twice");
    }
  }
  return out;
}

/// Partition over 1..N from an assignment whose domain must be exactly 1..N.
inline Partition to_partition(const LabelAssignment& assignment) {
  std::vector<Label> labels;
  labels.reserve(assignment.size());
  std::size_t expected = 1;
  for (const auto& [v, label] : assignment) {
    if (v != expected++) {
      throw Error(ErrorCode::PartitionNotTotal, "vertex ids are not contiguous from 1");
    }
    labels.push_back(label);
  }
  return Partition(std::move(labels));
}

// ---------------------------------------------------------------------------
// Centrality CSV: "vertex,label,score", rows in ranking order.

inline std::string write_centrality_csv(const CentralityVector& scores,
                                        const std::vector<std::string>& labels,
                                        std::optional<std::size_t> top_k = std::nullopt,
                                        bool full_precision = false) {
  std::string out = "vertex,label,score\n";
  const auto order = top_k ? scores.top(*top_k) : scores.ranking();
  for (auto v : order) {
    out += std::to_string(v.value()) + "," + labels.at(v.index()) + "," +
           format_real(scores.score(v), full_precision) + "\n";
  }
  return out;
}

/// vertex id -> score.
inline std::map<std::size_t, double> read_centrality_csv(std::string_view text) {
  std::map<std::size_t, double> out;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_blank(lines[i])) continue;
    if (i == 0 && lines[i].rfind("vertex", 0) == 0) continue;
    const auto first = lines[i].find(',');
    const auto last = lines[i].rfind(',');
    if (first == std::string_view::npos || first == last) {
      detail::schema("line " + std::to_string(i + 1) + ": expected vertex,label,score");
    }
    const auto v = detail::parse_count(lines[i].substr(0, first));
    const auto score = detail::parse_real(lines[i].substr(last + 1));
    if (!v || !score) detail::schema("line " + std::to_string(i + 1) + ": expected vertex,label,score");
    if (!out.emplace(*v, *score).second) {
      throw Error(ErrorCode::DuplicateEntry, "vertex " + std::to_string(*v) + " listed twice");
    }
  }
  return out;
}

}  // namespace hgkit
