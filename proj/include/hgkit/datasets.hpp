#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgkit/analytics.hpp"
#include "hgkit/forecast.hpp"
#include "hgkit/hypergraph.hpp"
#include "hgkit/io.hpp"

namespace hgkit {

/// A hypergraph plus the external names of its vertices and hyperedges.
/// The same names are also stored as vertex / hyperedge metadata.
struct LabeledHypergraph {
  Hypergraph hypergraph;
  std::vector<std::string> vertex_labels;
  std::vector<std::string> hyperedge_labels;
};

// ---------------------------------------------------------------------------
// Reviews: one vertex per item, one hyperedge per user holding every item the
// user reviewed.

struct ReviewRecord {
  std::string user_id;
  std::string item_id;
  int rating = 0;
};

using StarFilter = std::optional<std::set<int>>;

namespace detail {

/// Splits one CSV record; double quotes group commas and "" escapes a quote.
inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline bool passes(const StarFilter& filter, int rating) {
  return !filter || filter->contains(rating);
}

/// Assigns dense 1-based ids in order of first appearance.
class Interner {
 public:
  std::size_t id(const std::string& name) {
    auto [it, fresh] = ids_.emplace(name, names_.size() + 1);
    if (fresh) names_.push_back(name);
    return it->second;
  }
  std::vector<std::string>& names() { return names_; }

 private:
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::string> names_;
};

}  // namespace detail

/// Parses the review table; the header must be `user_id,item_id,stars`.
inline std::vector<ReviewRecord> parse_reviews_csv(std::string_view text) {
  std::vector<ReviewRecord> records;
  const auto lines = detail::split_lines(text);
  bool header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_blank(lines[i])) continue;
    const auto fields = detail::split_csv(lines[i]);
    if (!header) {
      if (fields.size() != 3 || detail::trim(fields[0]) != "user_id" ||
          detail::trim(fields[1]) != "item_id" || detail::trim(fields[2]) != "stars") {
        detail::schema("review table header must be user_id,item_id,stars");
      }
      header = true;
      continue;
    }
    if (fields.size() != 3) detail::schema("line " + std::to_string(i + 1) + ": expected 3 fields");
    const auto stars = detail::parse_count(detail::trim(fields[2]));
    if (!stars || *stars < 1 || *stars > 5) {
      detail::schema("line " + std::to_string(i + 1) + ": stars must be an integer in 1..5");
    }
    records.push_back({std::string(detail::trim(fields[0])), std::string(detail::trim(fields[1])),
                       static_cast<int>(*stars)});
  }
  return records;
}

/**
 * Builds the review hypergraph from the records passing `filter`. Items and
 * users are numbered in order of first appearance; repeated reviews of one
 * item by one user collapse into a single membership of weight 1. Users with
 * no surviving review get no hyperedge.
 */
inline LabeledHypergraph build_from_reviews(const std::vector<ReviewRecord>& records,
                                            const StarFilter& filter = std::nullopt) {
  detail::Interner items;
  detail::Interner users;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(records.size());
  for (const auto& r : records) {
    if (!detail::passes(filter, r.rating)) continue;
    pairs.emplace_back(items.id(r.item_id), users.id(r.user_id));
  }

  LabeledHypergraph out;
  out.vertex_labels = std::move(items.names());
  out.hyperedge_labels = std::move(users.names());
  Hypergraph& h = out.hypergraph;
  h = Hypergraph(out.vertex_labels.size(), out.hyperedge_labels.size());
  for (const auto& [v, e] : pairs) h.set_weight(VertexId{v}, HyperedgeId{e}, 1.0);
  for (auto v : h.vertices()) h.set_vertex_meta(v, out.vertex_labels[v.index()]);
  for (auto e : h.hyperedges()) h.set_hyperedge_meta(e, out.hyperedge_labels[e.index()]);
  return out;
}

/// Mean stars per item over the records passing `filter`, aligned with the
/// vertex numbering of build_from_reviews on the same input.
inline RatingTable item_ratings(const std::vector<ReviewRecord>& records,
                                const StarFilter& filter = std::nullopt) {
  detail::Interner items;
  std::vector<double> sum;
  std::vector<double> count;
  for (const auto& r : records) {
    if (!detail::passes(filter, r.rating)) continue;
    const std::size_t v = items.id(r.item_id);
    if (v > sum.size()) {
      sum.push_back(0.0);
      count.push_back(0.0);
    }
    sum[v - 1] += r.rating;
    count[v - 1] += 1.0;
  }
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] /= count[i];
  return RatingTable(std::move(sum));
}

// ---------------------------------------------------------------------------
// Scenes: one vertex per character, one hyperedge per scene.

struct SceneRecord {
  std::string id;
  std::vector<std::string> members;
};

/// Parses `[{"id": "...", "members": ["...", ...]}, ...]`.
inline std::vector<SceneRecord> parse_scenes_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::schema(e.what());
  }
  if (!doc.is_array()) detail::schema("scene document must be an array");
  std::vector<SceneRecord> scenes;
  scenes.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = "scene " + std::to_string(i);
    if (!item.is_object() || !item.contains("id") || !item.contains("members")) {
      detail::schema(where + ": expected {\"id\", \"members\"}");
    }
    SceneRecord scene;
    if (item["id"].is_string()) {
      scene.id = item["id"].get<std::string>();
    } else if (item["id"].is_number_integer()) {
      scene.id = item["id"].dump();
    } else {
      detail::schema(where + ": id must be text");
    }
    if (!item["members"].is_array()) detail::schema(where + ": members must be an array");
    for (const auto& m : item["members"]) {
      if (!m.is_string()) detail::schema(where + ": member names must be text");
      scene.members.push_back(m.get<std::string>());
    }
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

/// Characters numbered by first appearance; scenes without members are
/// dropped and repeated names inside a scene count once.
inline LabeledHypergraph build_from_scenes(const std::vector<SceneRecord>& scenes) {
  detail::Interner characters;
  std::vector<std::vector<std::size_t>> hyperedges;
  std::vector<std::string> scene_labels;
  for (const auto& scene : scenes) {
    if (scene.members.empty()) continue;
    std::vector<std::size_t> members;
    for (const auto& name : scene.members) members.push_back(characters.id(name));
    hyperedges.push_back(std::move(members));
    scene_labels.push_back(scene.id);
  }

  LabeledHypergraph out;
  out.vertex_labels = std::move(characters.names());
  out.hyperedge_labels = std::move(scene_labels);
  Hypergraph& h = out.hypergraph;
  h = Hypergraph(out.vertex_labels.size(), hyperedges.size());
  for (std::size_t j = 0; j < hyperedges.size(); ++j) {
    for (std::size_t v : hyperedges[j]) h.set_weight(VertexId{v}, HyperedgeId{j + 1}, 1.0);
  }
  for (auto v : h.vertices()) h.set_vertex_meta(v, out.vertex_labels[v.index()]);
  for (auto e : h.hyperedges()) h.set_hyperedge_meta(e, out.hyperedge_labels[e.index()]);
  return out;
}

// ---------------------------------------------------------------------------

/// Sub-hypergraph plus where each surviving id went.
struct ComponentExtract {
  Hypergraph hypergraph;
  VertexRemap vertices;       // every kept old vertex id -> new id
  HyperedgeRemap hyperedges;  // every kept old hyperedge id -> new id
};

/**
 * Induced sub-hypergraph on the largest connected component (ties go to the
 * component holding the smallest vertex id). Hyperedges are restricted to
 * the kept vertices and dropped when nothing of them remains. Relative
 * order of ids and all metadata are preserved.
 */
inline ComponentExtract largest_connected_component(const Hypergraph& h) {
  ComponentExtract out;
  const auto components = connected_components(h);
  if (components.empty()) return out;
  const auto* largest = &components.front();
  for (const auto& c : components) {
    if (c.size() > largest->size()) largest = &c;
  }

  Hypergraph& sub = out.hypergraph;
  sub = Hypergraph(largest->size(), 0);
  for (std::size_t i = 0; i < largest->size(); ++i) {
    const VertexId old = (*largest)[i];
    out.vertices.emplace(old, VertexId{i + 1});
    sub.set_vertex_meta(VertexId{i + 1}, h.get_vertex_meta(old));
  }
  for (auto e : h.hyperedges()) {
    std::map<VertexId, double> kept;
    for (const auto& [v, w] : h.get_vertices(e)) {
      auto it = out.vertices.find(v);
      if (it != out.vertices.end()) kept.emplace(it->second, w);
    }
    if (kept.empty()) continue;
    out.hyperedges.emplace(e, sub.add_hyperedge(kept, h.get_hyperedge_meta(e)));
  }
  return out;
}

/// Display name per vertex: string metadata, an object's "label" field, or
/// the id itself.
inline std::vector<std::string> vertex_display_labels(const Hypergraph& h) {
  std::vector<std::string> labels;
  labels.reserve(h.nhv());
  for (auto v : h.vertices()) {
    const auto& meta = h.get_vertex_meta(v);
    if (meta.is_string()) {
      labels.push_back(meta.get<std::string>());
    } else if (meta.is_object() && meta.contains("label") && meta["label"].is_string()) {
      labels.push_back(meta["label"].get<std::string>());
    } else {
      labels.push_back(std::to_string(v.value()));
    }
  }
  return labels;
}

}  // namespace hgkit
