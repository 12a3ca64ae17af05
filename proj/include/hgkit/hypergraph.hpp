#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgkit/error.hpp"

namespace hgkit {

/// 1-based identifier. The tag keeps vertex and hyperedge ids from mixing.
template <class Tag>
class Id {
 public:
  constexpr Id() = default;
  constexpr explicit Id(std::size_t value) : value_(value) {}

  constexpr std::size_t value() const noexcept { return value_; }
  /// Zero-based slot, for indexing dense per-id arrays.
  constexpr std::size_t index() const noexcept { return value_ - 1; }

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
  friend constexpr bool operator==(const Id&, const Id&) = default;

 private:
  std::size_t value_ = 0;
};

using VertexId = Id<struct VertexTag>;
using HyperedgeId = Id<struct HyperedgeTag>;

namespace literals {
constexpr VertexId operator""_v(unsigned long long v) { return VertexId{static_cast<std::size_t>(v)}; }
constexpr HyperedgeId operator""_e(unsigned long long e) { return HyperedgeId{static_cast<std::size_t>(e)}; }
}  // namespace literals

/// Opaque per-vertex / per-hyperedge payload; null means "no metadata".
using Metadata = nlohmann::json;

/// old id -> new id for every id whose number changed.
template <class IdT>
using IdRemap = std::map<IdT, IdT>;
using VertexRemap = IdRemap<VertexId>;
using HyperedgeRemap = IdRemap<HyperedgeId>;

/// Dense n x k incidence grid; an empty cell means non-membership.
using IncidenceMatrix = std::vector<std::vector<std::optional<double>>>;

/**
 * Weighted hypergraph stored as a sparse n x k matrix with two redundant
 * indexes: one row map per vertex (hyperedge -> weight) and one column map
 * per hyperedge (vertex -> weight). Both are kept in lockstep by every
 * mutation, so row and column queries cost the same.
 *
 * Ids are contiguous: vertices are 1..nhv() and hyperedges 1..nhe() at all
 * times. Removal moves the last id into the freed slot and reports the move.
 */
class Hypergraph {
 public:
  using VertexRow = std::map<HyperedgeId, double>;
  using HyperedgeColumn = std::map<VertexId, double>;

  Hypergraph() = default;

  Hypergraph(std::size_t n, std::size_t k)
      : v2he_(n), he2v_(k), vmeta_(n), hemeta_(k) {}

  static Hypergraph from_incidence(const IncidenceMatrix& matrix) {
    const std::size_t n = matrix.size();
    const std::size_t k = n == 0 ? 0 : matrix.front().size();
    for (const auto& row : matrix) {
      if (row.size() != k) {
        throw Error(ErrorCode::NonRectangular, "row of length " + std::to_string(row.size()) +
                                                   " in a grid of width " + std::to_string(k));
      }
      for (const auto& cell : row) {
        if (cell) check_finite(*cell);
      }
    }
    Hypergraph h(n, k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (matrix[i][j]) h.link(VertexId{i + 1}, HyperedgeId{j + 1}, *matrix[i][j]);
      }
    }
    return h;
  }

  IncidenceMatrix to_incidence() const {
    IncidenceMatrix m(nhv(), std::vector<std::optional<double>>(nhe()));
    for (std::size_t i = 0; i < v2he_.size(); ++i) {
      for (const auto& [e, w] : v2he_[i]) m[i][e.index()] = w;
    }
    return m;
  }

  std::size_t nhv() const noexcept { return v2he_.size(); }
  std::size_t nhe() const noexcept { return he2v_.size(); }

  /// Total number of (vertex, hyperedge) memberships.
  std::size_t incidence_count() const noexcept { return incidences_; }

  bool contains(VertexId v) const noexcept { return v.value() >= 1 && v.value() <= nhv(); }
  bool contains(HyperedgeId e) const noexcept { return e.value() >= 1 && e.value() <= nhe(); }

  auto vertices() const {
    return std::views::iota(std::size_t{1}, nhv() + 1) |
           std::views::transform([](std::size_t i) { return VertexId{i}; });
  }
  auto hyperedges() const {
    return std::views::iota(std::size_t{1}, nhe() + 1) |
           std::views::transform([](std::size_t i) { return HyperedgeId{i}; });
  }

  VertexId add_vertex(const std::map<HyperedgeId, double>& hyperedges = {}, Metadata meta = {}) {
    for (const auto& [e, w] : hyperedges) {
      require(e);
      check_finite(w);
    }
    v2he_.emplace_back();
    vmeta_.push_back(std::move(meta));
    const VertexId v{nhv()};
    for (const auto& [e, w] : hyperedges) link(v, e, w);
    return v;
  }

  HyperedgeId add_hyperedge(const std::map<VertexId, double>& vertices = {}, Metadata meta = {}) {
    for (const auto& [v, w] : vertices) {
      require(v);
      check_finite(w);
    }
    he2v_.emplace_back();
    hemeta_.push_back(std::move(meta));
    const HyperedgeId e{nhe()};
    for (const auto& [v, w] : vertices) link(v, e, w);
    return e;
  }

  /// Drops v and relocates the last vertex into its slot.
  VertexRemap remove_vertex(VertexId v) {
    require(v);
    for (const auto& [e, w] : v2he_[v.index()]) he2v_[e.index()].erase(v);
    incidences_ -= v2he_[v.index()].size();

    VertexRemap remap;
    const VertexId last{nhv()};
    if (v != last) {
      v2he_[v.index()] = std::move(v2he_[last.index()]);
      vmeta_[v.index()] = std::move(vmeta_[last.index()]);
      for (const auto& [e, w] : v2he_[v.index()]) {
        auto& column = he2v_[e.index()];
        column.erase(last);
        column.emplace(v, w);
      }
      remap.emplace(last, v);
    }
    v2he_.pop_back();
    vmeta_.pop_back();
    return remap;
  }

  /// Drops e and relocates the last hyperedge into its slot.
  HyperedgeRemap remove_hyperedge(HyperedgeId e) {
    require(e);
    for (const auto& [v, w] : he2v_[e.index()]) v2he_[v.index()].erase(e);
    incidences_ -= he2v_[e.index()].size();

    HyperedgeRemap remap;
    const HyperedgeId last{nhe()};
    if (e != last) {
      he2v_[e.index()] = std::move(he2v_[last.index()]);
      hemeta_[e.index()] = std::move(hemeta_[last.index()]);
      for (const auto& [v, w] : he2v_[e.index()]) {
        auto& row = v2he_[v.index()];
        row.erase(last);
        row.emplace(e, w);
      }
      remap.emplace(last, e);
    }
    he2v_.pop_back();
    hemeta_.pop_back();
    return remap;
  }

  /// Sets (or, with an empty weight, deletes) the incidence (v, e).
  /// Returns the weight that was there before.
  std::optional<double> set_weight(VertexId v, HyperedgeId e, std::optional<double> w) {
    require(v);
    require(e);
    if (w) check_finite(*w);
    auto previous = get_weight(v, e);
    if (w) {
      if (previous) {
        v2he_[v.index()][e] = *w;
        he2v_[e.index()][v] = *w;
      } else {
        link(v, e, *w);
      }
    } else if (previous) {
      v2he_[v.index()].erase(e);
      he2v_[e.index()].erase(v);
      --incidences_;
    }
    return previous;
  }

  std::optional<double> get_weight(VertexId v, HyperedgeId e) const {
    const auto& row = get_hyperedges(v);
    require(e);
    auto it = row.find(e);
    if (it == row.end()) return std::nullopt;
    return it->second;
  }

  const HyperedgeColumn& get_vertices(HyperedgeId e) const {
    require(e);
    return he2v_[e.index()];
  }

  const VertexRow& get_hyperedges(VertexId v) const {
    require(v);
    return v2he_[v.index()];
  }

  /// |E(v)|
  std::size_t degree(VertexId v) const { return get_hyperedges(v).size(); }
  /// |e|
  std::size_t size(HyperedgeId e) const { return get_vertices(e).size(); }

  const Metadata& get_vertex_meta(VertexId v) const {
    require(v);
    return vmeta_[v.index()];
  }
  void set_vertex_meta(VertexId v, Metadata value) {
    require(v);
    vmeta_[v.index()] = std::move(value);
  }
  const Metadata& get_hyperedge_meta(HyperedgeId e) const {
    require(e);
    return hemeta_[e.index()];
  }
  void set_hyperedge_meta(HyperedgeId e, Metadata value) {
    require(e);
    hemeta_[e.index()] = std::move(value);
  }

  /// Full cross-check of the two indexes. O(incidences log).
  bool is_consistent() const {
    if (vmeta_.size() != v2he_.size() || hemeta_.size() != he2v_.size()) return false;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < v2he_.size(); ++i) {
      for (const auto& [e, w] : v2he_[i]) {
        if (!contains(e)) return false;
        const auto& column = he2v_[e.index()];
        auto it = column.find(VertexId{i + 1});
        if (it == column.end() || !(it->second == w)) return false;
      }
      rows += v2he_[i].size();
    }
    std::size_t columns = 0;
    for (const auto& column : he2v_) {
      for (const auto& [v, w] : column) {
        if (!contains(v)) return false;
      }
      columns += column.size();
    }
    return rows == columns && rows == incidences_;
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.v2he_ == b.v2he_ && a.he2v_ == b.he2v_ && a.vmeta_ == b.vmeta_ &&
           a.hemeta_ == b.hemeta_;
  }

  /// Equality ignoring metadata.
  bool same_structure(const Hypergraph& other) const {
    return v2he_ == other.v2he_ && he2v_ == other.he2v_;
  }

 private:
  static void check_finite(double w) {
    if (!std::isfinite(w)) throw Error(ErrorCode::NonFiniteWeight, std::to_string(w));
  }

  void require(VertexId v) const {
    if (!contains(v)) {
      throw Error(ErrorCode::UnknownVertex,
                  "vertex " + std::to_string(v.value()) + " (n=" + std::to_string(nhv()) + ")");
    }
  }
  void require(HyperedgeId e) const {
    if (!contains(e)) {
      throw Error(ErrorCode::UnknownHyperedge,
                  "hyperedge " + std::to_string(e.value()) + " (k=" + std::to_string(nhe()) + ")");
    }
  }

  void link(VertexId v, HyperedgeId e, double w) {
    v2he_[v.index()].emplace(e, w);
    he2v_[e.index()].emplace(v, w);
    ++incidences_;
  }

  std::vector<VertexRow> v2he_;
  std::vector<HyperedgeColumn> he2v_;
  std::vector<Metadata> vmeta_;
  std::vector<Metadata> hemeta_;
  std::size_t incidences_ = 0;
};

}  // namespace hgkit

template <class Tag>
struct std::hash<hgkit::Id<Tag>> {
  std::size_t operator()(const hgkit::Id<Tag>& id) const noexcept {
    return std::hash<std::size_t>{}(id.value());
  }
};
