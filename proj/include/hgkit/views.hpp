#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hgkit/hypergraph.hpp"

namespace hgkit {

/// Plain undirected weighted graph on nodes 1..node_count. Edges are stored
/// once with u < v, sorted, without duplicates. Carries no metadata.
struct MaterializedGraph {
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 1.0;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::size_t node_count = 0;
  std::vector<Edge> edges;

  double total_weight() const {
    double m = 0.0;
    for (const auto& edge : edges) m += edge.weight;
    return m;
  }

  /// adjacency[i] lists (neighbor, weight) for node i+1, neighbors ascending.
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(node_count);
    for (const auto& edge : edges) {
      adj[edge.u - 1].emplace_back(edge.v, edge.weight);
      adj[edge.v - 1].emplace_back(edge.u, edge.weight);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
  }

  friend bool operator==(const MaterializedGraph&, const MaterializedGraph&) = default;
};

/**
 * Incidence graph on V ∪ E: nodes 1..n are the vertices, nodes n+1..n+k the
 * hyperedges, and an edge joins vertex v to node n+e iff v ∈ e. Adjacency is
 * read from the hypergraph on every call; nothing is copied.
 */
class BipartiteView {
 public:
  explicit BipartiteView(const Hypergraph& h) : h_(&h) {}

  std::size_t node_count() const { return h_->nhv() + h_->nhe(); }
  std::size_t edge_count() const { return h_->incidence_count(); }
  bool is_vertex_node(std::size_t node) const { return node >= 1 && node <= h_->nhv(); }

  std::size_t node_of(VertexId v) const { return v.value(); }
  std::size_t node_of(HyperedgeId e) const { return h_->nhv() + e.value(); }

  std::vector<std::size_t> neighbors(std::size_t node) const {
    require(node);
    std::vector<std::size_t> out;
    const std::size_t n = h_->nhv();
    if (node <= n) {
      const auto& row = h_->get_hyperedges(VertexId{node});
      out.reserve(row.size());
      for (const auto& entry : row) out.push_back(n + entry.first.value());
    } else {
      const auto& column = h_->get_vertices(HyperedgeId{node - n});
      out.reserve(column.size());
      for (const auto& entry : column) out.push_back(entry.first.value());
    }
    return out;
  }

  const Hypergraph& hypergraph() const { return *h_; }

 private:
  void require(std::size_t node) const {
    if (node < 1 || node > node_count()) {
      throw Error(ErrorCode::UnknownNode, "node " + std::to_string(node) + " of " +
                                              std::to_string(node_count()));
    }
  }

  const Hypergraph* h_;
};

/**
 * Two-section (clique expansion) of a hypergraph: u ~ v for u != v iff some
 * hyperedge holds both, weighted by the number of hyperedges they share.
 * Computed on demand from the incidence indexes.
 */
class TwoSectionView {
 public:
  explicit TwoSectionView(const Hypergraph& h) : h_(&h) {}

  std::size_t node_count() const { return h_->nhv(); }

  std::map<VertexId, std::size_t> neighbors(VertexId v) const {
    std::map<VertexId, std::size_t> out;
    for (const auto& [e, w] : h_->get_hyperedges(v)) {
      for (const auto& [u, wu] : h_->get_vertices(e)) {
        if (u != v) ++out[u];
      }
    }
    return out;
  }

  /// Number of hyperedges shared by u and v; 0 when not adjacent or u == v.
  std::size_t weight(VertexId u, VertexId v) const {
    if (u == v) {
      h_->get_hyperedges(u);
      return 0;
    }
    const auto& a = h_->get_hyperedges(u);
    const auto& b = h_->get_hyperedges(v);
    std::size_t shared = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (i->first < j->first) {
        ++i;
      } else if (j->first < i->first) {
        ++j;
      } else {
        ++shared;
        ++i;
        ++j;
      }
    }
    return shared;
  }

  /// Number of distinct co-members of v.
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (auto v : h_->vertices()) twice += degree(v);
    return twice / 2;
  }

  const Hypergraph& hypergraph() const { return *h_; }

 private:
  const Hypergraph* h_;
};

inline MaterializedGraph materialize(const BipartiteView& view) {
  MaterializedGraph g;
  g.node_count = view.node_count();
  const auto& h = view.hypergraph();
  g.edges.reserve(h.incidence_count());
  for (auto v : h.vertices()) {
    for (const auto& entry : h.get_hyperedges(v)) {
      g.edges.push_back({v.value(), view.node_of(entry.first), 1.0});
    }
  }
  return g;
}

inline MaterializedGraph materialize(const TwoSectionView& view) {
  MaterializedGraph g;
  g.node_count = view.node_count();
  for (auto u : view.hypergraph().vertices()) {
    for (const auto& [v, shared] : view.neighbors(u)) {
      if (u < v) g.edges.push_back({u.value(), v.value(), static_cast<double>(shared)});
    }
  }
  return g;
}

}  // namespace hgkit
