#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hgkit/hypergraph.hpp"
#include "hgkit/views.hpp"

namespace hgkit {

using Label = std::int64_t;

/// Assignment of every vertex 1..size() to one community label. Labels are
/// arbitrary integers; communities are the label fibers.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Label> labels) : labels_(std::move(labels)) {}

  static Partition singletons(std::size_t n) {
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i + 1);
    return Partition(std::move(labels));
  }

  static Partition whole(std::size_t n) { return Partition(std::vector<Label>(n, 1)); }

  /// Builds a partition of 1..n from explicit blocks. Every vertex must be in
  /// exactly one block.
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<VertexId>>& blocks) {
    std::vector<Label> labels(n, 0);
    std::vector<bool> seen(n, false);
    Label next = 1;
    for (const auto& block : blocks) {
      for (auto v : block) {
        if (v.value() < 1 || v.value() > n || seen[v.index()]) {
          throw Error(ErrorCode::PartitionNotTotal,
                      "vertex " + std::to_string(v.value()) + " out of range or repeated");
        }
        seen[v.index()] = true;
        labels[v.index()] = next;
      }
      ++next;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::PartitionNotTotal, "blocks do not cover every vertex");
    }
    return Partition(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  Label label(VertexId v) const { return labels_.at(v.index()); }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  /// Blocks, each ascending, ordered by their smallest member.
  std::vector<std::vector<VertexId>> communities() const {
    std::map<Label, std::size_t> slot;
    std::vector<std::vector<VertexId>> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      auto [it, fresh] = slot.emplace(labels_[i], out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(VertexId{i + 1});
    }
    return out;
  }

  std::size_t community_count() const {
    std::vector<Label> sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Label> labels_;
};

/// Per-vertex real score with a total order (score desc, vertex id asc).
class CentralityVector {
 public:
  CentralityVector() = default;
  explicit CentralityVector(std::vector<double> scores) : scores_(std::move(scores)) {}

  std::size_t size() const noexcept { return scores_.size(); }
  double score(VertexId v) const { return scores_.at(v.index()); }
  const std::vector<double>& scores() const noexcept { return scores_; }

  std::vector<VertexId> ranking() const {
    std::vector<VertexId> order;
    order.reserve(scores_.size());
    for (std::size_t i = 1; i <= scores_.size(); ++i) order.emplace_back(i);
    std::stable_sort(order.begin(), order.end(), [this](VertexId a, VertexId b) {
      return scores_[a.index()] > scores_[b.index()];
    });
    return order;
  }

  std::vector<VertexId> top(std::size_t k) const {
    auto order = ranking();
    if (order.size() > k) order.resize(k);
    return order;
  }

 private:
  std::vector<double> scores_;
};

/// Vertex sets joined by vertex/hyperedge alternating paths. Each component
/// is ascending; components are ordered by smallest member. Vertices in no
/// hyperedge are singletons.
inline std::vector<std::vector<VertexId>> connected_components(const Hypergraph& h) {
  std::vector<bool> seen_vertex(h.nhv(), false);
  std::vector<bool> seen_edge(h.nhe(), false);
  std::vector<std::vector<VertexId>> components;
  std::vector<VertexId> frontier;
  for (auto start : h.vertices()) {
    if (seen_vertex[start.index()]) continue;
    std::vector<VertexId> component{start};
    seen_vertex[start.index()] = true;
    frontier.assign(1, start);
    while (!frontier.empty()) {
      const VertexId v = frontier.back();
      frontier.pop_back();
      for (const auto& entry : h.get_hyperedges(v)) {
        const HyperedgeId e = entry.first;
        if (seen_edge[e.index()]) continue;
        seen_edge[e.index()] = true;
        for (const auto& member : h.get_vertices(e)) {
          const VertexId u = member.first;
          if (seen_vertex[u.index()]) continue;
          seen_vertex[u.index()] = true;
          component.push_back(u);
          frontier.push_back(u);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

// ---------------------------------------------------------------------------
// Random walk

/// Picks one of the hyperedges containing v uniformly.
struct UniformHyperedge {
  template <class URBG>
  HyperedgeId operator()(const Hypergraph& h, VertexId v, URBG& rng) const {
    const auto& row = h.get_hyperedges(v);
    std::uniform_int_distribution<std::size_t> pick(0, row.size() - 1);
    return std::next(row.begin(), static_cast<std::ptrdiff_t>(pick(rng)))->first;
  }
};

/// Picks a member of e uniformly; the current vertex is a valid target.
struct UniformMember {
  template <class URBG>
  VertexId operator()(const Hypergraph& h, VertexId, HyperedgeId e, URBG& rng) const {
    const auto& column = h.get_vertices(e);
    std::uniform_int_distribution<std::size_t> pick(0, column.size() - 1);
    return std::next(column.begin(), static_cast<std::ptrdiff_t>(pick(rng)))->first;
  }
};

/// One step of a hypergraph walk: choose a hyperedge containing v, then a
/// vertex inside it. Selectors may be replaced; they must return a hyperedge
/// of v and a member of that hyperedge respectively.
template <class URBG, class HyperedgeSelector = UniformHyperedge,
          class VertexSelector = UniformMember>
VertexId random_walk_step(const Hypergraph& h, VertexId v, URBG& rng,
                          HyperedgeSelector heselect = {}, VertexSelector vselect = {}) {
  if (h.degree(v) == 0) {
    throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v.value()));
  }
  const HyperedgeId e = heselect(h, v, rng);
  if (!h.contains(e) || !h.get_vertices(e).contains(v)) {
    throw Error(ErrorCode::UnknownHyperedge,
                "selector returned hyperedge " + std::to_string(e.value()) + " not containing " +
                    std::to_string(v.value()));
  }
  const VertexId target = vselect(h, v, e, rng);
  if (!h.contains(target) || !h.get_vertices(e).contains(target)) {
    throw Error(ErrorCode::UnknownVertex,
                "selector returned vertex " + std::to_string(target.value()) + " outside hyperedge " +
                    std::to_string(e.value()));
  }
  return target;
}

/// Exact one-step distribution of the default walk from v:
/// P(u|v) = sum over e containing u and v of 1/(|E(v)| |e|).
inline std::map<VertexId, double> random_walk_kernel(const Hypergraph& h, VertexId v) {
  const std::size_t deg = h.degree(v);
  if (deg == 0) throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v.value()));
  std::map<VertexId, double> row;
  for (const auto& entry : h.get_hyperedges(v)) {
    const auto& members = h.get_vertices(entry.first);
    const double p = 1.0 / (static_cast<double>(deg) * static_cast<double>(members.size()));
    for (const auto& member : members) row[member.first] += p;
  }
  return row;
}

// ---------------------------------------------------------------------------
// Degrees and modularity

struct DegreeSequenceSummary {
  std::vector<std::size_t> degrees;           // deg(v) = |E(v)|, index v-1
  std::map<std::size_t, std::size_t> sizes;   // d -> number of hyperedges with |e| = d
  std::size_t volume = 0;                     // vol(V)

  std::size_t volume_of(const std::vector<VertexId>& set) const {
    std::size_t vol = 0;
    for (auto v : set) vol += degrees.at(v.index());
    return vol;
  }
};

inline DegreeSequenceSummary degree_summary(const Hypergraph& h) {
  DegreeSequenceSummary s;
  s.degrees.reserve(h.nhv());
  for (auto v : h.vertices()) {
    s.degrees.push_back(h.degree(v));
    s.volume += s.degrees.back();
  }
  for (auto e : h.hyperedges()) ++s.sizes[h.size(e)];
  return s;
}

/**
 * Strict hypergraph modularity of p:
 *
 *   Q = (1/m) sum_A e(A)  -  (1/m) sum_d E_d sum_A (vol(A)/vol(V))^d
 *
 * where e(A) counts hyperedges lying entirely inside community A, E_d counts
 * hyperedges of size d and m is the number of nonempty hyperedges. Degrees
 * are unweighted. Empty hyperedges take no part.
 */
inline double hypergraph_modularity(const Hypergraph& h, const Partition& p) {
  if (p.size() != h.nhv()) {
    throw Error(ErrorCode::PartitionNotTotal, "partition covers " + std::to_string(p.size()) +
                                                  " of " + std::to_string(h.nhv()) + " vertices");
  }
  if (h.nhe() == 0) throw Error(ErrorCode::NoHyperedges, "modularity needs at least one hyperedge");

  std::map<Label, double> volume;
  double total_volume = 0.0;
  for (auto v : h.vertices()) {
    const double d = static_cast<double>(h.degree(v));
    volume[p.label(v)] += d;
    total_volume += d;
  }

  std::map<std::size_t, double> size_counts;
  double m = 0.0;
  double inside = 0.0;
  for (auto e : h.hyperedges()) {
    const auto& members = h.get_vertices(e);
    if (members.empty()) continue;
    m += 1.0;
    size_counts[members.size()] += 1.0;
    const Label first = p.label(members.begin()->first);
    bool contained = true;
    for (const auto& member : members) {
      if (p.label(member.first) != first) {
        contained = false;
        break;
      }
    }
    if (contained) inside += 1.0;
  }
  if (m == 0.0) {
    throw Error(ErrorCode::NoUsableHyperedges, "every hyperedge is empty");
  }

  double expected = 0.0;
  for (const auto& [d, count] : size_counts) {
    double sum = 0.0;
    for (const auto& entry : volume) {
      sum += std::pow(entry.second / total_volume, static_cast<double>(d));
    }
    expected += count * sum;
  }
  return inside / m - expected / m;
}

/// Newman modularity of a weighted graph:
/// Q = sum_c [ W_in(c)/m - (K(c)/2m)^2 ], m = total edge weight.
inline double graph_modularity(const MaterializedGraph& g, const Partition& p) {
  if (p.size() != g.node_count) {
    throw Error(ErrorCode::PartitionNotTotal, "partition covers " + std::to_string(p.size()) +
                                                  " of " + std::to_string(g.node_count) + " nodes");
  }
  const double m = g.total_weight();
  if (g.edges.empty() || m == 0.0) throw Error(ErrorCode::EmptyGraph, "graph has no edge weight");

  const auto& labels = p.labels();
  std::map<Label, double> inside;
  std::map<Label, double> strength;
  for (const auto& edge : g.edges) {
    const Label a = labels[edge.u - 1];
    const Label b = labels[edge.v - 1];
    if (a == b) inside[a] += edge.weight;
    strength[a] += edge.weight;
    strength[b] += edge.weight;
  }
  double q = 0.0;
  for (const auto& [label, k] : strength) {
    auto it = inside.find(label);
    const double w_in = it == inside.end() ? 0.0 : it->second;
    const double share = k / (2.0 * m);
    q += w_in / m - share * share;
  }
  return q;
}

inline double graph_modularity(const TwoSectionView& view, const Partition& p) {
  return graph_modularity(materialize(view), p);
}

// ---------------------------------------------------------------------------
// Degree centrality

/// C(v) = |E(v)|.
inline CentralityVector degree_centrality(const Hypergraph& h) {
  std::vector<double> scores;
  scores.reserve(h.nhv());
  for (auto v : h.vertices()) scores.push_back(static_cast<double>(h.degree(v)));
  return CentralityVector(std::move(scores));
}

/// Degree in the two-section graph: number of distinct co-members.
inline CentralityVector graph_degree_centrality(const TwoSectionView& view) {
  std::vector<double> scores;
  scores.reserve(view.node_count());
  for (auto v : view.hypergraph().vertices()) {
    scores.push_back(static_cast<double>(view.degree(v)));
  }
  return CentralityVector(std::move(scores));
}

}  // namespace hgkit
