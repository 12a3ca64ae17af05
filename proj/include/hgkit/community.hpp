#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "hgkit/analytics.hpp"
#include "hgkit/hypergraph.hpp"
#include "hgkit/views.hpp"

namespace hgkit {

struct LpConfig {
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0;
  /// Visit order is reshuffled every iteration; it decides which tie draws
  /// consume which random numbers.
  bool shuffle_order = true;
};

struct LpResult {
  Partition partition;
  std::size_t iterations = 0;
};

namespace detail {

struct Ballot {
  Label label;
  /// More than one label shared the top weight.
  bool contested;
};

/// Majority vote over (label, weight) ballots; ties are drawn uniformly.
/// `ballots` is clobbered.
template <class URBG>
Ballot vote(std::vector<std::pair<Label, double>>& ballots, URBG& rng, std::vector<Label>& best) {
  std::sort(ballots.begin(), ballots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  best.clear();
  double top = -1.0;
  for (std::size_t i = 0; i < ballots.size();) {
    const Label label = ballots[i].first;
    double weight = 0.0;
    for (; i < ballots.size() && ballots[i].first == label; ++i) weight += ballots[i].second;
    if (weight > top) {
      top = weight;
      best.assign(1, label);
    } else if (weight == top) {
      best.push_back(label);
    }
  }
  if (best.size() == 1) return {best.front(), false};
  std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
  return {best[pick(rng)], true};
}

template <class URBG>
void visit_order(std::vector<std::size_t>& order, bool shuffle, URBG& rng) {
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) std::shuffle(order.begin(), order.end(), rng);
}

}  // namespace detail

/**
 * Label propagation on a weighted graph. Every node starts with its own
 * label; nodes are visited in a fresh random order each iteration and take,
 * in place, the label of largest total edge weight among their neighbors.
 *
 * Synchronous updates flip forever on a K4 split 2/2, hence in place.
 * An iteration that changes nothing only proves a fixed point when no vote
 * was a tie (a tie may be redrawn differently next time), so the run stops
 * at the first iteration with no change and no tie, or at
 * cfg.max_iterations.
 */
inline LpResult graph_label_propagation(const MaterializedGraph& g, const LpConfig& cfg = {}) {
  const std::size_t n = g.node_count;
  const auto adj = g.adjacency();
  std::mt19937_64 rng(cfg.seed);

  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i + 1);
  if (n == 0) return {Partition(std::move(labels)), 0};

  std::vector<std::size_t> order(n);
  std::vector<std::pair<Label, double>> ballots;
  std::vector<Label> best;
  std::size_t iteration = 0;
  const std::size_t limit = std::max<std::size_t>(cfg.max_iterations, 1);
  while (iteration < limit) {
    ++iteration;
    detail::visit_order(order, cfg.shuffle_order, rng);
    bool unsettled = false;
    for (std::size_t node : order) {
      if (adj[node].empty()) continue;
      ballots.clear();
      for (const auto& [other, w] : adj[node]) ballots.emplace_back(labels[other - 1], w);
      const auto b = detail::vote(ballots, rng, best);
      unsettled |= b.contested || b.label != labels[node];
      labels[node] = b.label;
    }
    if (!unsettled) break;
  }
  return {Partition(std::move(labels)), iteration};
}

inline LpResult graph_label_propagation(const TwoSectionView& view, const LpConfig& cfg = {}) {
  return graph_label_propagation(materialize(view), cfg);
}

/**
 * Two-phase label propagation on a hypergraph. Each iteration first labels
 * every hyperedge with the most frequent label among its vertices, then
 * labels every vertex with the most frequent label among its hyperedges
 * (each incident hyperedge counts once). Each phase reads only the other
 * side, so its updates are synchronous. Stops like the graph variant: no
 * vertex label changed and no vote in either phase was a tie. Vertices in
 * no hyperedge keep their initial label.
 */
inline LpResult hypergraph_label_propagation(const Hypergraph& h, const LpConfig& cfg = {}) {
  const std::size_t n = h.nhv();
  const std::size_t k = h.nhe();
  std::mt19937_64 rng(cfg.seed);

  std::vector<Label> vlabels(n);
  for (std::size_t i = 0; i < n; ++i) vlabels[i] = static_cast<Label>(i + 1);
  std::vector<Label> elabels(k);
  if (n == 0) return {Partition(std::move(vlabels)), 0};

  std::vector<std::size_t> edge_order(k);
  std::vector<std::size_t> vertex_order(n);
  std::vector<std::pair<Label, double>> ballots;
  std::vector<Label> best;
  std::size_t iteration = 0;
  const std::size_t limit = std::max<std::size_t>(cfg.max_iterations, 1);
  while (iteration < limit) {
    ++iteration;
    bool unsettled = false;

    detail::visit_order(edge_order, cfg.shuffle_order, rng);
    for (std::size_t slot : edge_order) {
      const auto& members = h.get_vertices(HyperedgeId{slot + 1});
      if (members.empty()) continue;
      ballots.clear();
      for (const auto& member : members) ballots.emplace_back(vlabels[member.first.index()], 1.0);
      const auto b = detail::vote(ballots, rng, best);
      unsettled |= b.contested;
      elabels[slot] = b.label;
    }

    detail::visit_order(vertex_order, cfg.shuffle_order, rng);
    for (std::size_t slot : vertex_order) {
      const auto& row = h.get_hyperedges(VertexId{slot + 1});
      if (row.empty()) continue;
      ballots.clear();
      for (const auto& entry : row) ballots.emplace_back(elabels[entry.first.index()], 1.0);
      const auto b = detail::vote(ballots, rng, best);
      unsettled |= b.contested || b.label != vlabels[slot];
      vlabels[slot] = b.label;
    }
    if (!unsettled) break;
  }
  return {Partition(std::move(vlabels)), iteration};
}

namespace detail {

/// Sum after sorting so that equal multisets of terms give bit-equal sums.
inline double stable_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace detail

/**
 * Normalized mutual information 2 I(X;Y) / (H(X) + H(Y)), natural log.
 * Two single-community partitions compare as 1.
 */
inline double nmi(const Partition& x, const Partition& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::DomainMismatch, "partitions cover " + std::to_string(x.size()) +
                                               " and " + std::to_string(y.size()) + " vertices");
  }
  if (x.size() == 0) throw Error(ErrorCode::EmptyDomain, "partitions are empty");

  const double total = static_cast<double>(x.size());
  std::map<Label, double> a;
  std::map<Label, double> b;
  std::map<std::pair<Label, Label>, double> joint;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Label lx = x.labels()[i];
    const Label ly = y.labels()[i];
    a[lx] += 1.0;
    b[ly] += 1.0;
    joint[{lx, ly}] += 1.0;
  }

  std::vector<double> terms;
  auto entropy = [&](const std::map<Label, double>& counts) {
    terms.clear();
    for (const auto& entry : counts) terms.push_back(entry.second / total * std::log(total / entry.second));
    return detail::stable_sum(terms);
  };
  const double hx = entropy(a);
  const double hy = entropy(b);

  terms.clear();
  for (const auto& [key, c] : joint) {
    const double ratio = (c * total) / (a[key.first] * b[key.second]);
    terms.push_back(c / total * std::log(ratio));
  }
  const double mutual = detail::stable_sum(terms);

  if (hx + hy == 0.0) return 1.0;
  return std::clamp(2.0 * mutual / (hx + hy), 0.0, 1.0);
}

}  // namespace hgkit
