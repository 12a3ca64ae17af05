#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hgkit/analytics.hpp"
#include "hgkit/hypergraph.hpp"

namespace hgkit {

/// Graph on the vertices where u ~ v (u != v) iff they share at least s
/// hyperedges. s = 1 gives the unweighted two-section graph.
class SAdjacency {
 public:
  SAdjacency(const Hypergraph& h, std::size_t s) : s_(s), adj_(h.nhv()) {
    if (s < 1) throw Error(ErrorCode::InvalidS, "s must be at least 1");
    // Shared-hyperedge counts per pair, accumulated hyperedge by hyperedge.
    std::vector<std::size_t> shared(h.nhv(), 0);
    std::vector<std::size_t> touched;
    for (auto u : h.vertices()) {
      touched.clear();
      for (const auto& entry : h.get_hyperedges(u)) {
        for (const auto& member : h.get_vertices(entry.first)) {
          const std::size_t v = member.first.index();
          if (v == u.index()) continue;
          if (shared[v]++ == 0) touched.push_back(v);
        }
      }
      std::sort(touched.begin(), touched.end());
      for (std::size_t v : touched) {
        if (shared[v] >= s) adj_[u.index()].emplace_back(v + 1);
        shared[v] = 0;
      }
    }
  }

  std::size_t s() const noexcept { return s_; }
  std::size_t node_count() const noexcept { return adj_.size(); }

  /// Ascending.
  const std::vector<VertexId>& neighbors(VertexId v) const {
    if (v.value() < 1 || v.value() > adj_.size()) {
      throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v.value()));
    }
    return adj_[v.index()];
  }

  bool adjacent(VertexId u, VertexId v) const {
    const auto& list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), v);
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& list : adj_) twice += list.size();
    return twice / 2;
  }

  /// Canonical (u < v) edge list.
  std::vector<std::pair<VertexId, VertexId>> edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      for (auto v : adj_[i]) {
        if (VertexId{i + 1} < v) out.emplace_back(VertexId{i + 1}, v);
      }
    }
    return out;
  }

 private:
  std::size_t s_;
  std::vector<std::vector<VertexId>> adj_;
};

/// Hop count of a shortest s-walk from u to v, or nothing if none exists.
inline std::optional<std::size_t> s_shortest_path_length(const SAdjacency& adj, VertexId u,
                                                         VertexId v) {
  adj.neighbors(u);
  adj.neighbors(v);
  if (u == v) return 0;
  std::vector<std::size_t> dist(adj.node_count(), 0);
  std::vector<bool> seen(adj.node_count(), false);
  std::deque<VertexId> queue{u};
  seen[u.index()] = true;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    for (auto y : adj.neighbors(x)) {
      if (seen[y.index()]) continue;
      seen[y.index()] = true;
      dist[y.index()] = dist[x.index()] + 1;
      if (y == v) return dist[y.index()];
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

struct BetweennessOptions {
  unsigned threads = 1;
  /// Sources are summed in a fixed number of blocks regardless of the thread
  /// count, so output is bit-identical on every machine.
  bool deterministic = true;
};

namespace detail {

/// Brandes dependency accumulation for one source, added into `score`.
struct BrandesWorkspace {
  explicit BrandesWorkspace(std::size_t n)
      : sigma(n), dist(n), delta(n), stack(), preds(n) {}

  std::vector<double> sigma;
  std::vector<long long> dist;
  std::vector<double> delta;
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> preds;

  void run(const SAdjacency& adj, std::size_t source, std::vector<double>& score) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    stack.clear();

    sigma[source] = 1.0;
    dist[source] = 0;
    std::deque<std::size_t> queue{source};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      stack.push_back(x);
      for (auto yid : adj.neighbors(VertexId{x + 1})) {
        const std::size_t y = yid.index();
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
        if (dist[y] == dist[x] + 1) {
          sigma[y] += sigma[x];
          preds[y].push_back(x);
        }
      }
    }
    while (!stack.empty()) {
      const std::size_t w = stack.back();
      stack.pop_back();
      for (std::size_t x : preds[w]) delta[x] += sigma[x] / sigma[w] * (1.0 + delta[w]);
      if (w != source) score[w] += delta[w];
    }
  }
};

}  // namespace detail

/**
 * Betweenness over shortest paths of an unweighted graph given as an
 * s-adjacency: C(v) = sum over unordered pairs {x, y}, x != v != y, of
 * sigma_xy(v) / sigma_xy. Pairs with no path contribute nothing. Raw,
 * unnormalized values.
 */
inline CentralityVector betweenness(const SAdjacency& adj, const BetweennessOptions& options = {}) {
  const std::size_t n = adj.node_count();
  if (n == 0) return CentralityVector{};

  const std::size_t threads = std::max<unsigned>(options.threads, 1);
  const std::size_t blocks = std::min<std::size_t>(n, options.deterministic ? 64 : threads);
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
  std::atomic<std::size_t> next_block{0};

  auto worker = [&] {
    detail::BrandesWorkspace ws(n);
    for (std::size_t b = next_block++; b < blocks; b = next_block++) {
      const std::size_t begin = b * n / blocks;
      const std::size_t end = (b + 1) * n / blocks;
      for (std::size_t source = begin; source < end; ++source) ws.run(adj, source, partial[b]);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, blocks); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<double> score(n, 0.0);
  for (const auto& block : partial) {
    for (std::size_t i = 0; i < n; ++i) score[i] += block[i];
  }
  // every unordered pair was counted from both ends
  for (double& x : score) x /= 2.0;
  return CentralityVector(std::move(score));
}

/// s-betweenness: betweenness over shortest s-walks.
inline CentralityVector s_betweenness(const Hypergraph& h, std::size_t s,
                                      const BetweennessOptions& options = {}) {
  return betweenness(SAdjacency(h, s), options);
}

/// Pearson correlation of two score vectors over the same vertices.
inline double pearson(const CentralityVector& xs, const CentralityVector& ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::DomainMismatch, "score vectors of length " + std::to_string(xs.size()) +
                                               " and " + std::to_string(ys.size()));
  }
  const auto& x = xs.scores();
  const auto& y = ys.scores();
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (x.empty() || sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::ZeroVariance, "correlation undefined for a constant score vector");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace hgkit
