#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hgkit/hypergraph.hpp"
#include "hgkit/views.hpp"

namespace hgkit {

/// Ground-truth star value s(v) per vertex, index v-1.
class RatingTable {
 public:
  RatingTable() = default;
  explicit RatingTable(std::vector<double> stars) : stars_(std::move(stars)) {
    for (double s : stars_) {
      if (!std::isfinite(s)) throw Error(ErrorCode::NonFiniteWeight, "rating " + std::to_string(s));
    }
  }

  std::size_t size() const noexcept { return stars_.size(); }
  double operator[](VertexId v) const { return stars_.at(v.index()); }
  const std::vector<double>& values() const noexcept { return stars_; }

 private:
  std::vector<double> stars_;
};

/// One optional prediction per vertex, index v-1.
using Predictions = std::vector<std::optional<double>>;

namespace detail {
inline void require_cover(std::size_t n, const RatingTable& ratings) {
  if (ratings.size() != n) {
    throw Error(ErrorCode::DomainMismatch, "ratings for " + std::to_string(ratings.size()) +
                                               " vertices, hypergraph has " + std::to_string(n));
  }
}
}  // namespace detail

/**
 * Hypergraph predictor: for each hyperedge containing u, average s over the
 * other members; then average those values. Single-member hyperedges have
 * no "other members" and are skipped. Undefined when u has no usable
 * hyperedge.
 */
inline Predictions forecast_hypergraph(const Hypergraph& h, const RatingTable& ratings) {
  detail::require_cover(h.nhv(), ratings);
  Predictions out(h.nhv());
  for (auto u : h.vertices()) {
    double sum = 0.0;
    std::size_t usable = 0;
    for (const auto& entry : h.get_hyperedges(u)) {
      const auto& members = h.get_vertices(entry.first);
      if (members.size() < 2) continue;
      double inner = 0.0;
      for (const auto& member : members) {
        if (member.first != u) inner += ratings[member.first];
      }
      sum += inner / static_cast<double>(members.size() - 1);
      ++usable;
    }
    if (usable > 0) out[u.index()] = sum / static_cast<double>(usable);
  }
  return out;
}

/// Graph predictor: average of s over two-section neighbors, weighted by
/// the number of shared hyperedges. Undefined for isolated vertices.
inline Predictions forecast_graph(const TwoSectionView& view, const RatingTable& ratings) {
  detail::require_cover(view.node_count(), ratings);
  Predictions out(view.node_count());
  for (auto u : view.hypergraph().vertices()) {
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& [v, w] : view.neighbors(u)) {
      weighted += ratings[v] * static_cast<double>(w);
      total += static_cast<double>(w);
    }
    if (total > 0.0) out[u.index()] = weighted / total;
  }
  return out;
}

struct ForecastError {
  double mean_absolute_error = 0.0;
  /// Number of vertices with a defined prediction (the averaging set).
  std::size_t evaluated = 0;
};

/// Mean |s(u) - s'(u)| over the vertices that have a prediction.
inline ForecastError average_error(const Predictions& predictions, const RatingTable& ratings) {
  detail::require_cover(predictions.size(), ratings);
  ForecastError err;
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!predictions[i]) continue;
    sum += std::abs(ratings.values()[i] - *predictions[i]);
    ++err.evaluated;
  }
  if (err.evaluated == 0) {
    throw Error(ErrorCode::EmptyEvaluationSet, "no vertex has a defined prediction");
  }
  err.mean_absolute_error = sum / static_cast<double>(err.evaluated);
  return err;
}

}  // namespace hgkit
