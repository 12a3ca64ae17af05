#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "hgkit/forecast.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace hgkit {
namespace {

using namespace literals;
using testing::build;
using testing::expect_error;

// b1..b3 rated (5, 3, 1); user u1 reviewed {b1, b2}, u2 reviewed {b2, b3}.
Hypergraph businesses() { return build(3, {{1, 2}, {2, 3}}); }
const RatingTable kStars({5.0, 3.0, 1.0});

TEST(ForecastHypergraph, HandInstance) {
  const auto p = forecast_hypergraph(businesses(), kStars);
  EXPECT_EQ(3.0, p[1]);
  EXPECT_EQ(3.0, p[0]);
  EXPECT_EQ(3.0, p[2]);

  auto h = businesses();
  h.add_vertex();
  h.add_hyperedge({{1_v, 1.0}});
  const auto q = forecast_hypergraph(h, RatingTable({5, 3, 1, 4}));
  EXPECT_EQ(std::nullopt, q[3]);
  // the singleton hyperedge of b1 is skipped
  EXPECT_EQ(3.0, q[0]);
}

TEST(ForecastHypergraph, OnlySingletonHyperedgesIsUndefined) {
  const auto p = forecast_hypergraph(build(2, {{1}, {2}, {1}}), RatingTable({1, 2}));
  EXPECT_EQ(std::nullopt, p[0]);
  EXPECT_EQ(std::nullopt, p[1]);
}

TEST(ForecastGraph, HandInstance) {
  auto h = businesses();
  EXPECT_EQ(3.0, forecast_graph(TwoSectionView(h), kStars)[1]);
  h.add_hyperedge({{1_v, 1.0}, {2_v, 1.0}});
  EXPECT_DOUBLE_EQ(11.0 / 3.0, *forecast_graph(TwoSectionView(h), kStars)[1]);
  h.add_vertex();
  EXPECT_EQ(std::nullopt, forecast_graph(TwoSectionView(h), RatingTable({5, 3, 1, 2}))[3]);
}

TEST(AverageError, HandInstanceAndEdgeCases) {
  const auto err = average_error(forecast_hypergraph(businesses(), kStars), kStars);
  EXPECT_EQ(4.0 / 3.0, err.mean_absolute_error);
  EXPECT_EQ(3u, err.evaluated);

  EXPECT_EQ(0.0, average_error({5.0, 3.0, 1.0}, kStars).mean_absolute_error);
  const auto partial = average_error({std::nullopt, 4.0, std::nullopt}, kStars);
  EXPECT_EQ(1.0, partial.mean_absolute_error);
  EXPECT_EQ(1u, partial.evaluated);
  expect_error(ErrorCode::EmptyEvaluationSet, [] { average_error({std::nullopt, std::nullopt, std::nullopt}, kStars); });
  expect_error(ErrorCode::DomainMismatch, [] { average_error({1.0}, kStars); });
}

TEST(Forecast, ConvexAndConstantClosure) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> star(1.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = testing::random_hypergraph(rng, 2 + trial % 15, 1 + trial % 8, 0.3);
    std::vector<double> s(h.nhv());
    for (auto& x : s) x = star(rng);
    const RatingTable ratings(s);
    const auto lo = *std::min_element(s.begin(), s.end());
    const auto hi = *std::max_element(s.begin(), s.end());
    for (const auto& preds : {forecast_hypergraph(h, ratings), forecast_graph(TwoSectionView(h), ratings)}) {
      for (const auto& p : preds) {
        if (!p) continue;
        EXPECT_GE(*p, lo - 1e-12);
        EXPECT_LE(*p, hi + 1e-12);
      }
    }

    const RatingTable constant(std::vector<double>(h.nhv(), 3.5));
    for (const auto& p : forecast_hypergraph(h, constant)) {
      if (p) EXPECT_NEAR(3.5, *p, 1e-12);
    }
  }
}

TEST(Forecast, PairHyperedgesMakeBothPredictorsAgree) {
  // all hyperedges of size 2, no repeated pair: unit two-section weights
  const auto h = build(5, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 5}});
  const RatingTable r({1, 2, 4, 5, 3});
  const auto a = forecast_hypergraph(h, r);
  const auto b = forecast_graph(TwoSectionView(h), r);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(*a[i], *b[i], 1e-12);
}

TEST(Forecast, ErrorInvariantUnderRelabeling) {
  const auto h = build(4, {{1, 2, 3}, {3, 4}});
  const RatingTable r({1, 2, 4, 5});
  // reverse the vertex ids
  const auto g = build(4, {{4, 3, 2}, {2, 1}});
  const RatingTable rr({5, 4, 2, 1});
  EXPECT_NEAR(average_error(forecast_hypergraph(h, r), r).mean_absolute_error,
              average_error(forecast_hypergraph(g, rr), rr).mean_absolute_error, 1e-12);
}

}  // namespace
}  // namespace hgkit
