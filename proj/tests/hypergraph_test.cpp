#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "hgkit/hypergraph.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace hgkit {
namespace {

using namespace literals;

using testing::expect_error;

TEST(Hypergraph, ConstructsEmptyAndSized) {
  Hypergraph empty(0, 0);
  EXPECT_EQ(0u, empty.nhv());
  EXPECT_EQ(0u, empty.nhe());

  Hypergraph h(3, 2);
  EXPECT_EQ(3u, h.nhv());
  EXPECT_EQ(2u, h.nhe());
  EXPECT_TRUE(h.get_vertices(1_e).empty());
  EXPECT_TRUE(h.get_vertex_meta(3_v).is_null());

  Hypergraph isolated(5, 0);
  EXPECT_EQ(5u, isolated.nhv());
  EXPECT_EQ(0u, isolated.degree(5_v));
}

TEST(Hypergraph, FromIncidence) {
  auto h = Hypergraph::from_incidence({{1.0, std::nullopt}, {1.0, 1.0}});
  EXPECT_EQ((Hypergraph::HyperedgeColumn{{1_v, 1.0}, {2_v, 1.0}}), h.get_vertices(1_e));
  EXPECT_EQ((Hypergraph::HyperedgeColumn{{2_v, 1.0}}), h.get_vertices(2_e));
  EXPECT_TRUE(h.is_consistent());

  auto blank = Hypergraph::from_incidence({{std::nullopt, std::nullopt}, {std::nullopt, std::nullopt}});
  EXPECT_EQ(2u, blank.nhv());
  EXPECT_EQ(2u, blank.nhe());
  EXPECT_EQ(0u, blank.incidence_count());

  auto single = Hypergraph::from_incidence({{2.5}});
  EXPECT_EQ(2.5, single.get_weight(1_v, 1_e));

  expect_error(ErrorCode::NonRectangular, [] { Hypergraph::from_incidence({{1.0, 1.0}, {1.0}}); });
  expect_error(ErrorCode::NonFiniteWeight,
               [] { Hypergraph::from_incidence({{std::numeric_limits<double>::infinity()}}); });
}

TEST(Hypergraph, IncidenceRoundTrip) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto h = testing::random_hypergraph(rng, 1 + trial % 7, trial % 5, 0.4);
    if (h.nhe() > 0) h.set_weight(1_v, 1_e, 0.25);
    EXPECT_TRUE(Hypergraph::from_incidence(h.to_incidence()).same_structure(h));
  }
}

TEST(Hypergraph, AddVertex) {
  Hypergraph h(3, 2);
  EXPECT_EQ(4_v, h.add_vertex());
  EXPECT_EQ(0u, h.degree(4_v));

  Hypergraph g(3, 2);
  const auto v = g.add_vertex({{1_e, 1.0}}, "meta");
  EXPECT_EQ(4_v, v);
  EXPECT_EQ((Hypergraph::VertexRow{{1_e, 1.0}}), g.get_hyperedges(v));
  EXPECT_TRUE(g.get_vertices(1_e).contains(4_v));
  EXPECT_EQ("meta", g.get_vertex_meta(v));
  EXPECT_EQ(4u, g.nhv());

  expect_error(ErrorCode::UnknownHyperedge, [&] { g.add_vertex({{99_e, 1.0}}); });
  EXPECT_EQ(4u, g.nhv());
}

TEST(Hypergraph, AddHyperedge) {
  Hypergraph h(3, 2);
  const auto e = h.add_hyperedge({{1_v, 1.0}, {2_v, 1.0}});
  EXPECT_EQ(3_e, e);
  EXPECT_EQ(2u, h.size(e));
  EXPECT_EQ(0u, h.size(h.add_hyperedge()));
  expect_error(ErrorCode::UnknownVertex, [&] { h.add_hyperedge({{9_v, 1.0}}); });
  expect_error(ErrorCode::NonFiniteWeight, [&] { h.add_hyperedge({{1_v, std::nan("")}}); });
  EXPECT_EQ(4u, h.nhe());
}

TEST(Hypergraph, RemoveVertexSwapsLastIntoSlot) {
  auto h = testing::build(3, {{1, 2}, {2, 3}});
  h.set_vertex_meta(3_v, "three");
  const auto remap = h.remove_vertex(2_v);
  EXPECT_EQ(2u, h.nhv());
  EXPECT_EQ((VertexRemap{{3_v, 2_v}}), remap);
  EXPECT_EQ("three", h.get_vertex_meta(2_v));
  EXPECT_EQ((Hypergraph::HyperedgeColumn{{1_v, 1.0}}), h.get_vertices(1_e));
  EXPECT_EQ((Hypergraph::HyperedgeColumn{{2_v, 1.0}}), h.get_vertices(2_e));
  EXPECT_TRUE(h.is_consistent());

  auto g = testing::build(3, {{1, 2, 3}});
  EXPECT_TRUE(g.remove_vertex(3_v).empty());
  EXPECT_EQ(2u, g.nhv());

  auto f = testing::build(3, {{1, 2}, {1, 3}});
  f.remove_vertex(1_v);
  EXPECT_TRUE(f.is_consistent());
  expect_error(ErrorCode::UnknownVertex, [&] { f.get_hyperedges(3_v); });
  expect_error(ErrorCode::UnknownVertex, [&] { f.remove_vertex(7_v); });
}

TEST(Hypergraph, RemoveHyperedgeSwapsLastIntoSlot) {
  auto h = testing::build(3, {{1, 2}, {2}, {2, 3}});
  h.set_hyperedge_meta(3_e, 42);
  EXPECT_EQ((HyperedgeRemap{{3_e, 1_e}}), h.remove_hyperedge(1_e));
  EXPECT_EQ(2u, h.nhe());
  EXPECT_EQ(42, h.get_hyperedge_meta(1_e));
  EXPECT_EQ((Hypergraph::VertexRow{{1_e, 1.0}, {2_e, 1.0}}), h.get_hyperedges(2_v));
  EXPECT_TRUE(h.is_consistent());

  EXPECT_TRUE(h.remove_hyperedge(2_e).empty());
  EXPECT_TRUE(h.is_consistent());
  expect_error(ErrorCode::UnknownHyperedge, [&] { h.remove_hyperedge(2_e); });
}

TEST(Hypergraph, SetWeight) {
  Hypergraph h(1, 1);
  EXPECT_EQ(std::nullopt, h.set_weight(1_v, 1_e, 1.0));
  EXPECT_TRUE(h.get_vertices(1_e).contains(1_v));
  EXPECT_EQ(std::optional(1.0), h.set_weight(1_v, 1_e, std::nullopt));
  EXPECT_TRUE(h.get_vertices(1_e).empty());
  EXPECT_TRUE(h.get_hyperedges(1_v).empty());
  expect_error(ErrorCode::NonFiniteWeight, [&] { h.set_weight(1_v, 1_e, std::nan("")); });
  expect_error(ErrorCode::UnknownVertex, [&] { h.set_weight(2_v, 1_e, 1.0); });
  expect_error(ErrorCode::UnknownHyperedge, [&] { h.set_weight(1_v, 2_e, 1.0); });

  // zero is a weight, not absence
  h.set_weight(1_v, 1_e, 0.0);
  EXPECT_EQ(std::optional(0.0), h.get_weight(1_v, 1_e));
  EXPECT_EQ(1u, h.incidence_count());
}

TEST(Hypergraph, Metadata) {
  Hypergraph h(2, 1);
  EXPECT_TRUE(h.get_hyperedge_meta(1_e).is_null());
  h.set_vertex_meta(1_v, Metadata{{"label", "Arya"}});
  EXPECT_EQ("Arya", h.get_vertex_meta(1_v)["label"]);
  h.set_hyperedge_meta(1_e, "scene");
  EXPECT_EQ("scene", h.get_hyperedge_meta(1_e));
  expect_error(ErrorCode::UnknownVertex, [&] { h.set_vertex_meta(3_v, 1); });
  expect_error(ErrorCode::UnknownHyperedge, [&] { h.get_hyperedge_meta(2_e); });
}

TEST(Hypergraph, RandomMutationsKeepIndexesConsistent) {
  std::mt19937 rng(2024);
  for (int run = 0; run < 200; ++run) {
    Hypergraph h(rng() % 6, rng() % 6);
    for (int step = 0; step < 60; ++step) {
      const int op = static_cast<int>(rng() % 6);
      if (op == 0) {
        std::map<HyperedgeId, double> row;
        for (auto e : h.hyperedges()) {
          if (rng() % 3 == 0) row.emplace(e, 1.0 + rng() % 4);
        }
        h.add_vertex(row);
      } else if (op == 1) {
        std::map<VertexId, double> column;
        for (auto v : h.vertices()) {
          if (rng() % 3 == 0) column.emplace(v, 0.5);
        }
        h.add_hyperedge(column);
      } else if (op == 2 && h.nhv() > 0) {
        h.remove_vertex(VertexId{1 + rng() % h.nhv()});
      } else if (op == 3 && h.nhe() > 0) {
        h.remove_hyperedge(HyperedgeId{1 + rng() % h.nhe()});
      } else if (h.nhv() > 0 && h.nhe() > 0) {
        const VertexId v{1 + rng() % h.nhv()};
        const HyperedgeId e{1 + rng() % h.nhe()};
        h.set_weight(v, e, op == 4 ? std::optional(2.0) : std::nullopt);
        if (op == 4) {
          EXPECT_EQ(2.0, h.get_vertices(e).at(v));
        } else {
          EXPECT_FALSE(h.get_vertices(e).contains(v));
          EXPECT_FALSE(h.get_hyperedges(v).contains(e));
        }
      }
      ASSERT_TRUE(h.is_consistent());
      EXPECT_FALSE(h.contains(VertexId{h.nhv() + 1}));
      EXPECT_FALSE(h.contains(HyperedgeId{h.nhe() + 1}));
    }
  }
}

TEST(Hypergraph, IncidenceQueriesDoNotScaleWithSize) {
  auto time_queries = [](std::size_t n) {
    Hypergraph h(n, n);
    for (std::size_t i = 1; i <= 1000; ++i) h.set_weight(VertexId{i}, HyperedgeId{i % 7 + 1}, 1.0);
    std::size_t total = 0;
    const auto start = std::chrono::steady_clock::now();
    for (int round = 0; round < 200; ++round) {
      for (std::size_t i = 1; i <= 1000; ++i) total += h.degree(VertexId{i}) + h.size(HyperedgeId{i});
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_EQ(200u * (1000 + 1000), total);
    return std::chrono::duration<double>(elapsed).count();
  };
  const double small = time_queries(1000);
  const double large = time_queries(100000);
  EXPECT_LT(large, 10.0 * small + 0.05);
}

}  // namespace
}  // namespace hgkit
