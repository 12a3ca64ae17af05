#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hgkit/analytics.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace hgkit {
namespace {

using namespace literals;
using testing::build;
using testing::expect_error;

std::vector<std::vector<std::size_t>> plain(const std::vector<std::vector<VertexId>>& comps) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : comps) {
    out.emplace_back();
    for (auto v : c) out.back().push_back(v.value());
  }
  return out;
}

TEST(Components, HandExamples) {
  const auto h = build(5, {{1, 2}, {2, 3}, {4, 5}});
  EXPECT_EQ((std::vector<std::vector<std::size_t>>{{1, 2, 3}, {4, 5}}), plain(connected_components(h)));
  const auto g = build(6, {{1, 2}, {2, 3}, {4, 5}});
  EXPECT_EQ((std::vector<std::vector<std::size_t>>{{1, 2, 3}, {4, 5}, {6}}), plain(connected_components(g)));
  EXPECT_TRUE(connected_components(Hypergraph{}).empty());
}

TEST(Components, MatchUnionFind) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = testing::random_hypergraph(rng, 1 + trial % 15, trial % 6, 0.2);
    const auto roots = testing::union_find_roots(h.nhv(), testing::edge_lists(h));
    const auto comps = connected_components(h);
    std::size_t covered = 0;
    for (const auto& c : comps) {
      covered += c.size();
      for (auto v : c) EXPECT_EQ(roots[c.front().index()], roots[v.index()]);
    }
    EXPECT_EQ(h.nhv(), covered);
    std::set<std::size_t> distinct(roots.begin(), roots.end());
    EXPECT_EQ(distinct.size(), comps.size());
  }
}

TEST(RandomWalk, KernelOfHandInstance) {
  const auto h = build(3, {{1, 2}, {1, 2, 3}});
  const auto row = random_walk_kernel(h, 1_v);
  EXPECT_DOUBLE_EQ(5.0 / 12.0, row.at(1_v));
  EXPECT_DOUBLE_EQ(5.0 / 12.0, row.at(2_v));
  EXPECT_DOUBLE_EQ(1.0 / 6.0, row.at(3_v));
}

TEST(RandomWalk, EmpiricalFrequenciesMatchKernel) {
  const auto h = build(3, {{1, 2}, {1, 2, 3}});
  std::mt19937_64 rng(42);
  constexpr int kSamples = 100000;
  std::map<VertexId, int> hits;
  for (int i = 0; i < kSamples; ++i) ++hits[random_walk_step(h, 1_v, rng)];
  for (const auto& [v, p] : random_walk_kernel(h, 1_v)) {
    const double freq = hits[v] / static_cast<double>(kSamples);
    const double se = std::sqrt(p * (1 - p) / kSamples);
    EXPECT_LE(std::abs(freq - p), 3 * se) << "vertex " << v.value();
  }
}

TEST(RandomWalk, ForcedSelfLoopAndIsolated) {
  const auto h = build(2, {{1}});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(1_v, random_walk_step(h, 1_v, rng));
  expect_error(ErrorCode::IsolatedVertex, [&] { random_walk_step(h, 2_v, rng); });
}

TEST(RandomWalk, DeterministicUnderSeedAndCustomSelectors) {
  const auto h = build(4, {{1, 2, 3}, {1, 4}, {2, 4}});
  auto walk = [&](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<VertexId> path{1_v};
    for (int i = 0; i < 50; ++i) path.push_back(random_walk_step(h, path.back(), rng));
    return path;
  };
  EXPECT_EQ(walk(9), walk(9));

  // always the last hyperedge, always the largest member
  auto last_edge = [](const Hypergraph& g, VertexId v, auto&) { return g.get_hyperedges(v).rbegin()->first; };
  auto largest = [](const Hypergraph& g, VertexId, HyperedgeId e, auto&) {
    return g.get_vertices(e).rbegin()->first;
  };
  std::mt19937_64 rng(0);
  EXPECT_EQ(4_v, random_walk_step(h, 1_v, rng, last_edge, largest));
  auto stray = [](const Hypergraph&, VertexId, HyperedgeId, auto&) { return VertexId{3}; };
  expect_error(ErrorCode::UnknownVertex, [&] { random_walk_step(h, 4_v, rng, UniformHyperedge{}, stray); });
}

TEST(RandomWalk, KernelRowsSumToOne) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = testing::random_hypergraph(rng, 1 + trial % 10, 1 + trial % 5, 0.4);
    for (auto v : h.vertices()) {
      if (h.degree(v) == 0) continue;
      double sum = 0.0;
      for (const auto& [u, p] : random_walk_kernel(h, v)) sum += p;
      EXPECT_NEAR(1.0, sum, 1e-12);
    }
  }
}

TEST(Modularity, HandInstances) {
  const auto h = build(4, {{1, 2}, {3, 4}, {1, 3}});
  EXPECT_NEAR(1.0 / 6.0, hypergraph_modularity(h, Partition({1, 1, 2, 2})), 1e-12);
  EXPECT_NEAR(-5.0 / 18.0, hypergraph_modularity(h, Partition::singletons(4)), 1e-12);
  EXPECT_EQ(0.0, hypergraph_modularity(h, Partition::whole(4)));
}

TEST(Modularity, Errors) {
  const auto h = build(2, {{1, 2}});
  expect_error(ErrorCode::PartitionNotTotal, [&] { hypergraph_modularity(h, Partition::whole(3)); });
  expect_error(ErrorCode::NoHyperedges, [] { hypergraph_modularity(Hypergraph(2, 0), Partition::whole(2)); });
  expect_error(ErrorCode::NoUsableHyperedges,
               [] { hypergraph_modularity(Hypergraph(2, 2), Partition::whole(2)); });
  expect_error(ErrorCode::PartitionNotTotal,
               [] { Partition::from_blocks(3, {{VertexId{1}}, {VertexId{1}, VertexId{2}, VertexId{3}}}); });
  expect_error(ErrorCode::PartitionNotTotal, [] { Partition::from_blocks(3, {{VertexId{1}}}); });
}

TEST(Modularity, SingleCommunityIsZeroAndBoundedByOne) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    auto h = testing::random_hypergraph(rng, 2 + trial % 12, 1 + trial % 7, 0.35);
    h.add_hyperedge({{1_v, 1.0}});
    EXPECT_NEAR(0.0, hypergraph_modularity(h, Partition::whole(h.nhv())), 1e-12);
    std::vector<Label> labels(h.nhv());
    for (auto& l : labels) l = static_cast<Label>(rng() % 3);
    EXPECT_LE(hypergraph_modularity(h, Partition(labels)), 1.0);
  }
}

TEST(Modularity, PairsOnlyMatchesNewmanMultigraph) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 8;
    testing::EdgeLists pairs;
    std::uniform_int_distribution<std::size_t> pick(1, n);
    for (std::size_t i = 0; i < 2 + trial % 10; ++i) {
      std::size_t a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      pairs.push_back({std::min(a, b), std::max(a, b)});
    }
    const auto h = build(n, pairs);
    std::vector<Label> labels(n);
    for (auto& l : labels) l = static_cast<Label>(rng() % 3);
    const double expected = testing::multigraph_modularity(n, pairs, labels);
    EXPECT_NEAR(expected, hypergraph_modularity(h, Partition(labels)), 1e-9);
    EXPECT_NEAR(expected, graph_modularity(TwoSectionView(h), Partition(labels)), 1e-9);
  }
}

TEST(GraphModularity, HandInstances) {
  MaterializedGraph two_edges{4, {{1, 2, 1.0}, {3, 4, 1.0}}};
  EXPECT_DOUBLE_EQ(0.5, graph_modularity(two_edges, Partition({1, 1, 2, 2})));
  MaterializedGraph one_edge{2, {{1, 2, 1.0}}};
  EXPECT_DOUBLE_EQ(0.0, graph_modularity(one_edge, Partition::whole(2)));
  EXPECT_DOUBLE_EQ(-0.5, graph_modularity(one_edge, Partition::singletons(2)));
  expect_error(ErrorCode::EmptyGraph, [] { graph_modularity(MaterializedGraph{2, {}}, Partition::whole(2)); });
}

TEST(DegreeCentrality, HypergraphAndTwoSection) {
  const auto h = build(4, {{1, 2}, {1, 3}});
  EXPECT_EQ((std::vector<double>{2, 1, 1, 0}), degree_centrality(h).scores());
  EXPECT_EQ((std::vector<double>{2, 1, 1, 0}), graph_degree_centrality(TwoSectionView(h)).scores());
  const auto tri = build(3, {{1, 2, 3}});
  EXPECT_EQ((std::vector<double>{2, 2, 2}), graph_degree_centrality(TwoSectionView(tri)).scores());
  // ties ranked by id
  EXPECT_EQ((std::vector<VertexId>{1_v, 2_v, 3_v, 4_v}), degree_centrality(h).ranking());
}

TEST(DegreeSummary, VolumeIdentities) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = testing::random_hypergraph(rng, 1 + trial % 9, trial % 6, 0.4);
    const auto s = degree_summary(h);
    std::size_t weighted = 0, count = 0;
    for (const auto& [d, c] : s.sizes) {
      weighted += d * c;
      count += c;
    }
    EXPECT_EQ(s.volume, weighted);
    EXPECT_EQ(h.nhe(), count);
  }
}

}  // namespace
}  // namespace hgkit
