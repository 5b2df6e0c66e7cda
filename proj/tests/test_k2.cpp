#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "reconfig/constructions.hpp"
#include "reconfig/k2.hpp"
#include "reconfig/search.hpp"

using namespace reconfig;

namespace {

std::vector<IndependentSet> independent_pairs(const Graph& g) {
  std::vector<IndependentSet> out;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) out.emplace_back(g, std::vector<Vertex>{u, v});
  return out;
}

}  // namespace

TEST(DecideK2, Examples) {
  auto cp = complement_path(5);
  EXPECT_TRUE(decide_k2_fast(cp.graph, cp.report.start, cp.report.target));
  EXPECT_TRUE(decide_k2_fast(cp.graph, cp.report.start, cp.report.start));

  Graph triangles(6);
  for (Vertex base : {0u, 3u})
    for (Vertex i = 0; i < 3; ++i)
      for (Vertex j = i + 1; j < 3; ++j) triangles.add_edge(base + i, base + j);
  const IndependentSet a(triangles, {0, 3}), b(triangles, {1, 4});
  EXPECT_EQ(decide_k2_fast(triangles, a, b), decide_k2_naive(triangles, a, b).reachable);
  EXPECT_TRUE(decide_k2_fast(triangles, a, b));

  Graph bip(4);  // complement is the two edges 01 and 23
  for (Vertex u : {0u, 1u})
    for (Vertex v : {2u, 3u}) bip.add_edge(u, v);
  const IndependentSet x(bip, {0, 1}), y(bip, {2, 3});
  EXPECT_FALSE(decide_k2_naive(bip, x, y).reachable);
  EXPECT_FALSE(decide_k2_fast(bip, x, y));
}

TEST(DecideK2, Refusals) {
  const Graph g(4);
  Graph h(4);
  h.add_edge(0, 1);
  EXPECT_THROW(decide_k2_fast(g, IndependentSet(g, {0}), IndependentSet(g, {1})), precondition_error);
  EXPECT_THROW(decide_k2_fast(g, IndependentSet(g, {0, 1, 2}), IndependentSet(g, {1, 2})), precondition_error);
  EXPECT_THROW(decide_k2_fast(h, unchecked_independent_set({0, 1}), IndependentSet(h, {2, 3})), precondition_error);
  EXPECT_THROW(decide_k2_naive(h, IndependentSet(h, {2, 3}), unchecked_independent_set({0, 1})), precondition_error);
}

TEST(DecideK2, AgreesOnEveryClassUpToSevenVertices) {
  for (std::size_t n = 2; n <= 7; ++n)
    for (auto code : graph_classes(n)) {
      const Graph g = graph_from_code(n, code);
      const auto pairs = independent_pairs(g);
      for (const auto& a : pairs)
        for (const auto& b : pairs) ASSERT_EQ(decide_k2_fast(g, a, b), decide_k2_naive(g, a, b).reachable);
    }
}

TEST(DecideK2, AgreesOnRandomPairsUpToEightVertices) {
  std::mt19937_64 rng(31);
  std::size_t checked = 0, reachable = 0;
  while (checked < 10000) {
    const std::size_t n = 2 + rng() % 7;
    Graph g(n);
    for (Vertex j = 1; j < n; ++j)
      for (Vertex i = 0; i < j; ++i)
        if (rng() & 1u) g.add_edge(i, j);
    const auto pairs = independent_pairs(g);
    if (pairs.empty()) continue;
    const auto& a = pairs[rng() % pairs.size()];
    const auto& b = pairs[rng() % pairs.size()];
    const bool fast = decide_k2_fast(g, a, b);
    ASSERT_EQ(fast, decide_k2_naive(g, a, b).reachable);
    reachable += fast;
    ++checked;
  }
  EXPECT_GT(reachable, 0u);
  EXPECT_LT(reachable, checked);
}

TEST(DecideK2, AgreesOnLargerRandomGraphs) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng() % 49;
    // Dense graphs keep the complement sparse enough to be disconnected now and then.
    const double density = 0.5 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
    auto g = oracle::random_graph(n, density, rng);
    const auto pairs = independent_pairs(g);
    if (pairs.empty()) continue;
    for (int q = 0; q < 5; ++q) {
      const auto& a = pairs[rng() % pairs.size()];
      const auto& b = pairs[rng() % pairs.size()];
      ASSERT_EQ(decide_k2_fast(g, a, b), decide_k2_naive(g, a, b).reachable) << "n=" << n;
    }
  }
}

TEST(DecideK2, MatchesConfigurationGraph) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 11;
    auto g = oracle::random_graph(n, 0.3 + 0.6 * static_cast<double>(rng() % 100) / 100.0, rng);
    oracle::ConfigGraph cg(g, 2, false);
    for (std::size_t a = 0; a < cg.nodes.size(); ++a)
      for (std::size_t b = 0; b < cg.nodes.size(); ++b)
        ASSERT_EQ(decide_k2_fast(g, IndependentSet(g, cg.nodes[a]), IndependentSet(g, cg.nodes[b])),
                  cg.dist[a][b] >= 0);
  }
}

TEST(DecideK2, NaiveWitnessIsAShortestSequence) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng() % 8;
    auto g = oracle::random_graph(n, 0.5, rng);
    oracle::ConfigGraph cg(g, 2, false);
    if (cg.nodes.empty()) continue;
    const auto a = rng() % cg.nodes.size(), b = rng() % cg.nodes.size();
    auto r = decide_k2_naive(g, IndependentSet(g, cg.nodes[a]), IndependentSet(g, cg.nodes[b]), true);
    ASSERT_EQ(r.reachable, cg.dist[a][b] >= 0);
    if (!r.reachable) {
      EXPECT_FALSE(r.witness.has_value());
      continue;
    }
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_FALSE(r.witness->validate(g, Rule::jumping).has_value());
    EXPECT_EQ(static_cast<int>(r.witness->length()), cg.dist[a][b]);
    EXPECT_EQ(r.witness->front().vertices(), cg.nodes[a]);
    EXPECT_EQ(r.witness->back().vertices(), cg.nodes[b]);
  }
}

TEST(DecideK2, ComplementOfLongPath) {
  auto cp = complement_path(10000);
  EXPECT_TRUE(decide_k2_fast(cp.graph, cp.report.start, cp.report.target));
  EXPECT_TRUE(decide_k2_naive(cp.graph, cp.report.start, cp.report.target).reachable);
  // Cutting one path edge splits the complement.
  cp.graph.add_edge(5000, 5001);
  EXPECT_FALSE(decide_k2_fast(cp.graph, cp.report.start, cp.report.target));
  EXPECT_FALSE(decide_k2_naive(cp.graph, cp.report.start, cp.report.target).reachable);
}
