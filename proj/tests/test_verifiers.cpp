#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "reconfig/constructions.hpp"
#include "reconfig/verifiers.hpp"

using namespace reconfig;

namespace {

// Counts hyperedges inside every 6-subset of the vertex set.
bool six_three_free_by_subsets(const Hypergraph3& h) {
  const std::size_t n = h.order();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) > 6) continue;
    int inside = 0;
    for (const auto& e : h.edges())
      if ((mask >> e[0] & 1u) && (mask >> e[1] & 1u) && (mask >> e[2] & 1u)) ++inside;
    if (inside >= 3) return false;
  }
  return true;
}

ReconfigSequence seq_of(const Graph& g, std::initializer_list<std::vector<Vertex>> sets) {
  std::vector<IndependentSet> v;
  for (const auto& s : sets) v.emplace_back(g, s);
  return ReconfigSequence(std::move(v));
}

ReconfigSequence shortest(const Graph& g, const IndependentSet& a, const IndependentSet& b) {
  auto r = shortest_sequence(g, a.size(), a, b, Rule::jumping);
  EXPECT_TRUE(r.sequence.has_value());
  return *r.sequence;
}

}  // namespace

TEST(SixThree, Examples) {
  EXPECT_FALSE(is_63_free(Hypergraph3(6, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}})).free);
  EXPECT_TRUE(is_63_free(Hypergraph3(3, {{0, 1, 2}})).free);
  EXPECT_TRUE(is_63_free(Hypergraph3(0, {})).free);
  EXPECT_TRUE(is_63_free(Hypergraph3(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}})).free);
  auto r = is_63_free(Hypergraph3(7, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 6}}));
  EXPECT_FALSE(r.free);
  EXPECT_EQ(r.witness, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  EXPECT_THROW(Hypergraph3(3, {{0, 0, 1}}), input_error);
  EXPECT_THROW(Hypergraph3(3, {{0, 1, 2}, {2, 1, 0}}), input_error);
}

TEST(SixThree, MatchesSubsetCounting) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + rng() % 8;
    std::set<Triple> edges;
    const std::size_t m = rng() % 7;
    for (std::size_t i = 0; i < m; ++i) {
      std::set<Vertex> s;
      while (s.size() < 3) s.insert(static_cast<Vertex>(rng() % n));
      edges.insert({*s.begin(), *std::next(s.begin()), *s.rbegin()});
    }
    Hypergraph3 h(n, {edges.begin(), edges.end()});
    EXPECT_EQ(is_63_free(h).free, six_three_free_by_subsets(h));
  }
}

TEST(Extract63, CirculantPath) {
  auto c = circulant_ap_graph(17, {1});
  auto seq = shortest(c.graph, c.report.start, c.report.target);
  ASSERT_EQ(seq.size(), 14u);
  auto even = extract_63(c.graph, seq, Parity::even);
  auto odd = extract_63(c.graph, seq, Parity::odd);
  EXPECT_EQ(even.size(), 7u);
  EXPECT_EQ(odd.size(), 7u);
  for (std::size_t i = 0; i < even.size(); ++i)
    for (std::size_t j = i + 1; j < even.size(); ++j) {
      std::vector<Vertex> common;
      std::set_intersection(even.edges()[i].begin(), even.edges()[i].end(), even.edges()[j].begin(),
                            even.edges()[j].end(), std::back_inserter(common));
      EXPECT_LE(common.size(), 1u);
    }
  std::set<Triple> all(even.edges().begin(), even.edges().end());
  all.insert(odd.edges().begin(), odd.edges().end());
  EXPECT_EQ(all.size(), 14u);
  EXPECT_TRUE(is_63_free(even).free);
  EXPECT_TRUE(is_63_free(odd).free);
}

TEST(Extract63, SingleSetAndRefusals) {
  const Graph g(5);
  auto one = seq_of(g, {{0, 1, 2}});
  auto h = extract_63(g, one, Parity::even);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.edges()[0], (Triple{0, 1, 2}));
  EXPECT_EQ(extract_63(g, one, Parity::odd).size(), 0u);
  EXPECT_THROW(extract_63(g, seq_of(g, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}), Parity::even), precondition_error);
  EXPECT_THROW(extract_63(g, seq_of(g, {{0, 1}, {0, 2}}), Parity::even), precondition_error);
  EXPECT_THROW(extract_63(g, seq_of(g, {{0, 1, 2}, {2, 3, 4}}), Parity::even), precondition_error);
}

TEST(UpperBoundMapping, ShortestSequencesAreInjective) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 4 + rng() % 6;
    auto g = oracle::random_graph(n, 0.45, rng);
    const std::size_t k = 2 + rng() % 2;
    oracle::ConfigGraph cg(g, k, false);
    if (cg.nodes.size() < 2) continue;
    const auto a = rng() % cg.nodes.size(), b = rng() % cg.nodes.size();
    if (cg.dist[a][b] < 0) continue;
    auto seq = shortest(g, IndependentSet(g, cg.nodes[a]), IndependentSet(g, cg.nodes[b]));
    EXPECT_TRUE(verify_upper_bound_mapping(g, seq).injective);
    EXPECT_LE(static_cast<std::int64_t>(seq.length()), binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k - 1)));
  }
  auto cp = complement_path(9);
  EXPECT_TRUE(verify_upper_bound_mapping(cp.graph, shortest(cp.graph, cp.report.start, cp.report.target)).injective);
}

TEST(UpperBoundMapping, TrivialAndRejected) {
  const Graph g(4);
  EXPECT_TRUE(verify_upper_bound_mapping(g, seq_of(g, {{0, 1}})).injective);
  EXPECT_TRUE(verify_upper_bound_mapping(g, seq_of(g, {{0, 1}, {0, 2}})).injective);
  // {0,1} -> {0,2} -> {0,3}: intersection {0} twice, and d({0,1},{0,3}) = 1.
  EXPECT_THROW(verify_upper_bound_mapping(g, seq_of(g, {{0, 1}, {0, 2}, {0, 3}})), precondition_error);
  EXPECT_THROW(verify_upper_bound_mapping(g, ReconfigSequence()), precondition_error);
}

TEST(ConfigPath, Examples) {
  for (std::size_t n = 3; n <= 10; ++n) {
    auto r = is_config_path(complement_path(n).graph, 2);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.diameter, n - 2);
    EXPECT_EQ(r.nodes, n - 1);
  }
  auto two = is_config_path(circulant_ap_graph(41, {1, 5}).graph, 3);
  EXPECT_FALSE(two.pass);
  EXPECT_EQ(two.reason, "disconnected");
  EXPECT_EQ(two.components, 2u);
  auto k4 = is_config_path(complete_graph(4), 2);
  EXPECT_FALSE(k4.pass);
  EXPECT_EQ(k4.reason, "empty");
  EXPECT_EQ(is_config_path(Graph(4), 2).reason, "branching");
  // R_2 of the complement of C_5 is the line graph of C_5.
  Graph c5 = complete_graph(5);
  for (Vertex v = 0; v < 5; ++v) c5.remove_edge(v, (v + 1) % 5);
  EXPECT_EQ(is_config_path(c5, 2).reason, "cycle");
  EXPECT_TRUE(is_config_path(complete_graph(4), 1).pass == false);
  EXPECT_TRUE(is_config_path(Graph(3), 3).pass);
}

TEST(Saturate, EmptyGraphOnFourVertices) {
  const Graph empty(4);
  auto r = saturate_to_path(empty);
  EXPECT_EQ(r.diameter, 1u);
  EXPECT_TRUE(is_config_path(r.graph, 3).pass);

  // Oracle: every supergraph of the empty graph, scored by the explicit R_3.
  auto diam = [](const Graph& g) {
    oracle::ConfigGraph cg(g, 3, false);
    return cg.max_diameter().diameter;
  };
  const auto pairs = empty.order() * (empty.order() - 1) / 2;
  std::set<std::vector<std::pair<Vertex, Vertex>>> maximal;
  for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    Graph g(4);
    std::size_t bit = 0;
    for (Vertex j = 1; j < 4; ++j)
      for (Vertex i = 0; i < j; ++i, ++bit)
        if (mask >> bit & 1u) g.add_edge(i, j);
    if (diam(g) != 1) continue;
    bool extendable = false;
    for (Vertex j = 1; j < 4 && !extendable; ++j)
      for (Vertex i = 0; i < j && !extendable; ++i) {
        if (g.adjacent(i, j)) continue;
        Graph h = g;
        h.add_edge(i, j);
        extendable = diam(h) == 1;
      }
    if (!extendable) maximal.insert(g.edges());
  }
  EXPECT_TRUE(maximal.contains(r.graph.edges()));
  EXPECT_EQ(r.graph.edges(), (std::vector<std::pair<Vertex, Vertex>>{{0, 1}}));
}

TEST(Saturate, K3AssemblyOnSeventeen) {
  auto c = build_k3_extremal(17);
  auto r = saturate_to_path(c.graph);
  EXPECT_EQ(r.diameter, 13u);
  auto path = is_config_path(r.graph, 3);
  EXPECT_TRUE(path.pass) << path.reason;
  EXPECT_EQ(path.diameter, 13u);
  for (auto [u, v] : c.graph.edges()) EXPECT_TRUE(r.graph.adjacent(u, v));
  // No remaining non-edge can be added.
  for (Vertex u = 0; u < r.graph.order(); ++u)
    for (Vertex v = u + 1; v < r.graph.order(); ++v) {
      if (r.graph.adjacent(u, v)) continue;
      Graph h = r.graph;
      h.add_edge(u, v);
      EXPECT_NE(max_component_diameter(h, 3, Rule::jumping).diameter, std::optional<std::size_t>(13));
    }
  EXPECT_THROW(saturate_to_path(complete_graph(5)), precondition_error);
}
