#pragma once

// Reachability between independent sets of size two under token jumping.
//
// Two 2-sets are TJ-reachable iff they lie in the same connected component
// of the complement graph (R_2(G) is the line graph of the complement).

#include <optional>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"

namespace reconfig {

namespace detail {

inline void check_k2_input(const Graph& g, const IndependentSet& a, const IndependentSet& b) {
  if (a.size() != 2 || b.size() != 2) throw precondition_error("decide_k2: both sets must have size 2");
  if (!is_independent(g, a.vertices()) || !is_independent(g, b.vertices()))
    throw precondition_error("decide_k2: endpoint set is not independent");
}

inline bool test_bit(std::span<const Word> bits, std::size_t i) { return (bits[i / kWordBits] >> (i % kWordBits)) & 1u; }
inline void set_bit(std::vector<Word>& bits, std::size_t i) { bits[i / kWordBits] |= Word{1} << (i % kWordBits); }
inline void clear_bit(std::vector<Word>& bits, std::size_t i) { bits[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

}  // namespace detail

/**
 * Linear-time decision. Vertices of degree < (n-1)/2 (the set S) pairwise
 * have a common non-neighbour, so they lie in one component of the
 * complement and are contracted to a single vertex x. Only the O(m/n)
 * high-degree vertices B remain; in the complement of the contracted graph
 * x is joined to y in B iff y has a non-neighbour in S. A BFS there from
 * the representative of a reaches the representative of b iff reachable.
 */
inline bool decide_k2_fast(const Graph& g, const IndependentSet& a, const IndependentSet& b) {
  detail::check_k2_input(g, a, b);
  if (a == b) return true;
  const std::size_t n = g.order();
  const std::size_t words = g.words();
  std::vector<Word> high(words, 0), low(words, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (2 * g.degree(v) + 1 >= n) detail::set_bit(high, v);
    else detail::set_bit(low, v);
  }
  const bool has_low = popcount(low) > 0;
  const auto x = static_cast<std::size_t>(n);  // id of the contracted vertex
  auto rep = [&](Vertex v) { return detail::test_bit(high, v) ? static_cast<std::size_t>(v) : x; };
  const std::size_t from = rep(a[0]), to = rep(b[0]);
  if (from == to) return true;

  // x's neighbours in the complement of the contracted graph.
  std::vector<Word> x_nb(words, 0);
  if (has_low)
    for_each_bit(high, [&](std::size_t y) {
      auto row = g.row(static_cast<Vertex>(y));
      for (std::size_t w = 0; w < words; ++w)
        if (~row[w] & low[w]) {
          detail::set_bit(x_nb, y);
          break;
        }
    });

  std::vector<Word> unseen = high;
  bool x_unseen = has_low;
  std::vector<std::size_t> queue{from};
  if (from == x) x_unseen = false;
  else detail::clear_bit(unseen, from);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    std::vector<std::size_t> found;
    if (u == x) {
      for (std::size_t w = 0; w < words; ++w) {
        Word hit = x_nb[w] & unseen[w];
        unseen[w] &= ~hit;
        for (; hit; hit &= hit - 1) found.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(hit)));
      }
    } else {
      auto row = g.row(static_cast<Vertex>(u));
      for (std::size_t w = 0; w < words; ++w) {
        Word hit = ~row[w] & unseen[w];
        unseen[w] &= ~hit;
        for (; hit; hit &= hit - 1) found.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(hit)));
      }
      if (x_unseen && detail::test_bit(x_nb, u)) {
        x_unseen = false;
        found.push_back(x);
      }
    }
    for (auto v : found) {
      if (v == to) return true;
      queue.push_back(v);
    }
  }
  return false;
}

struct K2Decision {
  bool reachable = false;
  std::optional<ReconfigSequence> witness;
};

/// Oracle: BFS over the materialised complement. With `want_witness` a
/// shortest sequence is produced by the configuration engine.
inline K2Decision decide_k2_naive(const Graph& g, const IndependentSet& a, const IndependentSet& b,
                                  bool want_witness = false, const EngineOptions& opts = {}) {
  detail::check_k2_input(g, a, b);
  const Graph co = complement(g);
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> queue{a[0]};
  seen[a[0]] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto v : co.neighbors(queue[head]))
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  K2Decision out;
  out.reachable = a == b || seen[b[0]];
  if (want_witness && out.reachable) {
    auto seq = shortest_sequence(g, 2, a, b, Rule::jumping, opts);
    if (seq.capped) throw capped_error("decide_k2_naive: witness search capped");
    out.witness = std::move(seq.sequence);
  }
  return out;
}

}  // namespace reconfig
