#pragma once

/**
 * Dense undirected simple graph stored as n rows of n-bit adjacency bitsets.
 *
 * All constructions handled by this library are near-complete graphs, so a
 * bit matrix is both the smallest and the fastest representation. Vertices
 * are 0-based. An optional, partial, injective labelling (vertex -> integer)
 * carries arithmetic identities such as residues modulo 8 through vertex
 * deletion and relabelling.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace reconfig {

using Vertex = std::uint32_t;
using Word = std::uint64_t;
using Label = std::int64_t;

constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Calls f(index) for every set bit of a word span, in increasing order.
template <typename F>
void for_each_bit(std::span<const Word> bits, F&& f) {
  for (std::size_t w = 0; w < bits.size(); ++w) {
    Word word = bits[w];
    while (word) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(word));
      f(static_cast<Vertex>(w * kWordBits + bit));
      word &= word - 1;
    }
  }
}

inline std::size_t popcount(std::span<const Word> bits) {
  std::size_t c = 0;
  for (auto w : bits) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : n_(n), words_(words_for(n)), adj_(n * words_for(n), 0) {}

  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  std::size_t order() const { return n_; }
  std::size_t words() const { return words_; }

  std::span<const Word> row(Vertex v) const { return {adj_.data() + v * words_, words_}; }

  bool adjacent(Vertex u, Vertex v) const {
    return (adj_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1u;
  }

  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
    set_bit(u, v);
    set_bit(v, u);
  }

  void remove_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    clear_bit(u, v);
    clear_bit(v, u);
  }

  std::size_t degree(Vertex v) const { return popcount(row(v)); }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for_each_bit(row(v), [&](Vertex u) { out.push_back(u); });
    return out;
  }

  std::size_t edge_count() const {
    std::size_t twice = popcount(adj_);
    return twice / 2;
  }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n_; ++u)
      for_each_bit(row(u), [&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  void check_vertex(Vertex v) const {
    if (v >= n_)
      throw input_error("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
  }

  // Labels.
  const std::map<Vertex, Label>& labels() const { return labels_; }

  std::optional<Label> label(Vertex v) const {
    auto it = labels_.find(v);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
  }

  void set_label(Vertex v, Label l) {
    check_vertex(v);
    for (const auto& [u, other] : labels_)
      if (u != v && other == l) throw input_error("label " + std::to_string(l) + " already used");
    labels_[v] = l;
  }

  void set_labels(std::map<Vertex, Label> labels) {
    std::vector<Label> seen;
    for (const auto& [v, l] : labels) {
      check_vertex(v);
      seen.push_back(l);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw input_error("labels are not injective");
    labels_ = std::move(labels);
  }

  /// Vertex carrying a given label, if any.
  std::optional<Vertex> vertex_with_label(Label l) const {
    for (const auto& [v, other] : labels_)
      if (other == l) return v;
    return std::nullopt;
  }

  /// Structural equality (labels ignored).
  bool same_edges(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.same_edges(b) && a.labels_ == b.labels_; }

  /// Raw mutable row access for bulk builders; keeps symmetry the caller's responsibility.
  std::span<Word> mutable_row(Vertex v) { return {adj_.data() + v * words_, words_}; }

 private:
  void set_bit(Vertex u, Vertex v) { adj_[u * words_ + v / kWordBits] |= Word{1} << (v % kWordBits); }
  void clear_bit(Vertex u, Vertex v) { adj_[u * words_ + v / kWordBits] &= ~(Word{1} << (v % kWordBits)); }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> adj_;
  std::map<Vertex, Label> labels_;
};

/// Mask with the low n bits set, laid out as words.
inline std::vector<Word> full_mask(std::size_t n) {
  std::vector<Word> m(words_for(n), ~Word{0});
  if (n % kWordBits) m.back() = (Word{1} << (n % kWordBits)) - 1;
  return m;
}

/// Complement graph on the same vertex set; labels are kept.
inline Graph complement(const Graph& g) {
  const std::size_t n = g.order();
  Graph h(n);
  const auto mask = full_mask(n);
  for (Vertex v = 0; v < n; ++v) {
    auto src = g.row(v);
    auto dst = h.mutable_row(v);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = ~src[w] & mask[w];
    dst[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  }
  h.set_labels(g.labels());
  return h;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  const auto mask = full_mask(n);
  for (Vertex v = 0; v < n; ++v) {
    auto row = g.mutable_row(v);
    std::copy(mask.begin(), mask.end(), row.begin());
    row[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  }
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline bool is_independent(const Graph& g, std::span<const Vertex> s) {
  for (auto v : s) g.check_vertex(v);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j] || g.adjacent(s[i], s[j])) return false;
  return true;
}

inline bool is_clique(const Graph& g, std::span<const Vertex> s) {
  for (auto v : s) g.check_vertex(v);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j] || !g.adjacent(s[i], s[j])) return false;
  return true;
}

/// Induced subgraph on the kept vertices, renumbered in the given order; labels follow.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  Graph h(keep.size());
  for (Vertex i = 0; i < keep.size(); ++i)
    for (Vertex j = i + 1; j < keep.size(); ++j)
      if (g.adjacent(keep[i], keep[j])) h.add_edge(i, j);
  std::map<Vertex, Label> labels;
  for (Vertex i = 0; i < keep.size(); ++i)
    if (auto l = g.label(keep[i])) labels[i] = *l;
  h.set_labels(std::move(labels));
  return h;
}

/// An independent set: strictly increasing vertex ids, pairwise non-adjacent
/// in the graph it was checked against.
class IndependentSet {
 public:
  IndependentSet() = default;

  /// Sorts the input; throws input_error on duplicates, out-of-range ids or an edge inside.
  IndependentSet(const Graph& g, std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw input_error("independent set has a repeated vertex");
    if (!is_independent(g, vertices_)) throw input_error("vertex set " + to_string() + " is not independent");
  }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(vertices_[i]);
    }
    return s + "}";
  }

  friend auto operator<=>(const IndependentSet&, const IndependentSet&) = default;

 private:
  friend IndependentSet unchecked_independent_set(std::vector<Vertex> sorted);
  std::vector<Vertex> vertices_;
};

/// For internal producers that already guarantee the invariants.
inline IndependentSet unchecked_independent_set(std::vector<Vertex> sorted) {
  IndependentSet s;
  s.vertices_ = std::move(sorted);
  return s;
}

namespace detail {

// Maximum clique by branch and bound with a greedy colouring bound
// (Tomita-style), run on bitset rows.
class MaxCliqueSolver {
 public:
  explicit MaxCliqueSolver(const Graph& g) : g_(g), words_(g.words()) {}

  std::vector<Vertex> solve() {
    std::vector<Word> all = full_mask(g_.order());
    std::vector<Vertex> current;
    expand(all, current);
    return best_;
  }

 private:
  void expand(std::vector<Word>& candidates, std::vector<Vertex>& current) {
    std::vector<Vertex> order;
    std::vector<std::size_t> colour;
    colour_sort(candidates, order, colour);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (current.size() + colour[idx] <= best_.size()) return;
      const Vertex v = order[idx];
      current.push_back(v);
      std::vector<Word> next(words_);
      auto row = g_.row(v);
      bool any = false;
      for (std::size_t w = 0; w < words_; ++w) {
        next[w] = candidates[w] & row[w];
        any |= next[w] != 0;
      }
      if (any)
        expand(next, current);
      else if (current.size() > best_.size())
        best_ = current;
      current.pop_back();
      candidates[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
    }
  }

  void colour_sort(const std::vector<Word>& candidates, std::vector<Vertex>& order,
                   std::vector<std::size_t>& colour) const {
    std::vector<Word> uncoloured = candidates;
    std::size_t c = 0;
    while (popcount(uncoloured)) {
      ++c;
      std::vector<Word> q = uncoloured;
      while (popcount(q)) {
        Vertex v = 0;
        for (std::size_t w = 0; w < words_; ++w)
          if (q[w]) {
            v = static_cast<Vertex>(w * kWordBits + std::countr_zero(q[w]));
            break;
          }
        uncoloured[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
        q[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
        auto row = g_.row(v);
        for (std::size_t w = 0; w < words_; ++w) q[w] &= ~row[w];
        order.push_back(v);
        colour.push_back(c);
      }
    }
  }

  const Graph& g_;
  std::size_t words_;
  std::vector<Vertex> best_;
};

}  // namespace detail

/// Default vertex limit for the exponential maximum-independent-set search.
constexpr std::size_t kIndependenceNumberLimit = 64;

/// A maximum independent set (lexicographic order not guaranteed).
inline std::vector<Vertex> maximum_independent_set(const Graph& g, std::size_t limit = kIndependenceNumberLimit) {
  if (g.order() > limit)
    throw precondition_error("independence_number: " + std::to_string(g.order()) + " vertices exceeds limit " +
                             std::to_string(limit));
  if (g.order() == 0) return {};
  auto s = detail::MaxCliqueSolver(complement(g)).solve();
  std::sort(s.begin(), s.end());
  return s;
}

inline std::size_t independence_number(const Graph& g, std::size_t limit = kIndependenceNumberLimit) {
  return maximum_independent_set(g, limit).size();
}

}  // namespace reconfig
