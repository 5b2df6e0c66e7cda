#pragma once

// Search for graphs maximising the largest component diameter of R_k(G):
// exhaustive over isomorphism classes for small n, or randomised.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"

namespace reconfig {

/// Upper triangle as a bit string; pair (i, j), i < j, has index j(j-1)/2 + i
/// so the code of a graph is a prefix of the code of any extension.
using GraphCode = std::uint64_t;

constexpr std::size_t kMaxCodeVertices = 11;
constexpr std::size_t kMaxCanonicalVertices = 8;
constexpr std::size_t kMaxExhaustiveVertices = 7;

/// Number of isomorphism classes of graphs on n vertices, n = 0..8.
constexpr std::size_t kGraphClassCounts[] = {1, 1, 2, 4, 11, 34, 156, 1044, 12346};

inline std::size_t pair_index(Vertex i, Vertex j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(j) * (j - 1) / 2 + i;
}

inline GraphCode graph_code(const Graph& g) {
  if (g.order() > kMaxCodeVertices) throw input_error("graph_code: at most 11 vertices");
  GraphCode c = 0;
  for (auto [u, v] : g.edges()) c |= GraphCode{1} << pair_index(u, v);
  return c;
}

inline Graph graph_from_code(std::size_t n, GraphCode code) {
  Graph g(n);
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i)
      if ((code >> pair_index(i, j)) & 1u) g.add_edge(i, j);
  return g;
}

/// Canonical form = smallest code over all n! relabellings.
class Canonizer {
 public:
  explicit Canonizer(std::size_t n) : n_(n), pairs_(n * (n - (n ? 1 : 0)) / 2) {
    if (n > kMaxCanonicalVertices) throw precondition_error("canonical forms limited to 8 vertices");
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    do {
      std::vector<std::uint8_t> map(pairs_);
      for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i) map[pair_index(i, j)] = static_cast<std::uint8_t>(pair_index(perm[i], perm[j]));
      maps_.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::size_t order() const { return n_; }

  GraphCode canonical(GraphCode code) const {
    GraphCode best = ~GraphCode{0};
    std::uint8_t bits[64];
    std::size_t nbits = 0;
    for (GraphCode c = code; c; c &= c - 1) bits[nbits++] = static_cast<std::uint8_t>(std::countr_zero(c));
    for (const auto& map : maps_) {
      GraphCode r = 0;
      for (std::size_t b = 0; b < nbits; ++b) r |= GraphCode{1} << map[bits[b]];
      best = std::min(best, r);
    }
    return best;
  }

  GraphCode canonical(const Graph& g) const { return canonical(graph_code(g)); }

 private:
  std::size_t n_;
  std::size_t pairs_;
  std::vector<std::vector<std::uint8_t>> maps_;
};

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  Canonizer c(a.order());
  return c.canonical(a) == c.canonical(b);
}

namespace detail {

inline std::optional<std::vector<GraphCode>> read_class_cache(const std::filesystem::path& file, std::size_t n) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::size_t n_read = 0, count = 0;
  if (!(in >> n_read >> count) || n_read != n || count != kGraphClassCounts[n]) return std::nullopt;
  std::vector<GraphCode> codes(count);
  for (auto& c : codes)
    if (!(in >> c)) return std::nullopt;
  if (!std::is_sorted(codes.begin(), codes.end())) return std::nullopt;
  return codes;
}

}  // namespace detail

/// Canonical codes of all graphs on n vertices (n <= 8), sorted. Built by
/// adding a vertex with every possible neighbourhood to each class on n-1
/// vertices. With `cache_dir` set the table is read from / written to
/// cache_dir/graphs_n<n>.txt.
inline std::vector<GraphCode> graph_classes(std::size_t n, const std::string& cache_dir = "") {
  if (n > kMaxCanonicalVertices) throw precondition_error("graph_classes: at most 8 vertices");
  std::filesystem::path file;
  if (!cache_dir.empty()) {
    file = std::filesystem::path(cache_dir) / ("graphs_n" + std::to_string(n) + ".txt");
    if (auto cached = detail::read_class_cache(file, n)) return *cached;
  }
  std::vector<GraphCode> classes{0};
  for (std::size_t m = 2; m <= n; ++m) {
    Canonizer canon(m);
    const std::size_t shift = (m - 1) * (m - 2) / 2;
    std::set<GraphCode> next;
    for (auto c : classes)
      for (GraphCode nb = 0; nb < (GraphCode{1} << (m - 1)); ++nb) next.insert(canon.canonical(c | (nb << shift)));
    classes.assign(next.begin(), next.end());
  }
  if (!file.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    std::ofstream out(file);
    if (out) {
      out << n << ' ' << classes.size() << '\n';
      for (auto c : classes) out << c << '\n';
    }
  }
  return classes;
}

inline std::string default_cache_dir() {
  const char* env = std::getenv("RECONFIG_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

struct SearchResult {
  std::size_t n = 0;
  std::size_t k = 0;
  Rule rule = Rule::jumping;
  std::optional<std::size_t> best;
  std::optional<Graph> witness;
  bool exhaustive = false;
  std::string mode;  // exhaustive | random
  std::size_t graphs_examined = 0;
  std::size_t capped_graphs = 0;
  std::size_t optimal_classes = 0;        // exhaustive: classes attaining best
  std::vector<GraphCode> optimal_codes;   // exhaustive: their canonical codes
  std::uint64_t seed = 0;
};

namespace detail {

inline void verify_witness(const SearchResult& r, const EngineOptions& opts) {
  if (!r.witness) return;
  const auto rep = max_component_diameter(*r.witness, r.k, r.rule, opts);
  if (rep.diameter != r.best) throw std::logic_error("search: witness does not realise the reported diameter");
}

}  // namespace detail

/// Every isomorphism class on n <= 7 vertices. The witness is the class with
/// the smallest canonical code among those attaining the maximum.
inline SearchResult exhaustive_search(std::size_t n, std::size_t k, Rule rule, const EngineOptions& opts = {},
                                      const std::string& cache_dir = default_cache_dir()) {
  if (n > kMaxExhaustiveVertices)
    throw precondition_error("exhaustive search is limited to n <= 7; use --random for larger n");
  const auto classes = graph_classes(n, cache_dir);
  std::vector<std::optional<std::size_t>> diam(classes.size());
  std::vector<char> capped(classes.size(), 0);
  EngineOptions inner = opts;
  inner.threads = 1;
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < classes.size(); i += stride) {
      const auto rep = max_component_diameter(graph_from_code(n, classes[i]), k, rule, inner);
      diam[i] = rep.diameter;
      capped[i] = rep.capped;
    }
  };
  const unsigned t = std::max(1u, opts.threads);
  if (t == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(work, i, t);
    for (auto& th : pool) th.join();
  }
  SearchResult r;
  r.n = n;
  r.k = k;
  r.rule = rule;
  r.exhaustive = true;
  r.mode = "exhaustive";
  r.graphs_examined = classes.size();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    r.capped_graphs += capped[i];
    if (diam[i] && (!r.best || *diam[i] > *r.best)) r.best = diam[i];
  }
  if (r.capped_graphs) r.exhaustive = false;
  for (std::size_t i = 0; r.best && i < classes.size(); ++i)
    if (diam[i] == r.best) {
      if (!r.witness) r.witness = graph_from_code(n, classes[i]);
      r.optimal_codes.push_back(classes[i]);
    }
  r.optimal_classes = r.optimal_codes.size();
  detail::verify_witness(r, inner);
  return r;
}

/// Random graphs: Erdos-Renyi at densities 0.2..0.8 and perturbations of
/// the complement of P_n (one to three flipped pairs), every third trial.
inline SearchResult random_search(std::size_t n, std::size_t k, Rule rule, std::size_t trials, std::uint64_t seed,
                                  const EngineOptions& opts = {}) {
  if (n < 1) throw precondition_error("random search needs n >= 1");
  std::mt19937_64 rng(seed);
  constexpr std::uint64_t kDensities[] = {200, 350, 500, 650, 800};  // per mille
  SearchResult r;
  r.n = n;
  r.k = k;
  r.rule = rule;
  r.mode = "random";
  r.seed = seed;
  const Graph base = n >= 3 ? complement(path_graph(n)) : Graph(n);
  for (std::size_t t = 0; t < trials; ++t) {
    Graph g(n);
    if (t % 3 == 2 && n >= 2) {
      g = base;
      const std::size_t flips = 1 + rng() % 3;
      for (std::size_t f = 0; f < flips; ++f) {
        const auto u = static_cast<Vertex>(rng() % n);
        auto v = static_cast<Vertex>(rng() % (n - 1));
        if (v >= u) ++v;
        if (g.adjacent(u, v)) g.remove_edge(u, v);
        else g.add_edge(u, v);
      }
    } else {
      const auto density = kDensities[t % 5];
      for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i)
          if (rng() % 1000 < density) g.add_edge(i, j);
    }
    const auto rep = max_component_diameter(g, k, rule, opts);
    ++r.graphs_examined;
    if (rep.capped) ++r.capped_graphs;
    if (rep.diameter && (!r.best || *rep.diameter > *r.best)) {
      r.best = rep.diameter;
      r.witness = std::move(g);
    }
  }
  detail::verify_witness(r, opts);
  return r;
}

}  // namespace reconfig
