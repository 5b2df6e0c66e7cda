#pragma once

// Checkers for structural properties of configuration graphs and of the
// triple systems read off shortest paths in R_3.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"

namespace reconfig {

using Triple = std::array<Vertex, 3>;

/// 3-uniform hypergraph on vertices 0..n-1 with distinct, sorted hyperedges.
class Hypergraph3 {
 public:
  Hypergraph3() = default;
  Hypergraph3(std::size_t n, std::vector<Triple> edges) : n_(n), edges_(std::move(edges)) {
    std::set<Triple> seen;
    for (auto& e : edges_) {
      std::sort(e.begin(), e.end());
      if (e[0] == e[1] || e[1] == e[2]) throw input_error("hyperedge with a repeated vertex");
      if (e[2] >= n_) throw input_error("hyperedge vertex " + std::to_string(e[2]) + " out of range");
      if (!seen.insert(e).second) throw input_error("repeated hyperedge");
    }
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Triple>& edges() const { return edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Triple> edges_;
};

struct SixThreeResult {
  bool free = true;
  std::vector<Vertex> witness;        // at most 6 vertices spanning 3 hyperedges
  std::array<std::size_t, 3> edges{};  // indices of those hyperedges
};

/// True iff no 6 vertices contain 3 hyperedges, i.e. no three hyperedges
/// have a union of at most 6 vertices. A third edge can only close such a
/// union if it meets the union of the first two, so candidates come from
/// the incidence lists of that union.
inline SixThreeResult is_63_free(const Hypergraph3& h) {
  SixThreeResult out;
  const auto& e = h.edges();
  std::vector<std::vector<std::size_t>> incident(h.order());
  for (std::size_t i = 0; i < e.size(); ++i)
    for (auto v : e[i]) incident[v].push_back(i);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      std::set<Vertex> u(e[i].begin(), e[i].end());
      u.insert(e[j].begin(), e[j].end());
      std::set<std::size_t> cand;
      for (auto v : u)
        for (auto l : incident[v])
          if (l > j) cand.insert(l);
      for (auto l : cand) {
        auto w = u;
        w.insert(e[l].begin(), e[l].end());
        if (w.size() <= 6) {
          out.free = false;
          out.witness.assign(w.begin(), w.end());
          out.edges = {i, j, l};
          return out;
        }
      }
    }
  return out;
}

namespace detail {

/// Throws precondition_error unless `seq` is a valid TJ sequence in g whose
/// length equals the distance between its ends.
inline void require_shortest(const Graph& g, const ReconfigSequence& seq, const char* who,
                             const EngineOptions& opts) {
  if (seq.size() == 0) throw precondition_error(std::string(who) + ": empty sequence");
  if (auto err = seq.validate(g, Rule::jumping)) throw precondition_error(std::string(who) + ": " + *err);
  const auto d = distance(g, seq.front().size(), seq.front(), seq.back(), Rule::jumping, opts);
  if (d.capped) throw capped_error(std::string(who) + ": shortestness check capped");
  if (!d.distance || *d.distance != seq.length())
    throw precondition_error(std::string(who) + ": sequence of length " + std::to_string(seq.length()) +
                             " is not a shortest path (distance " +
                             (d.distance ? std::to_string(*d.distance) : std::string("none")) + ")");
}

}  // namespace detail

enum class Parity { even, odd };

/// Independent sets at even (odd) positions of a shortest R_3 path, as a
/// hypergraph on V(G). Shortestness is re-checked with a BFS.
inline Hypergraph3 extract_63(const Graph& g, const ReconfigSequence& seq, Parity parity,
                              const EngineOptions& opts = {}) {
  if (seq.size() && seq.front().size() != 3)
    throw precondition_error("extract_63: sequence sets have size " + std::to_string(seq.front().size()) +
                             ", expected 3");
  detail::require_shortest(g, seq, "extract_63", opts);
  std::vector<Triple> edges;
  for (std::size_t i = parity == Parity::even ? 0 : 1; i < seq.size(); i += 2) {
    const auto& s = seq[i];
    edges.push_back({s[0], s[1], s[2]});
  }
  return Hypergraph3(g.order(), std::move(edges));
}

struct MappingResult {
  bool injective = true;
  std::optional<std::pair<std::size_t, std::size_t>> collision;  // step indices sharing an intersection
};

/// Maps step i (sets i, i+1) of a shortest sequence to the k-1 common
/// vertices and checks the map is injective.
inline MappingResult verify_upper_bound_mapping(const Graph& g, const ReconfigSequence& seq,
                                                const EngineOptions& opts = {}) {
  detail::require_shortest(g, seq, "verify_upper_bound_mapping", opts);
  MappingResult out;
  std::map<std::vector<Vertex>, std::size_t> seen;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    std::vector<Vertex> common;
    std::set_intersection(seq[i].begin(), seq[i].end(), seq[i + 1].begin(), seq[i + 1].end(),
                          std::back_inserter(common));
    auto [it, fresh] = seen.emplace(std::move(common), i);
    if (!fresh) {
      out.injective = false;
      out.collision = std::make_pair(it->second, i);
      return out;
    }
  }
  return out;
}

struct PathCheck {
  bool pass = false;
  std::string reason;  // empty | disconnected | branching | cycle | capped
  std::size_t nodes = 0;
  std::size_t components = 0;
  std::size_t diameter = 0;
};

/// True iff R_k(G) (TJ) is a single induced path. An empty R_k is not a path.
inline PathCheck is_config_path(const Graph& g, std::size_t k, const EngineOptions& opts = {}) {
  PathCheck out;
  auto list = enumerate_components(g, k, Rule::jumping, opts);
  if (list.capped) throw capped_error("is_config_path: enumeration capped");
  out.components = list.components.size();
  for (const auto& c : list.components) out.nodes += c.size();
  if (out.components == 0) {
    out.reason = "empty";
    return out;
  }
  if (out.components > 1) {
    out.reason = "disconnected";
    return out;
  }
  const auto& comp = list.components.front();
  if (comp.size() == 1) {
    out.pass = true;
    return out;
  }
  const auto deg = comp.degrees();
  const auto ones = std::count(deg.begin(), deg.end(), std::size_t{1});
  if (std::any_of(deg.begin(), deg.end(), [](std::size_t d) { return d > 2; })) {
    out.reason = "branching";
    return out;
  }
  if (ones != 2 || comp.edge_count() + 1 != comp.size()) {
    out.reason = "cycle";
    return out;
  }
  out.pass = true;
  out.diameter = comp.size() - 1;
  return out;
}

struct SaturationResult {
  Graph graph;
  std::size_t diameter = 0;
  std::vector<std::pair<Vertex, Vertex>> added;
  std::size_t passes = 0;
};

/// Adds non-edges in lexicographic order, keeping each one that leaves the
/// largest R_3 component diameter unchanged; repeats until a pass adds
/// nothing. An empty R_3 counts as a decrease.
inline SaturationResult saturate_to_path(const Graph& g, const EngineOptions& opts = {}) {
  auto max_diam = [&](const Graph& h) -> std::optional<std::size_t> {
    auto rep = max_component_diameter(h, 3, Rule::jumping, opts);
    if (rep.capped) throw capped_error("saturate_to_path: enumeration capped");
    return rep.diameter;
  };
  const auto target = max_diam(g);
  if (!target) throw precondition_error("saturate_to_path: graph has no independent set of size 3");
  SaturationResult out{g, *target, {}, 0};
  for (bool changed = true; changed;) {
    changed = false;
    ++out.passes;
    for (Vertex u = 0; u < g.order(); ++u)
      for (Vertex v = u + 1; v < g.order(); ++v) {
        if (out.graph.adjacent(u, v)) continue;
        out.graph.add_edge(u, v);
        if (max_diam(out.graph) == target) {
          out.added.emplace_back(u, v);
          changed = true;
        } else {
          out.graph.remove_edge(u, v);
        }
      }
  }
  return out;
}

}  // namespace reconfig
