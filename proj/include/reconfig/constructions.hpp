#pragma once

/**
 * Builders for graphs whose configuration graphs have long shortest paths.
 *
 * Every builder returns the graph together with a BuildReport naming the
 * special vertices, the bound it claims and a pair of endpoints realising
 * it. Builders are deterministic in their parameters and refuse with a
 * precondition_error naming the violated condition instead of adjusting
 * parameters silently.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apfree.hpp"
#include "engine.hpp"
#include "graph.hpp"

namespace reconfig {

/// A claimed quantity. kind is "exact", "lower_bound", "upper_bound" or
/// "reference" (recorded for comparison, never asserted).
struct Claim {
  std::string name;
  std::string formula;
  std::int64_t value = 0;
  std::string kind = "lower_bound";
};

/// Gadget between the end B_i of one component and the start A_{i+1} of the
/// next: positions b_1..b_k, x_1..x_{3k-2}, a_1..a_k.
struct JunctionSpec {
  std::size_t index = 0;
  std::vector<Vertex> b;  // b_1..b_k, b_1 the last vertex moved on the way into B_i
  std::vector<Vertex> a;  // a_1..a_k, a_k the first vertex moved on the way out of A_{i+1}
  std::vector<Vertex> x;  // fresh vertices; empty means "assign"

  /// The whole window sequence b, x, a.
  std::vector<Vertex> sequence() const {
    std::vector<Vertex> seq = b;
    seq.insert(seq.end(), x.begin(), x.end());
    seq.insert(seq.end(), a.begin(), a.end());
    return seq;
  }
};

struct BuildReport {
  std::string construction;
  std::size_t k = 0;
  std::map<std::string, std::int64_t> parameters;
  std::map<std::string, std::vector<Vertex>> roles;
  std::vector<Claim> claims;  // claims.front() is the one verified against measurements
  IndependentSet start;
  IndependentSet target;
  std::vector<JunctionSpec> junctions;
  std::vector<std::string> notes;

  const Claim& primary() const { return claims.front(); }
};

struct Construction {
  Graph graph;
  BuildReport report;
};

/// Endpoints of a path-shaped component, oriented for gluing.
struct PathComponent {
  std::vector<Vertex> a;  // a_1..a_k; a_k leaves first
  std::vector<Vertex> b;  // b_1..b_k; b_1 arrives last
  std::size_t diameter = 0;
};

// ---------------------------------------------------------------------------
// Small arithmetic helpers.

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Throws precondition_error unless both endpoints are independent sets of
/// the report's size in the built graph.
inline void check_report_endpoints(const Construction& c) {
  const auto& r = c.report;
  for (const auto* s : {&r.start, &r.target}) {
    if (s->size() != r.k)
      throw precondition_error(r.construction + ": endpoint " + s->to_string() + " does not have size " +
                               std::to_string(r.k));
    if (!is_independent(c.graph, s->vertices()))
      throw precondition_error(r.construction + ": endpoint " + s->to_string() + " is not independent");
  }
}

namespace detail {

inline std::vector<Vertex> sorted(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

/// Orders the ends of a path component: a_k is the member of A missing from
/// the node after A, b_1 is the member of B missing from the node before B.
inline PathComponent orient_path(const std::vector<Vertex>& a, const std::vector<Vertex>& a_next,
                                 const std::vector<Vertex>& b, const std::vector<Vertex>& b_prev,
                                 std::size_t diameter) {
  PathComponent pc;
  pc.diameter = diameter;
  std::vector<Vertex> a_leaving, b_arriving;
  std::set_difference(a.begin(), a.end(), a_next.begin(), a_next.end(), std::back_inserter(a_leaving));
  std::set_difference(b.begin(), b.end(), b_prev.begin(), b_prev.end(), std::back_inserter(b_arriving));
  if (a_leaving.size() > 1 || b_arriving.size() > 1)
    throw precondition_error("orient_path: end nodes are not adjacent to their neighbours");
  for (auto v : a)
    if (a_leaving.empty() || v != a_leaving[0]) pc.a.push_back(v);
  if (!a_leaving.empty()) pc.a.push_back(a_leaving[0]);
  if (!b_arriving.empty()) pc.b.push_back(b_arriving[0]);
  for (auto v : b)
    if (b_arriving.empty() || v != b_arriving[0]) pc.b.push_back(v);
  return pc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Complement of a path: the tight example for two tokens.

inline Construction complement_path(std::size_t n) {
  if (n < 3) throw precondition_error("complement_path: n must be >= 3, got " + std::to_string(n));
  Graph g = complete_graph(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.remove_edge(v, v + 1);
  Construction c{std::move(g), {}};
  auto& r = c.report;
  r.construction = "comp-path";
  r.k = 2;
  r.parameters = {{"n", static_cast<std::int64_t>(n)}};
  r.claims.push_back({"diameter", "n-2", static_cast<std::int64_t>(n) - 2, "exact"});
  r.start = IndependentSet(c.graph, {0, 1});
  r.target = IndependentSet(c.graph, {static_cast<Vertex>(n - 2), static_cast<Vertex>(n - 1)});
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  r.roles["path_order"] = order;
  check_report_endpoints(c);
  return c;
}

/// K_n; R_1 is complete so any two vertices are one jump apart.
inline Construction clique_base(std::size_t n = 2) {
  if (n < 2) throw precondition_error("clique_base: n must be >= 2");
  Construction c{complete_graph(n), {}};
  auto& r = c.report;
  r.construction = "clique";
  r.k = 1;
  r.parameters = {{"n", static_cast<std::int64_t>(n)}};
  r.claims.push_back({"distance", "1", 1, "exact"});
  r.start = IndependentSet(c.graph, {0});
  r.target = IndependentSet(c.graph, {1});
  return c;
}

// ---------------------------------------------------------------------------
// Circulant graph from a 3-AP-free set.

/// Vertex id of label v (1..p-1) in circulant_ap_graph output.
inline Vertex circulant_vertex(std::int64_t label) { return static_cast<Vertex>(label - 1); }

/// Vertex ids of the triple {j*s, (j+1)*s, (j+2)*s} mod p, sorted.
inline std::vector<Vertex> circulant_triple(std::int64_t p, std::int64_t s, std::int64_t j) {
  std::vector<Vertex> t;
  for (std::int64_t i = 0; i < 3; ++i) t.push_back(circulant_vertex(mod((j + i) * s, p)));
  return detail::sorted(t);
}

/// The ends of the path component of step s, oriented by label order.
inline PathComponent circulant_component(std::int64_t p, std::int64_t s) {
  auto first = circulant_triple(p, s, 1), second = circulant_triple(p, s, 2);
  auto last = circulant_triple(p, s, p - 3), before_last = circulant_triple(p, s, p - 4);
  const auto diameter = static_cast<std::size_t>(p - 4);
  if (first <= last) return detail::orient_path(first, second, last, before_last, diameter);
  return detail::orient_path(last, before_last, first, second, diameter);
}

inline void check_circulant_preconditions(std::int64_t p, const std::vector<std::int64_t>& s) {
  if (!is_prime(p)) throw precondition_error("circulant: p not prime (p=" + std::to_string(p) + ")");
  if (s.empty()) throw precondition_error("circulant: s is empty");
  for (auto x : s) {
    if (x < 1) throw precondition_error("circulant: element " + std::to_string(x) + " is not positive");
    if (mod(x, 4) != 1) throw precondition_error("circulant: element " + std::to_string(x) + " is not 1 mod 4");
    if (8 * x > p) throw precondition_error("circulant: element " + std::to_string(x) + " exceeds p/8");
  }
  if (!is_3ap_free(s)) throw precondition_error("circulant: s is not 3-AP-free");
  if (std::set<std::int64_t>(s.begin(), s.end()).size() != s.size())
    throw precondition_error("circulant: s has repeated elements");
}

/**
 * Clique on Z_p minus the edges (i, i+s), (i, i+2s) for s in S, then vertex 0
 * deleted. Vertex id v-1 carries label v. R_3 is predicted to be |S|
 * disjoint induced paths, component s consisting of the p-3 triples
 * {js, (j+1)s, (j+2)s}, 1 <= j <= p-3.
 */
inline Construction circulant_ap_graph(std::int64_t p, std::vector<std::int64_t> s) {
  check_circulant_preconditions(p, s);
  std::sort(s.begin(), s.end());
  const auto n = static_cast<std::size_t>(p - 1);
  Graph g = complete_graph(n);
  for (auto step : s)
    for (std::int64_t i = 1; i < p; ++i)
      for (std::int64_t mult : {1, 2}) {
        const auto j = mod(i + mult * step, p);
        if (j != 0) g.remove_edge(circulant_vertex(i), circulant_vertex(j));
      }
  std::map<Vertex, Label> labels;
  for (std::int64_t v = 1; v < p; ++v) labels[circulant_vertex(v)] = v;
  g.set_labels(std::move(labels));

  Construction c{std::move(g), {}};
  auto& r = c.report;
  r.construction = "circulant";
  r.k = 3;
  r.parameters = {{"p", p}, {"components", static_cast<std::int64_t>(s.size())}};
  for (std::size_t i = 0; i < s.size(); ++i) r.parameters["s" + std::to_string(i)] = s[i];
  r.claims.push_back({"component_diameter", "p-4", p - 4, "exact"});
  r.claims.push_back({"component_nodes", "p-3", p - 3, "exact"});
  r.claims.push_back({"components", "|S|", static_cast<std::int64_t>(s.size()), "exact"});
  r.claims.push_back({"component_length_stated", "p-3 (path length as stated)", p - 3, "reference"});
  for (auto step : s) {
    auto pc = circulant_component(p, step);
    r.roles["A[s=" + std::to_string(step) + "]"] = pc.a;
    r.roles["B[s=" + std::to_string(step) + "]"] = pc.b;
  }
  const auto pc = circulant_component(p, s.front());
  r.start = IndependentSet(c.graph, pc.a);
  r.target = IndependentSet(c.graph, pc.b);
  r.notes.push_back("component paths have p-3 nodes and p-4 edges");
  check_report_endpoints(c);
  return c;
}

inline Construction circulant_ap_graph(std::int64_t p, const APSet& s) { return circulant_ap_graph(p, s.elements); }

// ---------------------------------------------------------------------------
// Gluing components through junction gadgets.

/**
 * Adds 3k-2 fresh vertices per junction. New vertices are adjacent to all of
 * V(G) and to the fresh vertices of other junctions. Inside a junction the
 * sequence b_1..b_k, x_1..x_{3k-2}, a_1..a_k follows a window rule: a pair
 * involving at least one x-vertex is non-adjacent iff the positions differ
 * by at most k-1. Fills in `x` of each junction when empty.
 */
inline Graph glue_junctions(const Graph& g, std::size_t k, std::vector<JunctionSpec>& junctions) {
  if (k < 3) throw precondition_error("glue: k must be >= 3");
  const std::size_t n = g.order();
  const std::size_t per = 3 * k - 2;
  const std::size_t total = n + per * junctions.size();
  std::set<Vertex> fresh;
  for (std::size_t i = 0; i < junctions.size(); ++i) {
    auto& j = junctions[i];
    if (j.b.size() != k || j.a.size() != k)
      throw precondition_error("glue: junction " + std::to_string(i) + " needs " + std::to_string(k) +
                               " vertices on each side");
    if (!is_independent(g, detail::sorted(j.b)) || !is_independent(g, detail::sorted(j.a)))
      throw precondition_error("glue: junction " + std::to_string(i) + " endpoint set is not independent");
    if (j.x.empty())
      for (std::size_t t = 0; t < per; ++t) j.x.push_back(static_cast<Vertex>(n + i * per + t));
    if (j.x.size() != per) throw precondition_error("glue: junction " + std::to_string(i) + " has wrong x count");
    for (auto x : j.x) {
      if (x < n || x >= total || !fresh.insert(x).second)
        throw precondition_error("glue: junction vertex collision at id " + std::to_string(x));
    }
  }
  Graph h(total);
  for (auto [u, v] : g.edges()) h.add_edge(u, v);
  h.set_labels(g.labels());
  for (Vertex x = static_cast<Vertex>(n); x < total; ++x)
    for (Vertex y = 0; y < x; ++y) h.add_edge(x, y);
  for (const auto& j : junctions) {
    const auto seq = j.sequence();
    for (std::size_t p = 0; p < seq.size(); ++p)
      for (std::size_t q = p + 1; q < seq.size(); ++q) {
        const bool involves_x = (p >= k && p < k + per) || (q >= k && q < k + per);
        if (!involves_x || seq[p] == seq[q]) continue;
        if (q - p <= k - 1) h.remove_edge(seq[p], seq[q]);
      }
  }
  return h;
}

/// Glues path components 1..r in order: junction i joins B_i to A_{i+1}.
/// Claims distance(A_1, B_r) >= (4k-4)(r-1) + sum of component diameters.
inline Construction glue(const Graph& g, std::size_t k, const std::vector<PathComponent>& components) {
  if (components.empty()) throw precondition_error("glue: no components");
  std::vector<JunctionSpec> junctions;
  for (std::size_t i = 0; i + 1 < components.size(); ++i)
    junctions.push_back({i, components[i].b, components[i + 1].a, {}});
  Construction c{glue_junctions(g, k, junctions), {}};
  auto& r = c.report;
  r.construction = "glue";
  r.k = k;
  const auto r_count = static_cast<std::int64_t>(components.size());
  std::int64_t sum = 0;
  for (const auto& pc : components) sum += static_cast<std::int64_t>(pc.diameter);
  const auto kk = static_cast<std::int64_t>(k);
  r.parameters = {{"k", kk}, {"components", r_count}, {"base_vertices", static_cast<std::int64_t>(g.order())},
                  {"sum_component_diameters", sum}};
  r.claims.push_back({"distance(A_1,B_r)", "(4k-4)(r-1)+sum d_i", (4 * kk - 4) * (r_count - 1) + sum, "lower_bound"});
  r.claims.push_back({"junction_path_length", "4k-2", 4 * kk - 2, "exact"});
  for (const auto& j : junctions) {
    r.roles["b[" + std::to_string(j.index) + "]"] = j.b;
    r.roles["x[" + std::to_string(j.index) + "]"] = j.x;
    r.roles["a[" + std::to_string(j.index + 1) + "]"] = j.a;
  }
  r.junctions = junctions;
  r.start = IndependentSet(c.graph, components.front().a);
  r.target = IndependentSet(c.graph, components.back().b);
  check_report_endpoints(c);
  return c;
}

// ---------------------------------------------------------------------------
// Toll booths: +2 tokens, distance multiplied by about 2n.

/**
 * Adds X = x_1..x_{6n+2} inducing the complement of a path; x_{6l-3} is
 * joined to V(G)\B and x_{6l} to V(G)\A for 1 <= l <= n. Endpoints
 * C = A + {x_1, x_2}, D = A + {x_{6n+1}, x_{6n+2}} in R_{k+2}.
 * `known_distance` skips the BFS measuring d(A, B) when the caller has it.
 */
inline Construction toll_booth_extend(const Graph& g, std::size_t k, const IndependentSet& a,
                                      const IndependentSet& b, std::size_t n,
                                      std::optional<std::size_t> known_distance = std::nullopt,
                                      const EngineOptions& opts = {},
                                      std::size_t alpha_limit = kIndependenceNumberLimit) {
  if (n < 1) throw precondition_error("toll_booth_extend: n must be >= 1");
  if (a.size() != k || b.size() != k) throw precondition_error("toll_booth_extend: endpoints must have size k");
  if (!is_independent(g, a.vertices()) || !is_independent(g, b.vertices()))
    throw precondition_error("toll_booth_extend: endpoints are not independent");
  const auto alpha = independence_number(g, alpha_limit);
  if (alpha != k)
    throw precondition_error("toll_booth_extend: independence number is " + std::to_string(alpha) + ", expected k=" +
                             std::to_string(k));
  std::size_t d = 0;
  if (known_distance) {
    d = *known_distance;
  } else {
    auto dist = distance(g, k, a, b, Rule::jumping, opts);
    if (dist.capped) throw capped_error("toll_booth_extend: distance(A,B) exploration capped");
    if (!dist.distance) throw precondition_error("toll_booth_extend: A and B are disconnected in R_k");
    d = *dist.distance;
  }
  const std::size_t base = g.order();
  const std::size_t m = 6 * n + 2;
  Graph h(base + m);
  for (auto [u, v] : g.edges()) h.add_edge(u, v);
  h.set_labels(g.labels());
  auto x = [&](std::size_t i) { return static_cast<Vertex>(base + i - 1); };  // 1-based
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 2; j <= m; ++j) h.add_edge(x(i), x(j));
  std::vector<Vertex> booth_b, booth_a;
  for (std::size_t l = 1; l <= n; ++l) {
    booth_b.push_back(x(6 * l - 3));
    booth_a.push_back(x(6 * l));
    for (Vertex v = 0; v < base; ++v) {
      if (!std::binary_search(b.begin(), b.end(), v)) h.add_edge(x(6 * l - 3), v);
      if (!std::binary_search(a.begin(), a.end(), v)) h.add_edge(x(6 * l), v);
    }
  }
  Construction c{std::move(h), {}};
  auto& r = c.report;
  r.construction = "toll-booth";
  r.k = k + 2;
  const auto nn = static_cast<std::int64_t>(n), dd = static_cast<std::int64_t>(d);
  r.parameters = {{"n", nn}, {"base_k", static_cast<std::int64_t>(k)}, {"d", dd},
                  {"base_vertices", static_cast<std::int64_t>(base)}};
  r.claims.push_back({"distance(C,D)", "2n(d+3)", 2 * nn * (dd + 3), "lower_bound"});
  r.claims.push_back({"distance(C,D) stated", "2dn", 2 * dd * nn, "lower_bound"});
  std::vector<Vertex> xs;
  for (std::size_t i = 1; i <= m; ++i) xs.push_back(x(i));
  r.roles["X"] = xs;
  r.roles["A"] = a.vertices();
  r.roles["B"] = b.vertices();
  r.roles["booth_to_B"] = booth_b;
  r.roles["booth_to_A"] = booth_a;
  auto cs = a.vertices();
  cs.push_back(x(1));
  cs.push_back(x(2));
  auto ds = a.vertices();
  ds.push_back(x(m - 1));
  ds.push_back(x(m));
  r.start = IndependentSet(c.graph, cs);
  r.target = IndependentSet(c.graph, ds);
  check_report_endpoints(c);
  return c;
}

/// Repeated toll-booth extension starting from the complement of a path on
/// `base_path` vertices; k grows by 2 per step. The primary claim chains
/// 2n(d+3) through the steps starting from d = base_path - 2.
inline Construction iterate_toll(std::size_t n_steps, std::size_t per_step_n, std::size_t base_path = 4,
                                 const EngineOptions& opts = {}) {
  Construction cur = complement_path(base_path);
  std::int64_t chain = static_cast<std::int64_t>(base_path) - 2;
  std::vector<std::int64_t> history{chain};
  for (std::size_t step = 0; step < n_steps; ++step) {
    auto next = toll_booth_extend(cur.graph, cur.report.k, cur.report.start, cur.report.target, per_step_n,
                                  static_cast<std::size_t>(chain), opts, std::max<std::size_t>(cur.graph.order(), 64));
    chain = 2 * static_cast<std::int64_t>(per_step_n) * (chain + 3);
    history.push_back(chain);
    cur = std::move(next);
  }
  if (n_steps == 0) return cur;
  auto& r = cur.report;
  r.construction = "iterate-toll";
  r.parameters["steps"] = static_cast<std::int64_t>(n_steps);
  r.parameters["per_step_n"] = static_cast<std::int64_t>(per_step_n);
  r.parameters["base_path"] = static_cast<std::int64_t>(base_path);
  r.claims.clear();
  r.claims.push_back({"distance(C,D)", "chained 2n(d+3) from d=" + std::to_string(history.front()), chain,
                      "lower_bound"});
  r.notes.push_back("bound chain: " + detail::join(history));
  return cur;
}

// ---------------------------------------------------------------------------
// Triple extension: +3 tokens using a relabelled circulant graph.

struct Mod8Check {
  bool consecutive_residues = true;  // every triple is {r, r+1, r+2} mod 8
  bool swap_residues = true;         // adjacent triples swap labels differing by +-3 mod 8
  bool zero_coverage = true;         // weakened: every label = 0 mod 8 lies in some triple of each component
  std::size_t full_coverage_misses = 0;  // literal form: (vertex, component) pairs never covered
  std::size_t triples = 0;
  std::size_t components = 0;
  std::string first_failure;
  bool pass() const { return consecutive_residues && swap_residues && zero_coverage; }
};

/// Checks the residue properties on a labelled graph whose R_3 is to be used
/// for toll booths. Every vertex of `h` must carry a label.
inline Mod8Check check_mod8_properties(const Graph& h, const EngineOptions& opts = {}) {
  Mod8Check out;
  auto res = [&](Vertex v) {
    auto l = h.label(v);
    if (!l) throw input_error("check_mod8_properties: vertex " + std::to_string(v) + " has no label");
    return mod(*l, 8);
  };
  auto list = enumerate_components(h, 3, Rule::jumping, opts);
  if (list.capped) throw capped_error("check_mod8_properties: enumeration capped");
  out.components = list.components.size();
  NeighborGenerator gen(h, 3, Rule::jumping);
  std::vector<StateKey> buf;
  for (const auto& comp : list.components) {
    std::set<Vertex> covered;
    for (auto key : comp.nodes()) {
      ++out.triples;
      auto t = decode_state(key, 3);
      for (auto v : t) covered.insert(v);
      std::vector<std::int64_t> r{res(t[0]), res(t[1]), res(t[2])};
      std::sort(r.begin(), r.end());
      bool consecutive = false;
      for (std::int64_t start = 0; start < 8 && !consecutive; ++start) {
        std::vector<std::int64_t> want{start, mod(start + 1, 8), mod(start + 2, 8)};
        std::sort(want.begin(), want.end());
        consecutive = want == r;
      }
      if (!consecutive && out.consecutive_residues) {
        out.consecutive_residues = false;
        if (out.first_failure.empty())
          out.first_failure = "triple " + unchecked_independent_set(t).to_string() + " has non-consecutive residues";
      }
      gen(key, buf);
      for (auto nb : buf) {
        if (nb < key) continue;
        auto u = decode_state(nb, 3);
        std::vector<Vertex> only_t, only_u;
        std::set_difference(t.begin(), t.end(), u.begin(), u.end(), std::back_inserter(only_t));
        std::set_difference(u.begin(), u.end(), t.begin(), t.end(), std::back_inserter(only_u));
        const auto diff = mod(res(only_t[0]) - res(only_u[0]), 8);
        if (diff != 3 && diff != 5 && out.swap_residues) {
          out.swap_residues = false;
          if (out.first_failure.empty())
            out.first_failure = "adjacent triples " + unchecked_independent_set(t).to_string() + " and " +
                                unchecked_independent_set(u).to_string() + " swap residues not differing by 3";
        }
      }
    }
    for (Vertex v = 0; v < h.order(); ++v) {
      if (covered.contains(v)) continue;
      ++out.full_coverage_misses;
      if (res(v) == 0 && out.zero_coverage) {
        out.zero_coverage = false;
        if (out.first_failure.empty())
          out.first_failure = "vertex " + std::to_string(v) + " (0 mod 8) is missing from a component";
      }
    }
  }
  return out;
}

/**
 * G' = G + H where H is the circulant graph for S = 8S'+1, relabelled so that
 * the labels of each R_3(H) triple are consecutive. Vertices of H with label
 * 0 mod 8 are joined to V(G)\A, those with label 4 mod 8 to V(G)\B.
 * Endpoints X_1 + A and X_r + A in R_{k+3}(G') where X_1 has labels
 * {1,2,3} and X_r is the last triple with labels {8j+1, 8j+2, 8j+3}.
 *
 * The relabelling exists only for |S| = 1 (label = v / s mod p); with more
 * components the literal labels are checked and the build refuses when the
 * residue properties fail.
 */
inline Construction triple_extend(const Graph& g, std::size_t k, const IndependentSet& a, const IndependentSet& b,
                                  std::int64_t p, std::optional<std::vector<std::int64_t>> s_prime = std::nullopt,
                                  std::optional<std::size_t> known_distance = std::nullopt,
                                  const EngineOptions& opts = {},
                                  std::size_t alpha_limit = kIndependenceNumberLimit) {
  if (a.size() != k || b.size() != k) throw precondition_error("triple_extend: endpoints must have size k");
  if (!is_independent(g, a.vertices()) || !is_independent(g, b.vertices()))
    throw precondition_error("triple_extend: endpoints are not independent");
  if (!is_prime(p)) throw precondition_error("triple_extend: p not prime (p=" + std::to_string(p) + ")");
  const auto alpha = independence_number(g, alpha_limit);
  if (alpha != k)
    throw precondition_error("triple_extend: maximum independent sets have size " + std::to_string(alpha) +
                             ", expected k=" + std::to_string(k));
  std::size_t d = 0;
  if (known_distance) {
    d = *known_distance;
  } else {
    auto dist = distance(g, k, a, b, Rule::jumping, opts);
    if (dist.capped) throw capped_error("triple_extend: distance(A,B) exploration capped");
    if (!dist.distance) throw precondition_error("triple_extend: A and B are disconnected in R_k");
    d = *dist.distance;
  }
  std::vector<std::int64_t> base;
  if (s_prime) {
    base = *s_prime;
  } else {
    const std::int64_t bound = (p - 8) / 64;  // largest x with 8(8x+1) <= p
    if (bound < 1) throw precondition_error("triple_extend: p too small, need p >= 72 for a nonempty S'");
    base = best_3ap_free(bound).elements;
  }
  if (!is_3ap_free(base)) throw precondition_error("triple_extend: S' is not 3-AP-free");
  std::vector<std::int64_t> s;
  for (auto x : base) s.push_back(8 * x + 1);
  auto hc = circulant_ap_graph(p, s);  // validates p/8 bound, residues, AP-freeness
  Graph hgraph = hc.graph;
  if (s.size() == 1) {
    const auto inv = mod_pow(s[0], p - 2, p);
    std::map<Vertex, Label> labels;
    for (std::int64_t v = 1; v < p; ++v) labels[circulant_vertex(v)] = mod(v * inv, p);
    hgraph.set_labels(std::move(labels));
  }
  const auto check = check_mod8_properties(hgraph, opts);
  if (!check.pass()) throw precondition_error("triple_extend: residue property failed on H: " + check.first_failure);

  const std::size_t n = g.order();
  const std::size_t hn = hgraph.order();
  Graph out(n + hn);
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : hgraph.edges()) out.add_edge(static_cast<Vertex>(n + u), static_cast<Vertex>(n + v));
  std::map<Vertex, Label> labels;
  std::vector<Vertex> booth_a, booth_b, hverts, gverts;
  for (Vertex v = 0; v < n; ++v) gverts.push_back(v);
  for (Vertex hv = 0; hv < hn; ++hv) {
    const auto id = static_cast<Vertex>(n + hv);
    const auto l = *hgraph.label(hv);
    labels[id] = l;
    hverts.push_back(id);
    if (mod(l, 8) == 0) {
      booth_a.push_back(id);
      for (Vertex v = 0; v < n; ++v)
        if (!std::binary_search(a.begin(), a.end(), v)) out.add_edge(id, v);
    } else if (mod(l, 8) == 4) {
      booth_b.push_back(id);
      for (Vertex v = 0; v < n; ++v)
        if (!std::binary_search(b.begin(), b.end(), v)) out.add_edge(id, v);
    }
  }
  out.set_labels(labels);

  auto by_label = [&](std::int64_t l) -> std::optional<Vertex> {
    for (const auto& [v, lab] : labels)
      if (lab == l) return v;
    return std::nullopt;
  };
  auto triple_at = [&](std::int64_t first) -> std::optional<std::vector<Vertex>> {
    std::vector<Vertex> t;
    for (std::int64_t i = 0; i < 3; ++i) {
      auto v = by_label(first + i);
      if (!v) return std::nullopt;
      t.push_back(*v);
    }
    t = detail::sorted(t);
    if (!is_independent(out, t)) return std::nullopt;
    return t;
  };
  auto x1 = triple_at(1);
  if (!x1) throw precondition_error("triple_extend: no triple with labels {1,2,3}");
  std::optional<std::vector<Vertex>> xr;
  std::int64_t last_first = 1;
  for (std::int64_t first = 1; first + 2 < p; first += 8)
    if (auto t = triple_at(first)) {
      xr = t;
      last_first = first;
    }
  const std::int64_t booths = (p - 1) / 8;

  Construction c{std::move(out), {}};
  auto& r = c.report;
  r.construction = "triple-extend";
  r.k = k + 3;
  const auto dd = static_cast<std::int64_t>(d);
  r.parameters = {{"p", p},
                  {"base_k", static_cast<std::int64_t>(k)},
                  {"d", dd},
                  {"base_vertices", static_cast<std::int64_t>(n)},
                  {"booths", booths},
                  {"x_r_first_label", last_first}};
  for (std::size_t i = 0; i < s.size(); ++i) r.parameters["s" + std::to_string(i)] = s[i];
  r.claims.push_back({"distance(X_1+A,X_r+A)", "2d(floor((p-1)/8)-1)", 2 * dd * (booths - 1), "lower_bound"});
  r.claims.push_back({"distance stated", "floor(2d(p/8-1))", (2 * dd * (p - 8)) / 8, "reference"});
  r.roles["G"] = gverts;
  r.roles["H"] = hverts;
  r.roles["A"] = a.vertices();
  r.roles["B"] = b.vertices();
  r.roles["booth_to_A"] = booth_a;
  r.roles["booth_to_B"] = booth_b;
  auto st = a.vertices();
  st.insert(st.end(), x1->begin(), x1->end());
  auto tg = a.vertices();
  tg.insert(tg.end(), xr->begin(), xr->end());
  r.start = IndependentSet(c.graph, st);
  r.target = IndependentSet(c.graph, tg);
  r.notes.push_back("H labels: " + std::string(s.size() == 1 ? "position along the s-chain (v/s mod p)" : "literal"));
  r.notes.push_back("H triples: " + std::to_string(check.triples) + ", uncovered (vertex, component) pairs: " +
                    std::to_string(check.full_coverage_misses));
  check_report_endpoints(c);
  return c;
}

/// Triples of H whose smallest label is 1 mod 4 must have no edge to V(G).
/// Returns the offending triples (as vertex lists); empty means the check passed.
inline std::vector<std::vector<Vertex>> toll_free_violations(const Construction& c) {
  std::vector<std::vector<Vertex>> bad;
  const auto& g = c.graph;
  const auto& gverts = c.report.roles.at("G");
  const auto& hverts = c.report.roles.at("H");
  Graph h = induced_subgraph(g, hverts);
  for_each_independent_set(h, 3, [&](std::span<const Vertex> t) {
    std::vector<Label> labs;
    for (auto v : t) labs.push_back(*h.label(v));
    if (mod(*std::min_element(labs.begin(), labs.end()), 4) != 1) return true;
    for (auto v : t)
      for (auto gv : gverts)
        if (g.adjacent(hverts[v], gv)) {
          bad.push_back({hverts[t[0]], hverts[t[1]], hverts[t[2]]});
          return true;
        }
    return true;
  });
  return bad;
}

// ---------------------------------------------------------------------------
// Assemblies.

/**
 * Largest prime p <= budget+1 with p - 1 + 7(|S|-1) <= budget, S the odd
 * 3-AP-free set in [1, p/8]; circulant graph glued along its |S| components
 * (ordered by step). Claims diameter >= 8(|S|-1) + |S|(p-4).
 */
inline Construction build_k3_extremal(std::int64_t budget_n) {
  if (budget_n < 16) throw precondition_error("build_k3_extremal: budget must be >= 16 vertices");
  for (std::int64_t p = budget_n + 1; p >= 17; --p) {
    if (!is_prime(p)) continue;
    auto s = odd_3ap_free(p / 8, 4);
    if (s.empty()) continue;
    const auto r = static_cast<std::int64_t>(s.size());
    if (p - 1 + 7 * (r - 1) > budget_n) continue;
    auto circ = circulant_ap_graph(p, s.elements);
    std::vector<PathComponent> comps;
    for (auto step : s.elements) comps.push_back(circulant_component(p, step));
    Construction c = r > 1 ? glue(circ.graph, 3, comps) : circ;
    auto& rep = c.report;
    rep.construction = "k3-extremal";
    rep.parameters["p"] = p;
    rep.parameters["budget"] = budget_n;
    rep.parameters["components"] = r;
    for (std::size_t i = 0; i < s.size(); ++i) rep.parameters["s" + std::to_string(i)] = s.elements[i];
    const auto total = static_cast<std::int64_t>(c.graph.order());
    rep.claims.clear();
    rep.claims.push_back({"diameter", "8(|S|-1)+|S|(p-4)", 8 * (r - 1) + r * (p - 4), r > 1 ? "lower_bound" : "exact"});
    rep.claims.push_back({"diameter stated", "8(|S|-1)+|S|(p-3)", 8 * (r - 1) + r * (p - 3), "reference"});
    rep.claims.push_back({"upper bound", "C(n,2)", binomial(total, 2), "upper_bound"});
    if (rep.junctions.empty() && r == 1) {
      rep.start = circ.report.start;
      rep.target = circ.report.target;
    }
    check_report_endpoints(c);
    return c;
  }
  throw precondition_error("build_k3_extremal: no feasible prime for budget " + std::to_string(budget_n));
}

/**
 * k_target tokens by iterating triple_extend (+3 each) from a base chosen by
 * k_target mod 3: circulant assembly (k=3), complement of P_4 (k=2) or K_2
 * (k=1). Each stage uses S' = {1} and the largest prime p >= 73 fitting its
 * share of the remaining budget; d for the next stage is the chained claim.
 */
inline Construction build_general(std::size_t k_target, std::int64_t budget_n, const EngineOptions& opts = {}) {
  if (k_target < 3) throw precondition_error("build_general: k_target must be >= 3");
  if (k_target == 3) return build_k3_extremal(budget_n);
  Construction cur = k_target % 3 == 0 ? build_k3_extremal(17) : k_target % 3 == 2 ? complement_path(4) : clique_base(2);
  std::size_t stages = (k_target - cur.report.k) / 3;
  std::vector<std::int64_t> chain{cur.report.primary().value};
  std::vector<std::int64_t> primes;
  while (stages > 0) {
    const std::int64_t remaining = budget_n - static_cast<std::int64_t>(cur.graph.order());
    const std::int64_t share = remaining / static_cast<std::int64_t>(stages);
    std::int64_t p = share + 1;
    while (p >= 73 && !is_prime(p)) --p;
    if (p < 73)
      throw precondition_error("build_general: infeasible budget, a stage needs >= 72 vertices but only " +
                               std::to_string(share) + " remain");
    const auto d = static_cast<std::size_t>(chain.back());
    auto next = triple_extend(cur.graph, cur.report.k, cur.report.start, cur.report.target, p,
                              std::vector<std::int64_t>{1}, d, opts, std::max<std::size_t>(cur.graph.order(), 64));
    chain.push_back(next.report.primary().value);
    primes.push_back(p);
    cur = std::move(next);
    --stages;
  }
  auto& r = cur.report;
  r.construction = "general";
  r.parameters["k_target"] = static_cast<std::int64_t>(k_target);
  r.parameters["budget"] = budget_n;
  r.notes.push_back("stage primes: " + detail::join(primes));
  r.notes.push_back("bound chain: " + detail::join(chain));
  return cur;
}

// ---------------------------------------------------------------------------
// Structural checks on constructions.

struct ClaimInterResult {
  bool pass = true;
  std::size_t checked = 0;       // independent sets meeting some junction
  std::size_t degree_checked = 0;  // of which contain an inner x-vertex
  std::string failure;
};

/// Every k-independent set meeting the x-vertices of a junction is a window
/// of k consecutive positions of that junction's sequence, and those
/// containing x_2..x_{3k-3} have exactly two neighbours in R_k.
inline ClaimInterResult check_claim_inter(const Graph& h, std::size_t k, const std::vector<JunctionSpec>& junctions) {
  ClaimInterResult out;
  std::map<Vertex, std::pair<std::size_t, std::size_t>> x_pos;  // x vertex -> (junction, 1-based index)
  for (std::size_t i = 0; i < junctions.size(); ++i)
    for (std::size_t j = 0; j < junctions[i].x.size(); ++j) x_pos[junctions[i].x[j]] = {i, j + 1};
  NeighborGenerator gen(h, k, Rule::jumping);
  std::vector<StateKey> buf;
  for_each_independent_set(h, k, [&](std::span<const Vertex> s) {
    std::set<std::size_t> which;
    bool inner = false;
    for (auto v : s)
      if (auto it = x_pos.find(v); it != x_pos.end()) {
        which.insert(it->second.first);
        const auto idx = it->second.second;
        inner |= idx >= 2 && idx <= 3 * k - 3;
      }
    if (which.empty()) return true;
    ++out.checked;
    const auto set_str = unchecked_independent_set({s.begin(), s.end()}).to_string();
    if (which.size() > 1) {
      out.pass = false;
      out.failure = set_str + " meets two junctions";
      return false;
    }
    const auto seq = junctions[*which.begin()].sequence();
    bool window = false;
    for (std::size_t t = 0; t + k <= seq.size() && !window; ++t) {
      auto w = detail::sorted({seq.begin() + static_cast<std::ptrdiff_t>(t),
                               seq.begin() + static_cast<std::ptrdiff_t>(t + k)});
      window = std::equal(w.begin(), w.end(), s.begin(), s.end());
    }
    if (!window) {
      out.pass = false;
      out.failure = set_str + " is not k consecutive junction positions";
      return false;
    }
    if (inner) {
      ++out.degree_checked;
      gen(encode_state(s), buf);
      if (buf.size() != 2) {
        out.pass = false;
        out.failure = set_str + " has degree " + std::to_string(buf.size()) + " in R_k, expected 2";
        return false;
      }
    }
    return true;
  });
  return out;
}

struct CirculantCheck {
  bool pass = true;
  std::size_t independent_triples = 0;
  std::size_t predicted_triples = 0;
  std::size_t components = 0;
  std::size_t cross_edges = 0;
  std::vector<std::size_t> component_sizes;
  std::string failure;
};

/// Full enumeration: R_3 of circulant_ap_graph(p, S) is exactly |S| induced
/// paths of p-3 nodes, one per step s, with no other independent triple and
/// no edge between families.
inline CirculantCheck check_circulant_structure(std::int64_t p, const std::vector<std::int64_t>& s,
                                                const EngineOptions& opts = {}) {
  CirculantCheck out;
  auto c = circulant_ap_graph(p, s);
  const auto& g = c.graph;
  std::map<StateKey, std::size_t> family;  // predicted triple -> step index
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::int64_t j = 0; j < p; ++j) {
      bool has_zero = false;
      for (std::int64_t t = 0; t < 3; ++t) has_zero |= mod((j + t) * s[i], p) == 0;
      if (has_zero) continue;
      family[encode_state(circulant_triple(p, s[i], j))] = i;
    }
  out.predicted_triples = family.size();
  auto fail = [&](std::string why) {
    if (out.pass) out.failure = std::move(why);
    out.pass = false;
  };
  for_each_independent_set(g, 3, [&](std::span<const Vertex> t) {
    ++out.independent_triples;
    if (!family.contains(encode_state(t)))
      fail("unexpected independent triple " + unchecked_independent_set({t.begin(), t.end()}).to_string());
    return true;
  });
  if (out.independent_triples != out.predicted_triples) fail("independent triple count differs from prediction");
  NeighborGenerator gen(g, 3, Rule::jumping);
  std::vector<StateKey> buf;
  for (const auto& [key, fam] : family) {
    gen(key, buf);
    for (auto nb : buf) {
      auto it = family.find(nb);
      if (it != family.end() && it->second != fam) ++out.cross_edges;
    }
  }
  out.cross_edges /= 2;
  if (out.cross_edges) fail("edges between different step families");
  auto list = enumerate_components(g, 3, Rule::jumping, opts);
  if (list.capped) throw capped_error("check_circulant_structure: enumeration capped");
  out.components = list.components.size();
  if (out.components != s.size()) fail("component count differs from |S|");
  for (const auto& comp : list.components) {
    out.component_sizes.push_back(comp.size());
    if (comp.size() != static_cast<std::size_t>(p - 3)) fail("component size differs from p-3");
    const auto deg = comp.degrees();
    const auto ones = std::count(deg.begin(), deg.end(), std::size_t{1});
    const auto twos = std::count(deg.begin(), deg.end(), std::size_t{2});
    if (comp.size() > 1 && (ones != 2 || static_cast<std::size_t>(twos) + 2 != comp.size()))
      fail("component is not an induced path");
    std::set<std::size_t> fams;
    for (auto key : comp.nodes()) fams.insert(family.count(key) ? family.at(key) : s.size());
    if (fams.size() != 1) fail("component mixes step families");
  }
  return out;
}

}  // namespace reconfig
