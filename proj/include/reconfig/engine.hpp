#pragma once

/**
 * Implicit exploration of the k-token configuration graph R_k(G).
 *
 * Nodes of R_k(G) are the independent sets of size k of G. Under token
 * jumping (TJ) two sets are adjacent when they differ in exactly one vertex;
 * token sliding (TS) additionally requires the two differing vertices to be
 * adjacent in G. Nodes are never materialised up front: each is packed into
 * a 128-bit key (16 bits per vertex, smallest vertex most significant, so
 * integer order equals lexicographic order) and expanded on demand.
 *
 * Exploration honours a node cap. Hitting the cap is reported through the
 * `capped` flag of the result; operations that need a complete component
 * (diameters) refuse with capped_error.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "graph.hpp"

namespace reconfig {

enum class Rule { jumping, sliding };

inline std::string to_string(Rule r) { return r == Rule::jumping ? "tj" : "ts"; }

inline Rule parse_rule(const std::string& s) {
  if (s == "tj" || s == "TJ" || s == "jumping") return Rule::jumping;
  if (s == "ts" || s == "TS" || s == "sliding") return Rule::sliding;
  throw input_error("unknown reconfiguration rule '" + s + "' (expected tj or ts)");
}

using StateKey = unsigned __int128;

constexpr std::size_t kMaxTokens = 8;
constexpr std::size_t kMaxEngineVertices = std::size_t{1} << 16;
constexpr std::size_t kDefaultNodeCap = 5'000'000;

struct StateKeyHash {
  std::size_t operator()(StateKey key) const noexcept {
    auto mix = [](std::uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    const auto lo = static_cast<std::uint64_t>(key);
    const auto hi = static_cast<std::uint64_t>(key >> 64);
    return static_cast<std::size_t>(mix(lo ^ mix(hi)));
  }
};

inline StateKey encode_state(std::span<const Vertex> sorted) {
  StateKey key = 0;
  for (auto v : sorted) key = (key << 16) | static_cast<StateKey>(v);
  return key;
}

inline void decode_state(StateKey key, std::size_t k, Vertex* out) {
  for (std::size_t i = k; i-- > 0;) {
    out[i] = static_cast<Vertex>(key & 0xffff);
    key >>= 16;
  }
}

inline std::vector<Vertex> decode_state(StateKey key, std::size_t k) {
  std::vector<Vertex> v(k);
  decode_state(key, k, v.data());
  return v;
}

inline StateKey encode_state(const IndependentSet& s) { return encode_state(s.vertices()); }

struct EngineOptions {
  std::size_t node_cap = kDefaultNodeCap;
  unsigned threads = 1;
};

namespace detail {

inline void check_engine_input(const Graph& g, std::size_t k) {
  if (k > kMaxTokens) throw input_error("k=" + std::to_string(k) + " exceeds the engine limit of 8 tokens");
  if (g.order() > kMaxEngineVertices) throw input_error("graph too large for the configuration engine (n > 65536)");
}

inline void check_state(const Graph& g, const IndependentSet& s, std::size_t k) {
  if (s.size() != k)
    throw input_error("independent set " + s.to_string() + " has size " + std::to_string(s.size()) + ", expected " +
                      std::to_string(k));
  if (!is_independent(g, s.vertices())) throw input_error("vertex set " + s.to_string() + " is not independent");
}

}  // namespace detail

/// Neighbour generator for one (graph, k, rule). Holds scratch space, so one
/// instance per thread.
class NeighborGenerator {
 public:
  NeighborGenerator(const Graph& g, std::size_t k, Rule rule)
      : g_(g), k_(k), rule_(rule), words_(g.words()), mask_(full_mask(g.order())), prefix_((k + 1) * g.words()),
        suffix_((k + 1) * g.words()) {
    detail::check_engine_input(g, k);
  }

  std::size_t k() const { return k_; }

  /// Fills `out` with the neighbours of `key`, in increasing key order.
  void operator()(StateKey key, std::vector<StateKey>& out) {
    out.clear();
    if (k_ == 0) return;
    Vertex v[kMaxTokens];
    decode_state(key, k_, v);
    // prefix_[i] covers members 0..i-1 (their rows and the members
    // themselves), suffix_[i] covers members i..k-1.
    std::fill(prefix_.begin(), prefix_.begin() + static_cast<std::ptrdiff_t>(words_), 0);
    for (std::size_t i = 0; i < k_; ++i) {
      auto row = g_.row(v[i]);
      Word* cur = &prefix_[(i + 1) * words_];
      const Word* prev = &prefix_[i * words_];
      for (std::size_t w = 0; w < words_; ++w) cur[w] = prev[w] | row[w];
      cur[v[i] / kWordBits] |= Word{1} << (v[i] % kWordBits);
    }
    std::fill(suffix_.begin() + static_cast<std::ptrdiff_t>(k_ * words_),
              suffix_.begin() + static_cast<std::ptrdiff_t>((k_ + 1) * words_), 0);
    for (std::size_t i = k_; i-- > 0;) {
      auto row = g_.row(v[i]);
      Word* cur = &suffix_[i * words_];
      const Word* next = &suffix_[(i + 1) * words_];
      for (std::size_t w = 0; w < words_; ++w) cur[w] = next[w] | row[w];
      cur[v[i] / kWordBits] |= Word{1} << (v[i] % kWordBits);
    }
    Vertex rest[kMaxTokens];
    for (std::size_t i = 0; i < k_; ++i) {
      const Word* pre = &prefix_[i * words_];
      const Word* suf = &suffix_[(i + 1) * words_];
      auto own = g_.row(v[i]);
      for (std::size_t w = 0; w < words_; ++w) {
        Word cand = ~(pre[w] | suf[w]) & mask_[w];
        if (rule_ == Rule::sliding) cand &= own[w];
        if (w == v[i] / kWordBits) cand &= ~(Word{1} << (v[i] % kWordBits));
        while (cand) {
          const auto x = static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(cand)));
          cand &= cand - 1;
          std::size_t r = 0;
          bool placed = false;
          for (std::size_t j = 0; j < k_; ++j) {
            if (j == i) continue;
            if (!placed && x < v[j]) {
              rest[r++] = x;
              placed = true;
            }
            rest[r++] = v[j];
          }
          if (!placed) rest[r++] = x;
          out.push_back(encode_state(std::span<const Vertex>(rest, k_)));
        }
      }
    }
    std::sort(out.begin(), out.end());
  }

 private:
  const Graph& g_;
  std::size_t k_;
  Rule rule_;
  std::size_t words_;
  std::vector<Word> mask_;
  std::vector<Word> prefix_;
  std::vector<Word> suffix_;
};

/// Neighbours of `s` in R_k(G), k = |s|, sorted lexicographically.
inline std::vector<IndependentSet> neighbors(const Graph& g, const IndependentSet& s, Rule rule) {
  detail::check_state(g, s, s.size());
  NeighborGenerator gen(g, s.size(), rule);
  std::vector<StateKey> keys;
  gen(encode_state(s), keys);
  std::vector<IndependentSet> out;
  out.reserve(keys.size());
  for (auto key : keys) out.push_back(unchecked_independent_set(decode_state(key, s.size())));
  return out;
}

/// True when I and J are adjacent in R_k(G) under `rule` (equal sizes, one swap).
inline bool configs_adjacent(const Graph& g, const IndependentSet& a, const IndependentSet& b, Rule rule) {
  if (a.size() != b.size()) return false;
  std::vector<Vertex> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (only_a.size() != 1 || only_b.size() != 1) return false;
  return rule == Rule::jumping || g.adjacent(only_a[0], only_b[0]);
}

/// Calls f(sorted vertex span) for every independent set of size k, in
/// lexicographic order, until f returns false.
template <typename F>
void for_each_independent_set(const Graph& g, std::size_t k, F&& f) {
  const std::size_t words = g.words();
  std::vector<Vertex> chosen;
  std::vector<std::vector<Word>> cand(k + 1, std::vector<Word>(words));
  cand[0] = full_mask(g.order());
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == k) {
      if (!f(std::span<const Vertex>(chosen))) stop = true;
      return;
    }
    std::vector<Word> avail = cand[depth];
    for (std::size_t w = 0; w < words && !stop; ++w) {
      while (avail[w] && !stop) {
        const auto v = static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(avail[w])));
        avail[w] &= avail[w] - 1;
        if (g.order() - v < k - depth) return;
        auto row = g.row(v);
        auto& next = cand[depth + 1];
        for (std::size_t x = 0; x < words; ++x) next[x] = (x < w ? 0 : avail[x]) & ~row[x];
        chosen.push_back(v);
        rec(depth + 1);
        chosen.pop_back();
      }
    }
  };
  rec(0);
}

inline std::size_t count_independent_sets(const Graph& g, std::size_t k) {
  std::size_t c = 0;
  for_each_independent_set(g, k, [&](std::span<const Vertex>) {
    ++c;
    return true;
  });
  return c;
}

/// An ordered list of equal-size independent sets, consecutive ones adjacent
/// under the rule it was validated with.
class ReconfigSequence {
 public:
  ReconfigSequence() = default;
  explicit ReconfigSequence(std::vector<IndependentSet> sets) : sets_(std::move(sets)) {}

  const std::vector<IndependentSet>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  /// Number of reconfiguration steps.
  std::size_t length() const { return sets_.empty() ? 0 : sets_.size() - 1; }
  const IndependentSet& front() const { return sets_.front(); }
  const IndependentSet& back() const { return sets_.back(); }
  const IndependentSet& operator[](std::size_t i) const { return sets_[i]; }

  /// Empty optional when valid; otherwise the first violated invariant.
  std::optional<std::string> validate(const Graph& g, Rule rule) const {
    if (sets_.empty()) return "empty sequence";
    const std::size_t k = sets_.front().size();
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (sets_[i].size() != k) return "set " + std::to_string(i) + " has a different size";
      if (!is_independent(g, sets_[i].vertices())) return "set " + std::to_string(i) + " is not independent";
      if (i > 0 && !configs_adjacent(g, sets_[i - 1], sets_[i], rule))
        return "sets " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not one " + to_string(rule) +
               " step apart";
    }
    return std::nullopt;
  }

 private:
  std::vector<IndependentSet> sets_;
};

struct DiameterWitness {
  std::size_t diameter = 0;
  IndependentSet from;
  IndependentSet to;
};

/// One connected component of R_k(G), explored by BFS from `start`.
/// Keeps a pointer to the graph, which must outlive the component.
class ConfigComponent {
 public:
  ConfigComponent(const Graph& g, std::size_t k, Rule rule) : graph_(&g), k_(k), rule_(rule) {}

  const Graph& graph() const { return *graph_; }
  std::size_t k() const { return k_; }
  Rule rule() const { return rule_; }
  bool capped() const { return capped_; }
  std::size_t size() const { return nodes_.size(); }

  /// Keys in BFS discovery order; nodes()[0] is the start.
  const std::vector<StateKey>& nodes() const { return nodes_; }
  /// BFS distance from the start, parallel to nodes().
  const std::vector<std::uint32_t>& distances() const { return dist_; }

  StateKey start_key() const { return nodes_.front(); }
  IndependentSet node(std::size_t i) const { return unchecked_independent_set(decode_state(nodes_[i], k_)); }

  std::optional<std::size_t> index_of(StateKey key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const IndependentSet& s) const { return s.size() == k_ && index_of(encode_state(s)).has_value(); }

  /// Number of R_k edges inside the component. Requires a complete component.
  std::size_t edge_count() const {
    require_complete("edge_count");
    NeighborGenerator gen(*graph_, k_, rule_);
    std::vector<StateKey> buf;
    std::size_t deg = 0;
    for (auto key : nodes_) {
      gen(key, buf);
      deg += buf.size();
    }
    return deg / 2;
  }

  /// Degree of every node, parallel to nodes(). Requires a complete component.
  std::vector<std::size_t> degrees() const {
    require_complete("degrees");
    NeighborGenerator gen(*graph_, k_, rule_);
    std::vector<StateKey> buf;
    std::vector<std::size_t> out;
    out.reserve(nodes_.size());
    for (auto key : nodes_) {
      gen(key, buf);
      out.push_back(buf.size());
    }
    return out;
  }

  /// Exact diameter by BFS from every node; witness is the lexicographically
  /// first (from, to) pair realising it. Cached after the first call.
  const DiameterWitness& diameter(unsigned threads = 1) const;

  void require_complete(const char* what) const {
    if (capped_)
      throw capped_error(std::string(what) + ": component exploration was capped at " + std::to_string(size()) +
                         " nodes");
  }

 private:
  friend ConfigComponent bfs_component_from_key(const Graph&, std::size_t, StateKey, Rule, std::size_t);

  const Graph* graph_;
  std::size_t k_;
  Rule rule_;
  bool capped_ = false;
  std::vector<StateKey> nodes_;
  std::vector<std::uint32_t> dist_;
  std::unordered_map<StateKey, std::uint32_t, StateKeyHash> index_;
  mutable std::optional<DiameterWitness> diameter_;
};

inline ConfigComponent bfs_component_from_key(const Graph& g, std::size_t k, StateKey start, Rule rule,
                                              std::size_t node_cap) {
  ConfigComponent comp(g, k, rule);
  NeighborGenerator gen(g, k, rule);
  comp.nodes_.push_back(start);
  comp.dist_.push_back(0);
  comp.index_.emplace(start, 0);
  std::vector<StateKey> buf;
  for (std::size_t head = 0; head < comp.nodes_.size(); ++head) {
    gen(comp.nodes_[head], buf);
    const std::uint32_t d = comp.dist_[head] + 1;
    for (auto key : buf) {
      if (comp.index_.contains(key)) continue;
      if (comp.nodes_.size() >= node_cap) {
        comp.capped_ = true;
        return comp;
      }
      comp.index_.emplace(key, static_cast<std::uint32_t>(comp.nodes_.size()));
      comp.nodes_.push_back(key);
      comp.dist_.push_back(d);
    }
  }
  return comp;
}

/// Full component of `start` in R_k(G) with BFS distances from `start`.
inline ConfigComponent bfs_component(const Graph& g, std::size_t k, const IndependentSet& start, Rule rule,
                                     const EngineOptions& opts = {}) {
  detail::check_engine_input(g, k);
  detail::check_state(g, start, k);
  return bfs_component_from_key(g, k, encode_state(start), rule, opts.node_cap);
}

namespace detail {

struct Csr {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> targets;
};

inline Csr build_csr(const Graph& g, std::size_t k, Rule rule, const std::vector<StateKey>& nodes,
                     const std::unordered_map<StateKey, std::uint32_t, StateKeyHash>& index) {
  Csr csr;
  csr.offsets.reserve(nodes.size() + 1);
  csr.offsets.push_back(0);
  NeighborGenerator gen(g, k, rule);
  std::vector<StateKey> buf;
  for (auto key : nodes) {
    gen(key, buf);
    for (auto nb : buf) csr.targets.push_back(index.at(nb));
    csr.offsets.push_back(static_cast<std::uint32_t>(csr.targets.size()));
  }
  return csr;
}

struct EccentricityBest {
  std::size_t ecc = 0;
  std::size_t source_rank = std::numeric_limits<std::size_t>::max();
  std::uint32_t target = 0;
  bool set = false;
};

}  // namespace detail

inline const DiameterWitness& ConfigComponent::diameter(unsigned threads) const {
  if (diameter_) return *diameter_;
  require_complete("component_diameter");
  const auto csr = detail::build_csr(*graph_, k_, rule_, nodes_, index_);
  const std::size_t n = nodes_.size();
  std::vector<std::uint32_t> by_key(n);
  for (std::uint32_t i = 0; i < n; ++i) by_key[i] = i;
  std::sort(by_key.begin(), by_key.end(), [&](auto a, auto b) { return nodes_[a] < nodes_[b]; });

  auto worker = [&](std::size_t first, std::size_t stride, detail::EccentricityBest& best) {
    std::vector<std::uint32_t> dist(n);
    std::vector<std::uint32_t> queue(n);
    constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t rank = first; rank < n; rank += stride) {
      std::fill(dist.begin(), dist.end(), kUnseen);
      const std::uint32_t src = by_key[rank];
      std::size_t head = 0, tail = 0;
      queue[tail++] = src;
      dist[src] = 0;
      while (head < tail) {
        const auto u = queue[head++];
        for (auto e = csr.offsets[u]; e < csr.offsets[u + 1]; ++e) {
          const auto v = csr.targets[e];
          if (dist[v] == kUnseen) {
            dist[v] = dist[u] + 1;
            queue[tail++] = v;
          }
        }
      }
      const std::size_t ecc = dist[queue[tail - 1]];
      if (best.set && ecc <= best.ecc) continue;
      std::uint32_t target = src;
      bool found = false;
      for (std::size_t i = 0; i < tail; ++i) {
        const auto v = queue[i];
        if (dist[v] == ecc && (!found || nodes_[v] < nodes_[target])) {
          target = v;
          found = true;
        }
      }
      best = {ecc, rank, target, true};
    }
  };

  detail::EccentricityBest best;
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, n / 64))));
  if (t == 1) {
    worker(0, 1, best);
  } else {
    std::vector<detail::EccentricityBest> partial(t);
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker, i, t, std::ref(partial[i]));
    for (auto& th : pool) th.join();
    for (const auto& p : partial) {
      if (!p.set) continue;
      if (!best.set || p.ecc > best.ecc || (p.ecc == best.ecc && p.source_rank < best.source_rank)) best = p;
    }
  }
  DiameterWitness w;
  w.diameter = best.ecc;
  w.from = node(by_key[best.source_rank]);
  w.to = node(best.target);
  diameter_ = std::move(w);
  return *diameter_;
}

/// Exact diameter of a fully explored component with its witness pair.
inline DiameterWitness component_diameter(const ConfigComponent& comp, unsigned threads = 1) {
  return comp.diameter(threads);
}

/// Outcome of a point-to-point query; `capped` means the answer is unknown.
struct DistanceResult {
  std::optional<std::size_t> distance;
  bool capped = false;
};

inline DistanceResult distance(const Graph& g, std::size_t k, const IndependentSet& from, const IndependentSet& to,
                               Rule rule, const EngineOptions& opts = {}) {
  detail::check_engine_input(g, k);
  detail::check_state(g, from, k);
  detail::check_state(g, to, k);
  const StateKey src = encode_state(from), dst = encode_state(to);
  if (src == dst) return {0, false};
  NeighborGenerator gen(g, k, rule);
  std::unordered_set<StateKey, StateKeyHash> seen{src};
  std::vector<StateKey> frontier{src}, next, buf;
  std::size_t d = 0;
  while (!frontier.empty()) {
    ++d;
    next.clear();
    for (auto key : frontier) {
      gen(key, buf);
      for (auto nb : buf) {
        if (nb == dst) return {d, false};
        if (seen.insert(nb).second) {
          if (seen.size() > opts.node_cap) return {std::nullopt, true};
          next.push_back(nb);
        }
      }
    }
    std::swap(frontier, next);
  }
  return {std::nullopt, false};
}

struct SequenceResult {
  std::optional<ReconfigSequence> sequence;
  bool capped = false;
};

/// A shortest reconfiguration sequence; at every step the lexicographically
/// smallest successor that stays on a shortest path is taken.
inline SequenceResult shortest_sequence(const Graph& g, std::size_t k, const IndependentSet& from,
                                        const IndependentSet& to, Rule rule, const EngineOptions& opts = {}) {
  detail::check_engine_input(g, k);
  detail::check_state(g, from, k);
  detail::check_state(g, to, k);
  const StateKey src = encode_state(from), dst = encode_state(to);
  if (src == dst) return {ReconfigSequence({from}), false};
  NeighborGenerator gen(g, k, rule);
  // BFS backwards from the target until the source is reached.
  std::unordered_map<StateKey, std::uint32_t, StateKeyHash> dist{{dst, 0}};
  std::vector<StateKey> frontier{dst}, next, buf;
  bool reached = false;
  for (std::uint32_t d = 1; !frontier.empty() && !reached; ++d) {
    next.clear();
    for (auto key : frontier) {
      gen(key, buf);
      for (auto nb : buf) {
        if (dist.emplace(nb, d).second) {
          if (dist.size() > opts.node_cap) return {std::nullopt, true};
          next.push_back(nb);
          if (nb == src) reached = true;
        }
      }
    }
    std::swap(frontier, next);
  }
  if (!reached) return {std::nullopt, false};
  std::vector<IndependentSet> sets{from};
  StateKey cur = src;
  std::uint32_t d = dist.at(src);
  while (d > 0) {
    gen(cur, buf);
    for (auto nb : buf) {
      auto it = dist.find(nb);
      if (it != dist.end() && it->second == d - 1) {
        cur = nb;
        break;
      }
    }
    --d;
    sets.push_back(unchecked_independent_set(decode_state(cur, k)));
  }
  return {ReconfigSequence(std::move(sets)), false};
}

struct ComponentList {
  std::vector<ConfigComponent> components;
  bool capped = false;
};

/// Partition of all k-independent sets into components of R_k(G), ordered by
/// their lexicographically smallest member. `node_cap` bounds the total.
inline ComponentList enumerate_components(const Graph& g, std::size_t k, Rule rule, const EngineOptions& opts = {}) {
  detail::check_engine_input(g, k);
  ComponentList out;
  std::unordered_set<StateKey, StateKeyHash> seen;
  std::size_t total = 0;
  for_each_independent_set(g, k, [&](std::span<const Vertex> s) {
    const StateKey key = encode_state(s);
    if (seen.contains(key)) return true;
    auto comp = bfs_component_from_key(g, k, key, rule, opts.node_cap - total);
    total += comp.size();
    const bool capped = comp.capped();
    for (auto nk : comp.nodes()) seen.insert(nk);
    out.components.push_back(std::move(comp));
    if (capped || total >= opts.node_cap) {
      out.capped = true;
      return false;
    }
    return true;
  });
  return out;
}

struct DiameterReport {
  std::size_t n = 0;
  std::size_t k = 0;
  Rule rule = Rule::jumping;
  std::size_t component_count = 0;
  std::size_t component_size = 0;
  std::optional<std::size_t> diameter;
  std::optional<IndependentSet> witness_from;
  std::optional<IndependentSet> witness_to;
  bool capped = false;
  std::string reason;
};

/// Largest component diameter of R_k(G) with witnesses. Ties between
/// components go to the one with the lexicographically smallest member.
inline DiameterReport max_component_diameter(const Graph& g, std::size_t k, Rule rule,
                                             const EngineOptions& opts = {}) {
  DiameterReport rep;
  rep.n = g.order();
  rep.k = k;
  rep.rule = rule;
  auto list = enumerate_components(g, k, rule, opts);
  rep.capped = list.capped;
  for (const auto& comp : list.components) {
    if (comp.capped()) continue;
    ++rep.component_count;
    const auto& w = comp.diameter(opts.threads);
    if (!rep.diameter || w.diameter > *rep.diameter) {
      rep.diameter = w.diameter;
      rep.component_size = comp.size();
      rep.witness_from = w.from;
      rep.witness_to = w.to;
    }
  }
  if (!rep.diameter) rep.reason = rep.capped ? "capped before any component completed" : "no independent set";
  return rep;
}

}  // namespace reconfig
