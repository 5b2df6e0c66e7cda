// Command-line front end: constructions, diameters, k=2 decisions, searches,
// verifications and 3-AP-free sets, all with JSON output.
//
// Exit codes: 0 ok, 1 decide2 --algo both disagreement, 2 refused input or
// precondition, 3 exploration capped, 64 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "reconfig/reconfig.hpp"
#include "reconfig/serialize.hpp"

using namespace reconfig;

namespace {

constexpr int kExitDisagree = 1;
constexpr int kExitRefused = 2;
constexpr int kExitCapped = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw input_error("malformed integer list '" + text + "'");
    }
    if (used != tok.size()) throw input_error("malformed integer list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

IndependentSet parse_set(const Graph& g, const std::string& text) {
  std::vector<Vertex> v;
  for (auto x : parse_list(text)) {
    if (x < 0 || static_cast<std::size_t>(x) >= g.order())
      throw input_error("vertex " + std::to_string(x) + " out of range");
    v.push_back(static_cast<Vertex>(x));
  }
  return IndependentSet(g, v);
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

Graph load(const std::string& path, const std::string& format) {
  std::vector<std::string> warnings;
  Graph g = read_graph_file(path, parse_graph_format(format), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return g;
}

struct Globals {
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultNodeCap;
  unsigned threads = 1;
  EngineOptions engine() const { return {cap, threads}; }
};

// --- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::string out;
  std::size_t n = 0;
  std::int64_t p = 0;
  std::string s;
  std::string s_prime;
  std::size_t k = 0;
  std::int64_t budget = 0;
  std::size_t steps = 1;
  std::size_t per_step = 1;
  std::size_t base_path = 4;
};

int run_construct(const ConstructArgs& a, const Globals& gl) {
  Construction c;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw UsageError(std::string("construct ") + a.kind + ": missing " + what);
  };
  if (a.kind == "comp-path") {
    need(a.n > 0, "--n");
    c = complement_path(a.n);
  } else if (a.kind == "circulant") {
    need(a.p > 0 && !a.s.empty(), "--p and --s");
    c = circulant_ap_graph(a.p, parse_list(a.s));
  } else if (a.kind == "glue" || a.kind == "k3") {
    need(a.budget > 0, "--budget");
    c = build_k3_extremal(a.budget);
  } else if (a.kind == "toll") {
    auto base = complement_path(a.base_path);
    c = toll_booth_extend(base.graph, base.report.k, base.report.start, base.report.target, a.n ? a.n : 1,
                          std::nullopt, gl.engine());
  } else if (a.kind == "iterate-toll") {
    c = iterate_toll(a.steps, a.per_step, a.base_path, gl.engine());
  } else if (a.kind == "triple") {
    need(a.p > 0, "--p");
    auto base = complement_path(a.base_path);
    std::optional<std::vector<std::int64_t>> sp;
    if (!a.s_prime.empty()) sp = parse_list(a.s_prime);
    c = triple_extend(base.graph, base.report.k, base.report.start, base.report.target, a.p, sp, std::nullopt,
                      gl.engine());
  } else if (a.kind == "general") {
    need(a.k > 0 && a.budget > 0, "--k and --budget");
    c = build_general(a.k, a.budget, gl.engine());
  } else {
    throw UsageError("unknown construction '" + a.kind +
                     "' (comp-path, circulant, glue, k3, toll, iterate-toll, triple, general)");
  }
  const std::string stem = a.out.empty() ? a.kind : a.out;
  {
    std::ofstream edges(stem + ".edges");
    if (!edges) throw input_error("cannot write " + stem + ".edges");
    write_edge_list(edges, c.graph);
  }
  const json report = json_of(c);
  {
    std::ofstream rep(stem + ".report.json");
    if (!rep) throw input_error("cannot write " + stem + ".report.json");
    rep << report.dump(2) << '\n';
  }
  print(report);
  return 0;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string check;
  std::string graph;
  std::string format = "edge-list";
  std::string report;
  std::string from, to;
  std::string parity = "both";
  std::size_t k = 3;
  std::int64_t p = 0;
  std::string s;
  std::int64_t budget = 0;
  std::string out;
};

int run_verify(const VerifyArgs& a, const Globals& gl) {
  json out = {{"check", a.check}, {"pass", false}, {"witness", nullptr}};
  const auto opts = gl.engine();
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw UsageError("verify " + a.check + ": missing " + what);
  };
  // Graph plus endpoints, either from files or from a circulant instance.
  auto endpoints = [&](Graph& g, IndependentSet& from, IndependentSet& to) {
    if (!a.graph.empty()) {
      need(!a.from.empty() && !a.to.empty(), "--from and --to");
      g = load(a.graph, a.format);
      from = parse_set(g, a.from);
      to = parse_set(g, a.to);
    } else {
      need(a.p > 0 && !a.s.empty(), "--graph or --p/--s");
      auto c = circulant_ap_graph(a.p, parse_list(a.s));
      g = c.graph;
      from = c.report.start;
      to = c.report.target;
    }
  };
  if (a.check == "63-free") {
    Graph g;
    IndependentSet from, to;
    endpoints(g, from, to);
    auto seq = shortest_sequence(g, from.size(), from, to, Rule::jumping, opts);
    if (seq.capped) throw capped_error("63-free: shortest path search capped");
    if (!seq.sequence) throw precondition_error("63-free: endpoints are disconnected");
    std::vector<Parity> parities;
    if (a.parity != "odd") parities.push_back(Parity::even);
    if (a.parity != "even") parities.push_back(Parity::odd);
    bool pass = true;
    json families = json::array();
    for (auto par : parities) {
      auto h = extract_63(g, *seq.sequence, par, opts);
      auto r = is_63_free(h);
      families.push_back({{"parity", par == Parity::even ? "even" : "odd"}, {"edges", h.size()}, {"free", r.free}});
      if (!r.free) {
        pass = false;
        out["witness"] = r.witness;
      }
    }
    out["pass"] = pass;
    out["families"] = families;
    out["path_length"] = seq.sequence->length();
  } else if (a.check == "config-path") {
    need(!a.graph.empty(), "--graph");
    auto r = is_config_path(load(a.graph, a.format), a.k, opts);
    out["pass"] = r.pass;
    out["nodes"] = r.nodes;
    out["components"] = r.components;
    if (!r.pass) out["witness"] = r.reason;
  } else if (a.check == "upper-bound-map") {
    Graph g;
    IndependentSet from, to;
    endpoints(g, from, to);
    auto seq = shortest_sequence(g, from.size(), from, to, Rule::jumping, opts);
    if (seq.capped) throw capped_error("upper-bound-map: shortest path search capped");
    if (!seq.sequence) throw precondition_error("upper-bound-map: endpoints are disconnected");
    auto r = verify_upper_bound_mapping(g, *seq.sequence, opts);
    const auto bound = binomial(static_cast<std::int64_t>(g.order()), static_cast<std::int64_t>(from.size()) - 1);
    out["pass"] = r.injective && static_cast<std::int64_t>(seq.sequence->length()) <= bound;
    out["length"] = seq.sequence->length();
    out["bound"] = bound;
    if (r.collision) out["witness"] = {r.collision->first, r.collision->second};
  } else if (a.check == "claim-inter") {
    Graph g;
    std::vector<JunctionSpec> junctions;
    std::size_t k = 3;
    if (!a.report.empty()) {
      need(!a.graph.empty(), "--graph with --report");
      g = load(a.graph, a.format);
      std::ifstream in(a.report);
      if (!in) throw input_error("cannot open report '" + a.report + "'");
      json rep;
      try {
        rep = json::parse(in);
        k = rep.at("k").get<std::size_t>();
        for (const auto& j : rep.at("junctions"))
          junctions.push_back({j.at("index").get<std::size_t>(), j.at("b").get<std::vector<Vertex>>(),
                               j.at("a").get<std::vector<Vertex>>(), j.at("x").get<std::vector<Vertex>>()});
      } catch (const json::exception& e) {
        throw input_error(std::string("malformed report: ") + e.what());
      }
    } else {
      auto c = build_k3_extremal(a.budget > 0 ? a.budget : 47);
      g = c.graph;
      k = c.report.k;
      junctions = c.report.junctions;
    }
    if (junctions.empty()) throw precondition_error("claim-inter: construction has no junctions");
    auto r = check_claim_inter(g, k, junctions);
    out["pass"] = r.pass;
    out["checked"] = r.checked;
    out["degree_checked"] = r.degree_checked;
    if (!r.pass) out["witness"] = r.failure;
  } else if (a.check == "circulant-structure") {
    need(a.p > 0 && !a.s.empty(), "--p and --s");
    auto r = check_circulant_structure(a.p, parse_list(a.s), opts);
    out["pass"] = r.pass;
    out["independent_triples"] = r.independent_triples;
    out["components"] = r.components;
    out["component_sizes"] = r.component_sizes;
    out["cross_edges"] = r.cross_edges;
    if (!r.pass) out["witness"] = r.failure;
  } else if (a.check == "saturate") {
    Graph g;
    if (!a.graph.empty()) g = load(a.graph, a.format);
    else g = build_k3_extremal(a.budget > 0 ? a.budget : 17).graph;
    auto r = saturate_to_path(g, opts);
    auto path = is_config_path(r.graph, 3, opts);
    out["pass"] = path.pass && path.diameter == r.diameter;
    out["diameter"] = r.diameter;
    out["added_edges"] = r.added.size();
    if (!path.pass) out["witness"] = path.reason;
    if (!a.out.empty()) {
      std::ofstream f(a.out);
      write_edge_list(f, r.graph);
    }
  } else {
    throw UsageError("unknown check '" + a.check +
                     "' (63-free, config-path, upper-bound-map, claim-inter, circulant-structure, saturate)");
  }
  print(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Independent set reconfiguration: long shortest paths in R_k(G)"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--seed", gl.seed, "random seed (default 0)");
  app.add_option("--cap", gl.cap, "node cap for configuration graph exploration");
  app.add_option("--threads", gl.threads, "worker threads")->check(CLI::Range(1u, 256u));

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build an extremal construction");
  construct->add_option("kind", ca.kind, "comp-path|circulant|glue|k3|toll|iterate-toll|triple|general")->required();
  construct->add_option("--out", ca.out, "output stem (<stem>.edges, <stem>.report.json)");
  construct->add_option("--n", ca.n, "vertices (comp-path) or booth count (toll)");
  construct->add_option("--p", ca.p, "prime");
  construct->add_option("--s", ca.s, "comma-separated 3-AP-free set");
  construct->add_option("--s-prime", ca.s_prime, "comma-separated S' for triple");
  construct->add_option("--k", ca.k, "target token count (general)");
  construct->add_option("--budget", ca.budget, "vertex budget (k3, general)");
  construct->add_option("--steps", ca.steps, "toll-booth steps (iterate-toll)");
  construct->add_option("--per-step", ca.per_step, "booths per step (iterate-toll)");
  construct->add_option("--base-path", ca.base_path, "path length of the base complement-of-path graph");

  std::string graph_file, format = "edge-list", rule_name = "tj";
  std::size_t k = 2;
  auto* diameter = app.add_subcommand("diameter", "largest component diameter of R_k(G)");
  diameter->add_option("graph", graph_file, "graph file")->required();
  diameter->add_option("--k", k, "token count")->required();
  diameter->add_option("--rule", rule_name, "tj|ts");
  diameter->add_option("--format", format, "edge-list|graph6");

  std::string from, to, algo = "both";
  bool want_witness = false;
  auto* decide2 = app.add_subcommand("decide2", "TJ reachability between two 2-sets");
  decide2->add_option("graph", graph_file, "graph file")->required();
  decide2->add_option("--from", from, "u,v")->required();
  decide2->add_option("--to", to, "x,y")->required();
  decide2->add_option("--algo", algo, "fast|naive|both")->check(CLI::IsMember({"fast", "naive", "both"}));
  decide2->add_option("--format", format, "edge-list|graph6");
  decide2->add_flag("--witness", want_witness, "include a shortest sequence (naive)");

  std::size_t search_n = 0, random_trials = 0;
  bool exhaustive = false;
  auto* search = app.add_subcommand("search", "largest diameter over n-vertex graphs");
  search->add_option("--n", search_n, "vertices")->required();
  search->add_option("--k", k, "token count")->required();
  search->add_option("--rule", rule_name, "tj|ts");
  auto* ex_flag = search->add_flag("--exhaustive", exhaustive, "all isomorphism classes (n <= 7)");
  auto* rnd_opt = search->add_option("--random", random_trials, "number of random graphs");
  ex_flag->excludes(rnd_opt);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "named structural checks");
  verify->add_option("check", va.check, "63-free|config-path|upper-bound-map|claim-inter|circulant-structure|saturate")
      ->required();
  verify->add_option("--graph", va.graph, "graph file");
  verify->add_option("--format", va.format, "edge-list|graph6");
  verify->add_option("--report", va.report, "build report JSON (claim-inter)");
  verify->add_option("--from", va.from, "start set");
  verify->add_option("--to", va.to, "target set");
  verify->add_option("--parity", va.parity, "even|odd|both")->check(CLI::IsMember({"even", "odd", "both"}));
  verify->add_option("--k", va.k, "token count (config-path)");
  verify->add_option("--p", va.p, "prime (circulant instances)");
  verify->add_option("--budget", va.budget, "vertex budget of the k3 assembly (claim-inter, saturate)");
  verify->add_option("--s", va.s, "comma-separated set");
  verify->add_option("--out", va.out, "write the saturated graph here");

  std::int64_t ap_n = 0, ap_mod = 4;
  std::string method = "best";
  auto* apset = app.add_subcommand("apset", "3-AP-free subsets of [1, n]");
  apset->add_option("--n", ap_n, "universe bound")->required();
  apset->add_option("--method", method, "exact|behrend|greedy|best|odd")
      ->check(CLI::IsMember({"exact", "behrend", "greedy", "best", "odd"}));
  apset->add_option("--mod", ap_mod, "residue modulus for odd (4 or 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    const auto opts = gl.engine();
    if (*construct) return run_construct(ca, gl);
    if (*verify) return run_verify(va, gl);
    if (*diameter) {
      const auto rule = parse_rule(rule_name);
      auto rep = max_component_diameter(load(graph_file, format), k, rule, opts);
      print(json_of(rep));
      return rep.capped ? kExitCapped : 0;
    }
    if (*decide2) {
      const Graph g = load(graph_file, format);
      const auto a = parse_set(g, from), b = parse_set(g, to);
      json out = {{"from", json_of(a)}, {"to", json_of(b)}, {"algo", algo}};
      std::optional<bool> fast, naive;
      if (algo != "naive") fast = decide_k2_fast(g, a, b);
      if (algo != "fast") {
        auto r = decide_k2_naive(g, a, b, want_witness, opts);
        naive = r.reachable;
        if (r.witness) out["witness"] = json_of(*r.witness);
      }
      if (fast) out["fast"] = *fast;
      if (naive) out["naive"] = *naive;
      out["reachable"] = fast ? *fast : *naive;
      if (fast && naive && *fast != *naive) {
        out["agree"] = false;
        print(out);
        std::cerr << "error: fast and naive decisions disagree\n";
        return kExitDisagree;
      }
      print(out);
      return 0;
    }
    if (*search) {
      const auto rule = parse_rule(rule_name);
      if (!exhaustive && random_trials == 0) throw UsageError("search: give --exhaustive or --random T");
      SearchResult r = exhaustive ? exhaustive_search(search_n, k, rule, opts)
                                  : random_search(search_n, k, rule, random_trials, gl.seed, opts);
      print(json_of(r));
      return r.capped_graphs ? kExitCapped : 0;
    }
    if (*apset) {
      APSet s;
      if (method == "exact") s = max_3ap_free(ap_n);
      else if (method == "behrend") s = behrend_set(ap_n);
      else if (method == "greedy") s = greedy_3ap_free(ap_n);
      else if (method == "odd") s = odd_3ap_free(ap_n, ap_mod);
      else s = best_3ap_free(ap_n);
      print(json_of(s));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const capped_error& e) {
    std::cerr << "capped: " << e.what() << '\n';
    print({{"capped", true}, {"reason", e.what()}});
    return kExitCapped;
  } catch (const precondition_error& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const input_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitRefused;
  }
  return kExitUsage;
}
