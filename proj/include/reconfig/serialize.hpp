#pragma once

// JSON views of reports and results (nlohmann::json).

#include <json.hpp>

#include "apfree.hpp"
#include "constructions.hpp"
#include "engine.hpp"
#include "search.hpp"
#include "verifiers.hpp"

namespace reconfig {

using nlohmann::json;

inline json json_of(const IndependentSet& s) { return json(s.vertices()); }

inline json json_of(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  json out = {{"n", g.order()}, {"m", g.edge_count()}, {"edges", edges}};
  if (!g.labels().empty()) {
    json labels = json::object();
    for (const auto& [v, l] : g.labels()) labels[std::to_string(v)] = l;
    out["labels"] = labels;
  }
  return out;
}

inline json json_of(const DiameterReport& r) {
  json out = {{"n", r.n},
              {"k", r.k},
              {"rule", to_string(r.rule)},
              {"component_count", r.component_count},
              {"component_size", r.component_size},
              {"diameter", nullptr},
              {"witness_from", nullptr},
              {"witness_to", nullptr},
              {"capped", r.capped}};
  if (r.diameter) out["diameter"] = *r.diameter;
  if (r.witness_from) out["witness_from"] = json_of(*r.witness_from);
  if (r.witness_to) out["witness_to"] = json_of(*r.witness_to);
  if (!r.reason.empty()) out["reason"] = r.reason;
  return out;
}

inline json json_of(const APSet& s) {
  return {{"n", s.universe_bound},
          {"size", s.size()},
          {"method", s.method},
          {"params", s.params},
          {"elements", s.elements}};
}

inline json json_of(const Claim& c) {
  return {{"name", c.name}, {"formula", c.formula}, {"value", c.value}, {"kind", c.kind}};
}

inline json json_of(const BuildReport& r) {
  json claims = json::array();
  for (const auto& c : r.claims) claims.push_back(json_of(c));
  json junctions = json::array();
  for (const auto& j : r.junctions) junctions.push_back({{"index", j.index}, {"b", j.b}, {"x", j.x}, {"a", j.a}});
  return {{"construction", r.construction},
          {"k", r.k},
          {"parameters", r.parameters},
          {"roles", r.roles},
          {"claims", claims},
          {"start", json_of(r.start)},
          {"target", json_of(r.target)},
          {"junctions", junctions},
          {"notes", r.notes}};
}

inline json json_of(const Construction& c) {
  json out = json_of(c.report);
  out["n"] = c.graph.order();
  out["m"] = c.graph.edge_count();
  return out;
}

inline json json_of(const SearchResult& r) {
  json out = {{"n", r.n},
              {"k", r.k},
              {"rule", to_string(r.rule)},
              {"best", nullptr},
              {"witness", nullptr},
              {"exhaustive", r.exhaustive},
              {"mode", r.mode},
              {"graphs_examined", r.graphs_examined},
              {"capped_graphs", r.capped_graphs}};
  if (r.best) out["best"] = *r.best;
  if (r.witness) out["witness"] = json_of(*r.witness);
  if (r.mode == "exhaustive") {
    out["optimal_classes"] = r.optimal_classes;
    out["optimal_codes"] = r.optimal_codes;
  } else {
    out["seed"] = r.seed;
  }
  return out;
}

inline json json_of(const ReconfigSequence& s) {
  json out = json::array();
  for (const auto& set : s.sets()) out.push_back(json_of(set));
  return out;
}

inline json json_of(const Hypergraph3& h) {
  json edges = json::array();
  for (const auto& e : h.edges()) edges.push_back(e);
  return {{"n", h.order()}, {"edges", edges}};
}

}  // namespace reconfig
