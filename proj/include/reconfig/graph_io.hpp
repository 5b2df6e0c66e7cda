#pragma once

// Edge-list and graph6 readers/writers.
//
// Canonical edge-list: first line "n m", then m lines "u v" with u < v,
// lexicographically sorted, 0-based, every line newline-terminated.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace reconfig {

enum class GraphFormat { edge_list, graph6 };

inline GraphFormat parse_graph_format(const std::string& name) {
  if (name == "edge-list" || name == "edges") return GraphFormat::edge_list;
  if (name == "graph6" || name == "g6") return GraphFormat::graph6;
  throw input_error("unknown graph format '" + name + "'");
}

namespace detail {

inline bool parse_uint(const std::string& tok, std::uint64_t& out) {
  if (tok.empty() || tok.size() > 19) return false;
  out = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return true;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace detail

/// Reads an edge list. Duplicate edges are merged and reported through
/// `warnings` when given; self-loops and out-of-range ids are errors.
inline Graph read_edge_list(std::istream& in, std::vector<std::string>* warnings = nullptr) {
  std::string line;
  std::size_t lineno = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_content_line()) throw input_error("edge list: missing header");
  auto header = detail::split_ws(line);
  std::uint64_t n = 0, m = 0;
  if (header.size() != 2 || !detail::parse_uint(header[0], n) || !detail::parse_uint(header[1], m))
    throw input_error("edge list: malformed header '" + line + "' (expected \"n m\")");
  if (n > (std::uint64_t{1} << 20)) throw input_error("edge list: vertex count too large");
  Graph g(static_cast<std::size_t>(n));
  for (std::uint64_t e = 0; e < m; ++e) {
    if (!next_content_line())
      throw input_error("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(e));
    auto tok = detail::split_ws(line);
    std::uint64_t u = 0, v = 0;
    if (tok.size() != 2 || !detail::parse_uint(tok[0], u) || !detail::parse_uint(tok[1], v))
      throw input_error("edge list line " + std::to_string(lineno) + ": malformed edge '" + line + "'");
    if (u >= n || v >= n)
      throw input_error("edge list line " + std::to_string(lineno) + ": vertex out of range");
    if (u == v) throw input_error("edge list line " + std::to_string(lineno) + ": self-loop at " + std::to_string(u));
    const auto a = static_cast<Vertex>(u), b = static_cast<Vertex>(v);
    if (g.adjacent(a, b)) {
      if (warnings) warnings->push_back("duplicate edge " + std::to_string(u) + " " + std::to_string(v) + " ignored");
      continue;
    }
    g.add_edge(a, b);
  }
  if (next_content_line())
    throw input_error("edge list line " + std::to_string(lineno) + ": trailing content after " + std::to_string(m) +
                      " edges");
  return g;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.order() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

inline Graph parse_edge_list(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return read_edge_list(in, warnings);
}

// graph6: N(n) followed by the upper triangle, column by column, six bits per
// printable byte (value + 63).

inline Graph parse_graph6(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
  std::size_t pos = 0;
  auto byte = [&]() -> std::uint32_t {
    if (pos >= s.size()) throw input_error("graph6: truncated input");
    const auto c = static_cast<unsigned char>(s[pos++]);
    if (c < 63 || c > 126) throw input_error("graph6: invalid character");
    return c - 63u;
  };
  std::size_t n = 0;
  const std::uint32_t first = byte();
  if (first < 63) {
    n = first;
  } else {
    std::uint32_t b = byte();
    if (b < 63) {
      n = (std::size_t{b} << 12) | (std::size_t{byte()} << 6) | byte();
    } else {
      for (int i = 0; i < 6; ++i) n = (n << 6) | byte();
    }
  }
  if (n > (std::size_t{1} << 20)) throw input_error("graph6: vertex count too large");
  Graph g(n);
  std::uint32_t cur = 0;
  int left = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) {
      if (left == 0) {
        cur = byte();
        left = 6;
      }
      --left;
      if ((cur >> left) & 1u) g.add_edge(i, j);
    }
  if (pos != s.size()) throw input_error("graph6: trailing bytes");
  return g;
}

inline std::string to_graph6(const Graph& g) {
  std::string out;
  const std::size_t n = g.order();
  if (n < 63) {
    out += static_cast<char>(63 + n);
  } else if (n <= 258047) {
    out += static_cast<char>(126);
    for (int sh = 12; sh >= 0; sh -= 6) out += static_cast<char>(63 + ((n >> sh) & 63));
  } else {
    out += static_cast<char>(126);
    out += static_cast<char>(126);
    for (int sh = 30; sh >= 0; sh -= 6) out += static_cast<char>(63 + ((n >> sh) & 63));
  }
  std::uint32_t cur = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) {
      cur = (cur << 1) | (g.adjacent(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out += static_cast<char>(63 + cur);
        cur = 0;
        filled = 0;
      }
    }
  if (filled) out += static_cast<char>(63 + (cur << (6 - filled)));
  return out;
}

inline Graph read_graph(std::istream& in, GraphFormat format, std::vector<std::string>* warnings = nullptr) {
  if (format == GraphFormat::edge_list) return read_edge_list(in, warnings);
  std::string line;
  std::getline(in, line);
  return parse_graph6(line);
}

inline Graph read_graph_file(const std::string& path, GraphFormat format = GraphFormat::edge_list,
                             std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open graph file '" + path + "'");
  return read_graph(in, format, warnings);
}

inline void write_graph(std::ostream& out, const Graph& g, GraphFormat format = GraphFormat::edge_list) {
  if (format == GraphFormat::edge_list)
    write_edge_list(out, g);
  else
    out << to_graph6(g) << '\n';
}

}  // namespace reconfig
