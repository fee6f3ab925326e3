#pragma once

// Plain text graph format.
//
//   # comment lines start with '#'
//   n m
//   u v        (m lines, one per edge id; a loop is "u u")
//
// The writer emits endpoints with u <= v, edges in id order, so writing and
// re-parsing reproduces the graph bit for bit.

#include <sstream>
#include <string>
#include <vector>

#include "relopt/multigraph.hpp"

namespace relopt {

inline Multigraph parse_graph(std::istream& in) {
  std::string line;
  std::vector<std::string> data;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    data.push_back(line);
  }
  if (data.empty()) throw ParseError("graph text: missing header line");
  std::istringstream head(data[0]);
  long long n = 0, m = 0;
  if (!(head >> n >> m)) throw ParseError("graph text: header must be 'n m'");
  std::string extra;
  if (head >> extra) throw ParseError("graph text: trailing tokens in header");
  if (n < 1 || m < 0) throw ParseError("graph text: bad n or m");
  if (static_cast<long long>(data.size()) - 1 != m)
    throw ParseError("graph text: expected exactly m edge lines");
  std::vector<std::pair<int, int>> edges;
  for (long long i = 1; i <= m; ++i) {
    std::istringstream es(data[i]);
    long long u, v;
    if (!(es >> u >> v)) throw ParseError("graph text: edge line must be 'u v'");
    if (es >> extra) throw ParseError("graph text: trailing tokens in edge line");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("graph text: endpoint out of range");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return Multigraph(static_cast<int>(n), edges);
}

inline Multigraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline std::string write_graph(const Multigraph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m() << '\n';
  for (int id = 0; id < g.m(); ++id)
    out << g.edge(id).u << ' ' << g.edge(id).v << '\n';
  return out.str();
}

inline std::string to_dot(const Multigraph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int v = 0; v < g.n(); ++v) out << "  " << v << ";\n";
  for (int id = 0; id < g.m(); ++id)
    out << "  " << g.edge(id).u << " -- " << g.edge(id).v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace relopt
