#pragma once

// Loop-aware multigraph with dense vertex and edge ids.
//
// Vertices are 0..n-1. Edges are an ordered list of endpoint pairs stored with
// u <= v; the list position is the edge id. Parallel edges and loops are both
// allowed. A loop contributes 2 to the degree of its vertex.
//
// All editing operations are pure: they return fresh graphs (and, where ids
// can move, an EdgeMapping from old ids to new ones).

#include <algorithm>
#include <utility>
#include <vector>

#include "relopt/errors.hpp"

namespace relopt {

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Multigraph {
 public:
  Multigraph() = default;

  Multigraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 1) throw ParseError("multigraph needs at least one vertex");
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw ParseError("edge endpoint out of range");
      if (u > v) std::swap(u, v);
      edges_.push_back({u, v});
    }
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  int exceedance() const { return m() - n(); }

  const Edge& edge(int id) const { return edges_.at(id); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool is_loop(int id) const { return edges_.at(id).u == edges_.at(id).v; }

  int degree(int v) const {
    int d = 0;
    for (const Edge& e : edges_) {
      if (e.u == v) ++d;
      if (e.v == v) ++d;
    }
    return d;
  }

  int loop_count(int v) const {
    int c = 0;
    for (const Edge& e : edges_)
      if (e.u == v && e.v == v) ++c;
    return c;
  }

  // ids of non-loop edges with one endpoint at v, ascending
  std::vector<int> incident_edges(int v) const {
    std::vector<int> out;
    for (int id = 0; id < m(); ++id) {
      const Edge& e = edges_[id];
      if (e.u == e.v) continue;
      if (e.u == v || e.v == v) out.push_back(id);
    }
    return out;
  }

  std::vector<int> loop_ids(int v) const {
    std::vector<int> out;
    for (int id = 0; id < m(); ++id)
      if (edges_[id].u == v && edges_[id].v == v) out.push_back(id);
    return out;
  }

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  int n_ = 1;
  std::vector<Edge> edges_;
};

struct EdgeMapping {
  static constexpr int kDeleted = -1;  // edge removed
  static constexpr int kMerged = -2;   // edge consumed by a contraction
  std::vector<int> to_new;             // indexed by old edge id

  int operator[](int old_id) const { return to_new.at(old_id); }
};

inline std::pair<Multigraph, EdgeMapping> delete_edges(
    const Multigraph& g, const std::vector<int>& ids) {
  std::vector<bool> drop(g.m(), false);
  for (int id : ids) {
    if (id < 0 || id >= g.m()) throw ParseError("delete_edges: bad edge id");
    drop[id] = true;
  }
  EdgeMapping map;
  map.to_new.assign(g.m(), EdgeMapping::kDeleted);
  std::vector<std::pair<int, int>> kept;
  for (int id = 0; id < g.m(); ++id) {
    if (drop[id]) continue;
    map.to_new[id] = static_cast<int>(kept.size());
    kept.push_back({g.edge(id).u, g.edge(id).v});
  }
  return {Multigraph(g.n(), kept), map};
}

// Contract a non-loop edge: its endpoints merge into the smaller index, any
// parallel copies become loops there, and vertex ids above the removed
// endpoint shift down by one.
inline std::pair<Multigraph, EdgeMapping> contract_edge(const Multigraph& g,
                                                        int id) {
  if (id < 0 || id >= g.m()) throw ParseError("contract_edge: bad edge id");
  if (g.is_loop(id)) throw ParseError("contract_edge: loops are not contractible");
  const int a = g.edge(id).u;  // a < b
  const int b = g.edge(id).v;
  auto relabel = [&](int x) {
    if (x == b) x = a;
    return x > b ? x - 1 : x;
  };
  EdgeMapping map;
  map.to_new.assign(g.m(), EdgeMapping::kMerged);
  std::vector<std::pair<int, int>> kept;
  for (int i = 0; i < g.m(); ++i) {
    if (i == id) continue;
    map.to_new[i] = static_cast<int>(kept.size());
    kept.push_back({relabel(g.edge(i).u), relabel(g.edge(i).v)});
  }
  return {Multigraph(g.n() - 1, kept), map};
}

// How a loop at an expanded vertex is distributed over the two copies.
enum class LoopSplit {
  kFirst,   // stays a loop at the first copy
  kSecond,  // becomes a loop at the second copy
  kAcross,  // becomes an ordinary edge between the copies
};

struct VertexExpansion {
  int vertex = 0;
  std::vector<int> first_side;  // non-loop incident edge ids kept at the first copy
  std::vector<std::pair<int, LoopSplit>> loops;  // one entry per loop at vertex
};

// Replace a vertex by two adjacent copies. The first copy keeps the old
// index, the second gets index n, and the fresh joining edge gets id m.
// Edge ids of existing edges are unchanged.
inline std::pair<Multigraph, int> expand_at_vertex(const Multigraph& g,
                                                   const VertexExpansion& ex) {
  const int v = ex.vertex;
  if (v < 0 || v >= g.n()) throw ParseError("expand_at_vertex: bad vertex");
  std::vector<int> incident = g.incident_edges(v);
  std::vector<bool> to_first(g.m(), false);
  for (int id : ex.first_side) {
    if (std::find(incident.begin(), incident.end(), id) == incident.end())
      throw ParseError("expand_at_vertex: first_side id not incident");
    if (to_first[id]) throw ParseError("expand_at_vertex: duplicate id");
    to_first[id] = true;
  }
  std::vector<int> loops = g.loop_ids(v);
  std::vector<LoopSplit> split(g.m(), LoopSplit::kFirst);
  std::vector<bool> seen(g.m(), false);
  for (auto [id, s] : ex.loops) {
    if (std::find(loops.begin(), loops.end(), id) == loops.end())
      throw ParseError("expand_at_vertex: loop id not at vertex");
    if (seen[id]) throw ParseError("expand_at_vertex: duplicate loop id");
    seen[id] = true;
    split[id] = s;
  }
  for (int id : loops)
    if (!seen[id]) throw ParseError("expand_at_vertex: loop disposition missing");

  const int v2 = g.n();
  std::vector<std::pair<int, int>> out;
  out.reserve(g.m() + 1);
  for (int id = 0; id < g.m(); ++id) {
    const Edge& e = g.edge(id);
    if (e.u == v && e.v == v) {
      switch (split[id]) {
        case LoopSplit::kFirst: out.push_back({v, v}); break;
        case LoopSplit::kSecond: out.push_back({v2, v2}); break;
        case LoopSplit::kAcross: out.push_back({v, v2}); break;
      }
    } else if (e.u == v || e.v == v) {
      int other = (e.u == v) ? e.v : e.u;
      out.push_back(to_first[id] ? std::pair{v, other} : std::pair{v2, other});
    } else {
      out.push_back({e.u, e.v});
    }
  }
  out.push_back({v, v2});
  return {Multigraph(g.n() + 1, out), static_cast<int>(out.size()) - 1};
}

// Subdivide an edge: (u,v) becomes (u,w),(w,v) with w = n. The first half
// keeps the old id, the second half gets id m. A loop subdivides into a
// parallel pair at {u, w}.
inline Multigraph insert_vertex(const Multigraph& g, int edge_id) {
  if (edge_id < 0 || edge_id >= g.m()) throw ParseError("insert_vertex: bad edge id");
  const int w = g.n();
  std::vector<std::pair<int, int>> out;
  out.reserve(g.m() + 1);
  for (int id = 0; id < g.m(); ++id) {
    const Edge& e = g.edge(id);
    if (id == edge_id)
      out.push_back({e.u, w});
    else
      out.push_back({e.u, e.v});
  }
  out.push_back({w, g.edge(edge_id).v});
  return Multigraph(g.n() + 1, out);
}

// Remove a loopless degree-2 vertex and join its two neighbors directly.
inline Multigraph suppress_vertex(const Multigraph& g, int v) {
  if (v < 0 || v >= g.n()) throw ParseError("suppress_vertex: bad vertex");
  if (g.loop_count(v) != 0 || g.degree(v) != 2)
    throw ParseError("suppress_vertex: vertex is not a loopless 2-vertex");
  std::vector<int> inc = g.incident_edges(v);
  int a = (g.edge(inc[0]).u == v) ? g.edge(inc[0]).v : g.edge(inc[0]).u;
  int b = (g.edge(inc[1]).u == v) ? g.edge(inc[1]).v : g.edge(inc[1]).u;
  auto relabel = [&](int x) { return x > v ? x - 1 : x; };
  std::vector<std::pair<int, int>> out;
  out.reserve(g.m() - 1);
  for (int id = 0; id < g.m(); ++id) {
    if (id == inc[0] || id == inc[1]) continue;
    out.push_back({relabel(g.edge(id).u), relabel(g.edge(id).v)});
  }
  out.push_back({relabel(a), relabel(b)});
  return Multigraph(g.n() - 1, out);
}

}  // namespace relopt
