#pragma once

// Chains, distillations and weighted distillations.
//
// A chain is a maximal path whose interior vertices are loop-free 2-vertices.
// Suppressing every 2-vertex of a connected non-cycle graph leaves its proper
// distillation; recording the chain lengths as edge weights makes the
// operation reversible.  A weighted distillation with zero weights describes
// a weak subdivision: zero-weight edges are contracted instead of subdivided.
//
// The second half of the file carries the balanced-weighting bookkeeping for
// cubic distillations: base length q, centered and standard remainders,
// per-vertex and per-edge deviation counts, and the polynomial tables that
// turn those counts into 3-bond and 4-bond totals.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relopt/canonical.hpp"
#include "relopt/connectivity.hpp"
#include "relopt/errors.hpp"
#include "relopt/graph_io.hpp"
#include "relopt/multigraph.hpp"
#include "relopt/numbers.hpp"
#include "relopt/reliability.hpp"

namespace relopt {

// ---------------------------------------------------------------------------
// Chain decomposition.

struct Chain {
  std::vector<int> edges;  // in walk order from a to b
  int a = 0;               // endpoints; a == b for loops and closed chains
  int b = 0;
  // Set when the whole graph is one cycle and has no branch vertex at all.
  bool is_cycle = false;

  int length() const { return static_cast<int>(edges.size()); }
};

struct ChainDecomposition {
  std::vector<Chain> chains;
  std::vector<int> chain_of_edge;  // edge id -> index into chains
};

// Every edge lands in exactly one chain. Interior chain vertices are
// loop-free 2-vertices; chain endpoints are branch vertices (degree != 2),
// except in the pure-cycle case where there is no branch vertex.
inline ChainDecomposition chain_decomposition(const Multigraph& g) {
  if (!is_connected(g)) throw Error("chain_decomposition: graph is disconnected");
  ChainDecomposition out;
  out.chain_of_edge.assign(g.m(), -1);

  bool all_two = true;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) != 2) all_two = false;
  if (all_two) {
    // The whole graph is a cycle (a single loop and the 2-dipole included).
    Chain c;
    c.a = c.b = 0;
    c.is_cycle = true;
    if (g.m() == 1) {
      c.edges = {0};
    } else {
      int cur = 0, prev_edge = -1;
      for (int step = 0; step < g.m(); ++step) {
        std::vector<int> inc = g.incident_edges(cur);
        int next = (inc[0] != prev_edge) ? inc[0] : inc[1];
        c.edges.push_back(next);
        const Edge& e = g.edge(next);
        cur = (e.u == cur) ? e.v : e.u;
        prev_edge = next;
      }
    }
    for (int id : c.edges) out.chain_of_edge[id] = 0;
    out.chains.push_back(std::move(c));
    return out;
  }

  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) == 2) continue;  // branch vertices only
    for (int id : g.loop_ids(v)) {
      out.chain_of_edge[id] = static_cast<int>(out.chains.size());
      out.chains.push_back({{id}, v, v, false});
    }
    for (int id : g.incident_edges(v)) {
      if (out.chain_of_edge[id] != -1) continue;
      Chain c;
      c.a = v;
      int cur = v, walk = id;
      for (;;) {
        c.edges.push_back(walk);
        out.chain_of_edge[walk] = static_cast<int>(out.chains.size());
        const Edge& e = g.edge(walk);
        cur = (e.u == cur) ? e.v : e.u;
        if (g.degree(cur) != 2) break;
        std::vector<int> inc = g.incident_edges(cur);
        walk = (inc[0] != walk) ? inc[0] : inc[1];
      }
      c.b = cur;
      out.chains.push_back(std::move(c));
    }
  }
  for (int id = 0; id < g.m(); ++id)
    if (out.chain_of_edge[id] == -1)
      throw Error("chain_decomposition: edge missed by every walk");
  return out;
}

// ---------------------------------------------------------------------------
// Weighted distillations.

struct WeightedDistillation {
  Multigraph d;                // no 2-vertices
  std::vector<long long> w;    // weight per edge id; loops need w >= 1

  long long total_weight() const {
    long long s = 0;
    for (long long x : w) s += x;
    return s;
  }
};

// Shared precondition check: connected distillation, weights nonnegative,
// loops positive, and no cycle made entirely of zero-weight edges.
inline void validate_weighted_distillation(const WeightedDistillation& wd) {
  const Multigraph& d = wd.d;
  if (static_cast<int>(wd.w.size()) != d.m())
    throw Error("weighted distillation: weight count differs from edge count");
  if (!is_connected(d)) throw Error("weighted distillation: graph is disconnected");
  for (int v = 0; v < d.n(); ++v)
    if (d.degree(v) == 2)
      throw Error("weighted distillation: graph has a 2-vertex");
  UnionFind uf(d.n());
  for (int id = 0; id < d.m(); ++id) {
    long long w = wd.w[id];
    if (w < 0) throw Error("weighted distillation: negative weight");
    if (d.is_loop(id)) {
      if (w == 0) throw Error("weighted distillation: zero weight on a loop");
      continue;
    }
    if (w == 0 && !uf.unite(d.edge(id).u, d.edge(id).v))
      throw Error("weighted distillation: zero-weight cycle");
  }
}

// Text form: the graph block followed by one line "weights w0 w1 ... w_{m-1}".
inline WeightedDistillation parse_weighted_distillation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> data;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    data.push_back(line);
  }
  if (data.empty()) throw ParseError("weighted distillation: empty input");
  std::string wline = data.back();
  data.pop_back();
  std::ostringstream block;
  for (const std::string& l : data) block << l << '\n';
  WeightedDistillation wd;
  wd.d = parse_graph(block.str());
  std::istringstream ws(wline);
  std::string tag;
  if (!(ws >> tag) || tag != "weights")
    throw ParseError("weighted distillation: last line must start with 'weights'");
  long long w;
  while (ws >> w) wd.w.push_back(w);
  if (!ws.eof()) throw ParseError("weighted distillation: bad weight token");
  if (static_cast<int>(wd.w.size()) != wd.d.m())
    throw ParseError("weighted distillation: expected one weight per edge");
  validate_weighted_distillation(wd);
  return wd;
}

inline std::string write_weighted_distillation(const WeightedDistillation& wd) {
  std::ostringstream out;
  out << write_graph(wd.d) << "weights";
  for (long long w : wd.w) out << ' ' << w;
  out << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Proper distillation and realization.

struct ProperDistillation {
  WeightedDistillation wd;       // edge i of wd.d <-> chains.chains[i]
  ChainDecomposition chains;
  std::vector<int> branch_vertices;  // wd.d vertex -> original vertex
};

inline ProperDistillation proper_distillation(const Multigraph& g) {
  ProperDistillation out;
  out.chains = chain_decomposition(g);
  if (out.chains.chains.size() == 1 && out.chains.chains[0].is_cycle)
    throw Error("proper_distillation: a cycle has no branch vertex to keep");
  std::vector<int> index(g.n(), -1);
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) == 2) continue;
    index[v] = static_cast<int>(out.branch_vertices.size());
    out.branch_vertices.push_back(v);
  }
  std::vector<std::pair<int, int>> edges;
  for (const Chain& c : out.chains.chains) {
    edges.push_back({index[c.a], index[c.b]});
    out.wd.w.push_back(c.length());
  }
  out.wd.d = Multigraph(static_cast<int>(out.branch_vertices.size()), edges);
  return out;
}

// Contract the zero-weight edges, then subdivide edge i into a chain of
// w[i] edges. The exceedance of the result equals that of the distillation.
inline Multigraph realize_weak_subdivision(const WeightedDistillation& wd) {
  validate_weighted_distillation(wd);
  Multigraph g = wd.d;
  std::vector<int> cur(g.m());
  for (int i = 0; i < g.m(); ++i) cur[i] = i;
  for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
    if (wd.w[i] != 0) continue;
    auto [h, map] = contract_edge(g, cur[i]);
    g = std::move(h);
    for (int j = 0; j < static_cast<int>(cur.size()); ++j)
      if (cur[j] >= 0) cur[j] = map.to_new[cur[j]];
  }
  for (int i = 0; i < static_cast<int>(cur.size()); ++i)
    for (long long extra = wd.w[i] - 1; extra > 0; --extra)
      g = insert_vertex(g, cur[i]);
  return g;
}

// ---------------------------------------------------------------------------
// Cubic weak distillations.

struct CubicDistillation {
  Multigraph graph;    // cubic and 3-edge-connected
  Multigraph proper;   // starting point of the expansion sequence
  std::vector<VertexExpansion> steps;  // applied to proper in order
};

namespace detail {

inline bool three_edge_connected(const Multigraph& g) {
  auto lambda = edge_connectivity(g);
  return lambda.has_value() && *lambda >= 3;
}

// Candidate expansions at u whose first copy receives exactly two of the old
// incidences: two plain edges, a plain edge plus a loop end, two loop ends,
// or one whole loop.
inline std::vector<VertexExpansion> two_incidence_splits(const Multigraph& g,
                                                         int u) {
  std::vector<int> nl = g.incident_edges(u);
  std::vector<int> loops = g.loop_ids(u);
  std::vector<VertexExpansion> out;
  auto base = [&](std::vector<int> first) {
    VertexExpansion ex;
    ex.vertex = u;
    ex.first_side = std::move(first);
    for (int id : loops) ex.loops.push_back({id, LoopSplit::kSecond});
    return ex;
  };
  for (size_t i = 0; i < nl.size(); ++i)
    for (size_t j = i + 1; j < nl.size(); ++j)
      out.push_back(base({nl[i], nl[j]}));
  for (int e : nl)
    for (size_t li = 0; li < loops.size(); ++li) {
      VertexExpansion ex = base({e});
      ex.loops[li].second = LoopSplit::kAcross;
      out.push_back(std::move(ex));
    }
  for (size_t li = 0; li < loops.size(); ++li)
    for (size_t lj = li + 1; lj < loops.size(); ++lj) {
      VertexExpansion ex = base({});
      ex.loops[li].second = LoopSplit::kAcross;
      ex.loops[lj].second = LoopSplit::kAcross;
      out.push_back(std::move(ex));
    }
  for (size_t li = 0; li < loops.size(); ++li) {
    VertexExpansion ex = base({});
    ex.loops[li].second = LoopSplit::kFirst;
    out.push_back(std::move(ex));
  }
  return out;
}

// Every split of the incidences at u that leaves both copies with degree
// at least 3. Fallback for the rare shapes the two-incidence pass misses.
inline std::vector<VertexExpansion> all_interior_splits(const Multigraph& g,
                                                        int u) {
  std::vector<int> nl = g.incident_edges(u);
  std::vector<int> loops = g.loop_ids(u);
  const int nn = static_cast<int>(nl.size());
  const int ln = static_cast<int>(loops.size());
  if (nn > 20 || ln > 12)
    throw BudgetError("vertex expansion: too many incidences to enumerate");
  std::vector<VertexExpansion> out;
  std::vector<int> assign(ln, 0);
  for (std::uint32_t mask = 0; mask < (1u << nn); ++mask) {
    std::fill(assign.begin(), assign.end(), 0);
    for (;;) {
      int d1 = 1, d2 = 1;
      for (int i = 0; i < nn; ++i) ((mask >> i) & 1 ? d1 : d2) += 1;
      for (int i = 0; i < ln; ++i) {
        if (assign[i] == 0) d2 += 2;
        if (assign[i] == 1) d1 += 2;
        if (assign[i] == 2) d1 += 1, d2 += 1;
      }
      if (d1 >= 3 && d2 >= 3) {
        VertexExpansion ex;
        ex.vertex = u;
        for (int i = 0; i < nn; ++i)
          if ((mask >> i) & 1) ex.first_side.push_back(nl[i]);
        for (int i = 0; i < ln; ++i)
          ex.loops.push_back({loops[i], assign[i] == 0 ? LoopSplit::kSecond
                                        : assign[i] == 1 ? LoopSplit::kFirst
                                                         : LoopSplit::kAcross});
        out.push_back(std::move(ex));
      }
      int pos = 0;
      while (pos < ln && assign[pos] == 2) assign[pos++] = 0;
      if (pos == ln) break;
      ++assign[pos];
    }
  }
  return out;
}

}  // namespace detail

// Reduce a 3-edge-connected distillation to a cubic one by repeated vertex
// expansions that each keep 3-edge-connectedness. Requires a bridgeless
// input of positive exceedance whose 2-bonds all lie within single chains.
inline CubicDistillation cubic_weak_distillation(const Multigraph& g) {
  if (!is_connected(g)) throw Error("cubic_weak_distillation: graph is disconnected");
  if (g.exceedance() < 1)
    throw Error("cubic_weak_distillation: exceedance must be at least 1");
  if (!find_bridges(g).empty())
    throw Error("cubic_weak_distillation: graph has a bridge");
  CubicDistillation out;
  out.proper = proper_distillation(g).wd.d;
  if (out.proper.n() > 1 && !detail::three_edge_connected(out.proper))
    throw Error(
        "cubic_weak_distillation: nontrivial 2-bond present; "
        "use to_3ec_representative first");
  Multigraph d = out.proper;
  for (;;) {
    int u = -1;
    for (int v = 0; v < d.n(); ++v)
      if (d.degree(v) >= 4 && (u == -1 || d.degree(v) > d.degree(u))) u = v;
    if (u == -1) break;
    bool done = false;
    for (int pass = 0; pass < 2 && !done; ++pass) {
      auto splits = pass == 0 ? detail::two_incidence_splits(d, u)
                              : detail::all_interior_splits(d, u);
      for (const VertexExpansion& ex : splits) {
        auto [next, joining] = expand_at_vertex(d, ex);
        (void)joining;
        if (!detail::three_edge_connected(next)) continue;
        d = std::move(next);
        out.steps.push_back(ex);
        done = true;
        break;
      }
    }
    if (!done)
      throw Error("cubic_weak_distillation: no expansion keeps 3-edge-connectedness");
  }
  out.graph = std::move(d);
  return out;
}

// ---------------------------------------------------------------------------
// The catalogs of 3-edge-connected cubic graphs by exceedance.

struct DkCatalog {
  std::vector<Multigraph> members;
  // The k=5 entry lists only the Petersen graph; the census has 14 members.
  bool complete = true;
};

inline Multigraph dipole(int mult) {
  std::vector<std::pair<int, int>> e(mult, {0, 1});
  return Multigraph(2, e);
}

inline Multigraph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  return Multigraph(n, e);
}

// Two triangles 012 and 345 joined by the rungs (i, i+3).
inline Multigraph prism_graph() {
  return Multigraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5},
                        {0, 3}, {1, 4}, {2, 5}});
}

// Parts {0,1,2} and {3,4,5}; edges grouped by left endpoint.
inline Multigraph k33_graph() {
  return Multigraph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                        {2, 3}, {2, 4}, {2, 5}});
}

// Two squares 0123 and 4567 joined by the rungs (i, i+4).
inline Multigraph cube_graph() {
  return Multigraph(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6},
                        {6, 7}, {4, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
}

// The 8-cycle 01234567 with the four diagonals (i, i+4). Edge ids 0..7 are
// the cycle ("rails"), 8..11 the diagonals ("rungs").
inline Multigraph wagner_graph() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 8; ++i) e.push_back({i, (i + 1) % 8});
  for (int i = 0; i < 4; ++i) e.push_back({i, i + 4});
  return Multigraph(8, e);
}

// Outer 5-cycle 01234, spokes (i, i+5), inner pentagram on 56789.
inline Multigraph petersen_graph() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});
  for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});
  for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5});
  return Multigraph(10, e);
}

inline DkCatalog catalog_Dk(int k) {
  DkCatalog cat;
  switch (k) {
    case 1:
      cat.members = {dipole(3)};
      break;
    case 2:
      cat.members = {complete_graph(4)};
      break;
    case 3:
      cat.members = {prism_graph(), k33_graph()};
      break;
    case 4:
      cat.members = {
          cube_graph(), wagner_graph(),
          Multigraph(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 5},
                         {3, 6}, {3, 7}, {4, 6}, {4, 7}, {5, 6}, {5, 7}}),
          Multigraph(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 5},
                         {3, 4}, {3, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}})};
      break;
    case 5:
      cat.members = {petersen_graph()};
      cat.complete = false;
      break;
    default:
      throw Error("catalog_Dk: exceedance must be between 1 and 5");
  }
  return cat;
}

// ---------------------------------------------------------------------------
// Bond counts straight from the weights.

// b_s of the realized subdivision: for each s-bond of the distillation the
// product of its weights, plus for s = 2 the within-chain pairs of every
// chain that is not a bridge chain.
inline Int bond_count_from_weights(const WeightedDistillation& wd, int s) {
  validate_weighted_distillation(wd);
  if (s < 1) throw Error("bond_count_from_weights: bond size must be positive");
  BondOptions opts;
  opts.want_split = false;
  BondCatalog cat = bond_catalog(wd.d, opts);
  Int total = 0;
  if (s < static_cast<int>(cat.by_size.size())) {
    for (const Bond& bd : cat.by_size[s]) {
      Int prod = 1;
      for (int id : bd.edges) prod *= wd.w[id];
      total += prod;
    }
  }
  if (s == 2) {
    std::vector<bool> bridge(wd.d.m(), false);
    for (int id : find_bridges(wd.d)) bridge[id] = true;
    for (int id = 0; id < wd.d.m(); ++id)
      if (!bridge[id]) total += binomial(wd.w[id], 2);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Balanced weightings of cubic distillations.

struct BalanceStats {
  int k = 0;        // exceedance; a cubic distillation has 3k edges
  long long m = 0;  // total weight
  // Centered division m = 3kq + r with -3k/2 < r <= 3k/2: at least half of
  // the edges carry the base weight q.
  long long q = 0;
  long long r = 0;
  // Standard division m = 3k q_std + r_std with 0 <= r_std < 3k.
  long long q_std = 0;
  long long r_std = 0;
  bool balanced = false;       // max weight - min weight <= 1
  bool pi_v_balanced = false;  // max pairwise difference of pi_v <= 1
  // Signed deviation counts; filled only for balanced weightings. pi_e needs
  // a simple graph and stays empty for the 3-dipole.
  std::vector<int> pi_v;
  std::vector<int> pi_e;
};

inline BalanceStats balance_stats(const WeightedDistillation& wd) {
  validate_weighted_distillation(wd);
  const Multigraph& d = wd.d;
  for (int v = 0; v < d.n(); ++v)
    if (d.degree(v) != 3) throw Error("balance_stats: distillation is not cubic");
  BalanceStats st;
  st.k = d.exceedance();
  st.m = wd.total_weight();
  const long long span = 3ll * st.k;
  st.q_std = st.m / span;
  st.r_std = st.m % span;
  if (2 * st.r_std <= span) {
    st.q = st.q_std;
    st.r = st.r_std;
  } else {
    st.q = st.q_std + 1;
    st.r = st.r_std - span;
  }
  long long lo = *std::min_element(wd.w.begin(), wd.w.end());
  long long hi = *std::max_element(wd.w.begin(), wd.w.end());
  st.balanced = hi - lo <= 1;
  if (!st.balanced) return st;

  auto dev = [&](int id) {
    long long w = wd.w[id];
    return w > st.q ? 1 : (w < st.q ? -1 : 0);
  };
  st.pi_v.assign(d.n(), 0);
  for (int id = 0; id < d.m(); ++id) {
    st.pi_v[d.edge(id).u] += dev(id);
    st.pi_v[d.edge(id).v] += dev(id);
  }
  auto [vlo, vhi] = std::minmax_element(st.pi_v.begin(), st.pi_v.end());
  st.pi_v_balanced = *vhi - *vlo <= 1;

  bool simple = true;
  for (int i = 0; i < d.m() && simple; ++i) {
    if (d.is_loop(i)) simple = false;
    for (int j = i + 1; j < d.m(); ++j)
      if (d.edge(i) == d.edge(j)) simple = false;
  }
  if (simple) {
    st.pi_e.assign(d.m(), 0);
    for (int i = 0; i < d.m(); ++i)
      for (int j = 0; j < d.m(); ++j) {
        if (i == j) continue;
        const Edge &a = d.edge(i), &b = d.edge(j);
        if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
          st.pi_e[i] += dev(j);
      }
  }
  return st;
}

// Product of the weights incident to each vertex: the count of 3-bonds of
// the subdivision that isolate that vertex (one edge from each chain).
inline std::vector<Int> b3_vertex_products(const WeightedDistillation& wd) {
  validate_weighted_distillation(wd);
  std::vector<Int> out(wd.d.n(), 1);
  for (int id = 0; id < wd.d.m(); ++id) {
    out[wd.d.edge(id).u] *= wd.w[id];
    if (!wd.d.is_loop(id)) out[wd.d.edge(id).v] *= wd.w[id];
  }
  return out;
}

// Product of the weights of the four edges adjacent to each edge of a simple
// cubic distillation: the count of 4-bonds isolating that edge's chain.
inline std::vector<Int> b4_edge_products(const WeightedDistillation& wd) {
  validate_weighted_distillation(wd);
  const Multigraph& d = wd.d;
  for (int v = 0; v < d.n(); ++v)
    if (d.degree(v) != 3)
      throw Error("b4_edge_products: distillation is not cubic");
  std::vector<Int> out(d.m(), 1);
  for (int i = 0; i < d.m(); ++i) {
    if (d.is_loop(i)) throw Error("b4_edge_products: graph has a loop");
    int count = 0;
    for (int j = 0; j < d.m(); ++j) {
      if (i == j) continue;
      const Edge &a = d.edge(i), &b = d.edge(j);
      if (a == b) throw Error("b4_edge_products: graph has parallel edges");
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
        out[i] *= wd.w[j];
        ++count;
      }
    }
    if (count != 4)
      throw Error("b4_edge_products: edge without four distinct neighbors");
  }
  return out;
}

// Comparison kernels for balanced weightings: the low-order part of the
// per-vertex or per-edge bond count, as a function of the deviation count.
// The sign convention follows the deviation direction, which in a balanced
// weighting matches the sign of the centered remainder.

inline Int phi3(int pi, const Int& q) {
  switch (pi < 0 ? -pi : pi) {
    case 0:
    case 1:
      return 0;
    case 2:
      return q;
    case 3:
      return 3 * q + (pi > 0 ? 1 : -1);
    default:
      throw Error("phi3: deviation count out of range");
  }
}

inline Int phi43(int pi, const Int& q, long long r) {
  const int sgn = pi > 0 ? 1 : -1;
  switch (pi < 0 ? -pi : pi) {
    case 0:
    case 1:
      return 0;
    case 2:
      return 4 * q * q + (r - 2 * sgn) * q;
    case 3:
      return 12 * q * q + (3 * r - 3 * sgn) * q + ((r < 0 ? -r : r) - 3);
    default:
      throw Error("phi43: deviation count out of range");
  }
}

inline Int phi44(int pi, const Int& q) {
  const int sgn = pi > 0 ? 1 : -1;
  switch (pi < 0 ? -pi : pi) {
    case 0:
    case 1:
      return 0;
    case 2:
      return q * q;
    case 3:
      return 3 * q * q + sgn * q;
    case 4:
      return 6 * q * q + 4 * sgn * q + 1;
    default:
      throw Error("phi44: deviation count out of range");
  }
}

// The graph-dependent part of the 4-disconnection count over balanced
// weightings of K_{3,3}: vertex kernels plus edge kernels. Two weightings
// with the same total weight differ in d_4 exactly by their difference here.
inline Int Phi4(const WeightedDistillation& wd) {
  if (!is_isomorphic(wd.d, k33_graph()))
    throw Error("Phi4: distillation must be the complete bipartite cubic graph");
  BalanceStats st = balance_stats(wd);
  if (!st.balanced) throw Error("Phi4: weighting is imbalanced");
  Int q = st.q;
  Int total = 0;
  for (int v = 0; v < wd.d.n(); ++v) total += phi43(st.pi_v[v], q, st.r);
  for (int e = 0; e < wd.d.m(); ++e) total += phi44(st.pi_e[e], q);
  return total;
}

// d_2 of every balanced weak subdivision with total weight m of any cubic
// 3-edge-connected distillation of exceedance k: within-chain pairs under
// the standard division m = 3kq + r.
inline Int d2_balanced_formula(long long k, long long m) {
  if (k < 1) throw Error("d2_balanced_formula: exceedance must be positive");
  if (m < 0) throw Error("d2_balanced_formula: negative total weight");
  const long long span = 3 * k;
  const long long q = m / span, r = m % span;
  return (span - r) * binomial(q, 2) + r * binomial(q + 1, 2);
}

// ---------------------------------------------------------------------------
// Enumeration of weak distillations.

// Breadth-first closure of the proper distillation under vertex expansions
// that keep every degree off 2 (leaves are fine; they just can never lead
// back to a leafless graph). Expansions only add vertices, so the cap makes
// the state space finite; canonical forms deduplicate it.
inline std::vector<Multigraph> enumerate_weak_distillations(
    const Multigraph& g, int max_vertices = 10, int state_budget = 100000) {
  if (max_vertices > kCanonicalVertexCap)
    throw BudgetError("enumerate_weak_distillations: vertex cap too large");
  ProperDistillation pd = proper_distillation(g);
  if (pd.wd.d.n() > max_vertices)
    throw BudgetError(
        "enumerate_weak_distillations: proper distillation exceeds the cap");
  std::map<std::string, Multigraph> seen;
  std::vector<Multigraph> queue;
  Multigraph start = canonical_graph(pd.wd.d);
  seen.insert({canonical_form(start), start});
  queue.push_back(start);
  while (!queue.empty()) {
    Multigraph cur = std::move(queue.back());
    queue.pop_back();
    if (cur.n() + 1 > max_vertices) continue;
    for (int u = 0; u < cur.n(); ++u) {
      std::vector<int> nl = cur.incident_edges(u);
      std::vector<int> loops = cur.loop_ids(u);
      const int nn = static_cast<int>(nl.size());
      const int ln = static_cast<int>(loops.size());
      if (nn > 20 || ln > 12)
        throw BudgetError("enumerate_weak_distillations: vertex degree too large");
      std::vector<int> assign(ln, 0);
      for (std::uint32_t mask = 0; mask < (1u << nn); ++mask) {
        std::fill(assign.begin(), assign.end(), 0);
        for (;;) {
          int d1 = 1, d2 = 1;
          for (int i = 0; i < nn; ++i) ((mask >> i) & 1 ? d1 : d2) += 1;
          for (int i = 0; i < ln; ++i) {
            if (assign[i] == 0) d2 += 2;
            if (assign[i] == 1) d1 += 2;
            if (assign[i] == 2) d1 += 1, d2 += 1;
          }
          if (d1 != 2 && d2 != 2) {
            VertexExpansion ex;
            ex.vertex = u;
            for (int i = 0; i < nn; ++i)
              if ((mask >> i) & 1) ex.first_side.push_back(nl[i]);
            for (int i = 0; i < ln; ++i)
              ex.loops.push_back({loops[i], assign[i] == 0 ? LoopSplit::kSecond
                                           : assign[i] == 1 ? LoopSplit::kFirst
                                                            : LoopSplit::kAcross});
            Multigraph next = expand_at_vertex(cur, ex).first;
            Multigraph canon = canonical_graph(next);
            std::string key = canonical_form(canon);
            if (!seen.contains(key)) {
              if (static_cast<int>(seen.size()) >= state_budget)
                throw BudgetError("enumerate_weak_distillations: state budget");
              seen.insert({key, canon});
              queue.push_back(std::move(canon));
            }
          }
          int pos = 0;
          while (pos < ln && assign[pos] == 2) assign[pos++] = 0;
          if (pos == ln) break;
          ++assign[pos];
        }
      }
    }
  }
  std::vector<Multigraph> out;
  for (auto& [key, graph] : seen) out.push_back(graph);
  std::sort(out.begin(), out.end(), [](const Multigraph& a, const Multigraph& b) {
    if (a.n() != b.n()) return a.n() < b.n();
    return canonical_form(a) < canonical_form(b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Search harness for the 3-bond triviality gap.

// Scans candidates for a graph where "all 2-bonds and 3-bonds are trivial"
// disagrees with "some 3-edge-connected cubic weak distillation has only
// trivial 3-bonds". No such graph is known; a non-null return would be
// remarkable and deserves independent verification. Candidates outside the
// decidable range (exceedance not in [2..4], bridged, disconnected) and
// candidates whose enumeration blows a budget are skipped, not decided.
inline std::optional<Multigraph> search_3bond_distillation_gap(
    const std::vector<Multigraph>& candidates) {
  for (const Multigraph& g : candidates) {
    const int k = g.exceedance();
    if (k < 2 || k > 4) continue;
    if (!is_connected(g)) continue;
    if (!find_bridges(g).empty()) continue;
    try {
      BondOptions opts;
      opts.want_split = false;
      BondCatalog cat = bond_catalog(g, opts);
      const bool two_trivial = cat.b_nontrivial.size() < 3 || cat.b_nontrivial[2] == 0;
      const bool three_trivial =
          cat.b_nontrivial.size() < 4 || cat.b_nontrivial[3] == 0;
      const bool rhs = two_trivial && three_trivial;
      bool lhs = false;
      if (two_trivial) {
        for (const Multigraph& d : enumerate_weak_distillations(g, 2 * k)) {
          bool cubic = true;
          for (int v = 0; v < d.n(); ++v)
            if (d.degree(v) != 3) cubic = false;
          if (!cubic || !detail::three_edge_connected(d)) continue;
          BondCatalog dc = bond_catalog(d, opts);
          if (dc.b_nontrivial.size() < 4 || dc.b_nontrivial[3] == 0) {
            lhs = true;
            break;
          }
        }
      }
      if (lhs != rhs) return g;
    } catch (const BudgetError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace relopt
