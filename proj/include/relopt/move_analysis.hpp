#pragma once
// Edge-move accounting. Re-homing one edge of a chain onto another chain
// changes each disconnection count d_i by a signed tally of subsets that
// disconnect exactly one of the two graphs; every such subset contains the
// moved edge and exactly one bond of the side it disconnects. count_xij
// computes that tally by direct subset scan and serves as the oracle for
// the closed-form deltas below, which each carry a check switch that runs
// the scan before returning. All deltas are reported as
// d(original) - d(modified).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relopt/connectivity.hpp"
#include "relopt/distillation.hpp"
#include "relopt/errors.hpp"
#include "relopt/multigraph.hpp"
#include "relopt/numbers.hpp"
#include "relopt/reliability.hpp"

namespace relopt {

// ---------------------------------------------------------------------------
// Chain label tuples. Each tuple names the chain weights of one catalog
// distillate; the *_weights makers pin the names to fixed edge ids so the
// closed forms and the subset scans always talk about the same graphs.

// Complete graph on {0,1,2,3}: l1 = 01, l2 = 23, l3 = 02, l4 = 13, l5 = 03,
// l6 = 12. The chains l1 and l3 meet at vertex 0; the move takes an edge
// from l1 to l3.
struct K4Labels {
  long long l1 = 0, l2 = 0, l3 = 0, l4 = 0, l5 = 0, l6 = 0;

  long long total() const { return l1 + l2 + l3 + l4 + l5 + l6; }
};

// Triangular prism: left triangle rails l1 = vertices 0-2, l2 = 0-1,
// l3 = 1-2, right triangle rails r1 = 3-5, r2 = 3-4, r3 = 4-5, and rungs
// c1 = 0-3, c2 = 1-4, c3 = 2-5. Rail i of either side meets rail i+1 at
// the endpoint of rung c_i.
struct Pi3Labels {
  long long l1 = 0, l2 = 0, l3 = 0;
  long long r1 = 0, r2 = 0, r3 = 0;
  long long c1 = 0, c2 = 0, c3 = 0;

  long long delta(int i) const {
    switch (i) {
      case 1: return l1 - r1;
      case 2: return l2 - r2;
      case 3: return l3 - r3;
    }
    throw Error("Pi3Labels::delta: index out of range");
  }
  long long sigma(int i) const {
    switch (i) {
      case 1: return l1 + r1;
      case 2: return l2 + r2;
      case 3: return l3 + r3;
    }
    throw Error("Pi3Labels::sigma: index out of range");
  }
  long long total() const {
    return l1 + l2 + l3 + r1 + r2 + r3 + c1 + c2 + c3;
  }
};

// Complete bipartite graph on letters {0,1,2} and indices {3,4,5}:
// a_i = 0-(2+i), b_i = 1-(2+i), c_i = 2-(2+i). Three chains share a vertex
// exactly when they carry the same letter or the same index. The move
// takes an edge from a1 to b1, which meet at index vertex 3.
struct K33Labels {
  long long a1 = 0, a2 = 0, a3 = 0;
  long long b1 = 0, b2 = 0, b3 = 0;
  long long c1 = 0, c2 = 0, c3 = 0;

  long long delta(int i) const {
    switch (i) {
      case 1: return a1 - b1;
      case 2: return a2 - b2;
      case 3: return a3 - b3;
    }
    throw Error("K33Labels::delta: index out of range");
  }
  long long sigma(int i) const {
    switch (i) {
      case 1: return a1 + b1 + c1;
      case 2: return a2 + b2 + c2;
      case 3: return a3 + b3 + c3;
    }
    throw Error("K33Labels::sigma: index out of range");
  }
  long long total() const {
    return a1 + a2 + a3 + b1 + b2 + b3 + c1 + c2 + c3;
  }
};

inline WeightedDistillation k4_weights(const K4Labels& L) {
  // complete_graph(4) edge ids: 0=01, 1=02, 2=03, 3=12, 4=13, 5=23.
  return {complete_graph(4), {L.l1, L.l3, L.l5, L.l6, L.l4, L.l2}};
}

inline WeightedDistillation pi3_weights(const Pi3Labels& L) {
  // prism_graph edge ids: 0=01, 1=12, 2=02, 3=34, 4=45, 5=35, 6..8 rungs.
  return {prism_graph(),
          {L.l2, L.l3, L.l1, L.r2, L.r3, L.r1, L.c1, L.c2, L.c3}};
}

inline WeightedDistillation k33_weights(const K33Labels& L) {
  return {k33_graph(),
          {L.a1, L.a2, L.a3, L.b1, L.b2, L.b3, L.c1, L.c2, L.c3}};
}

// Detaching l1 and r1 from the two endpoints of rung c1 and swapping the
// loose ends turns the prism into the complete bipartite distillate with
// the same nine chain weights; parts {0,1,2} and {3,4,5} of k33_graph
// receive the old junction vertices as 0,1,2 = left ends of c1, c3's far
// side, c2's far side and 3,4,5 = their opposites.
inline WeightedDistillation k33_weights_reconnected(const Pi3Labels& L) {
  return {k33_graph(),
          {L.l2, L.c1, L.r1, L.l3, L.l1, L.c3, L.c2, L.r2, L.r3}};
}

// ---------------------------------------------------------------------------
// Chain-grouped realization. realize_weak_subdivision scatters inserted
// edge ids; the move bookkeeping instead needs every chain on a contiguous
// id block so that a moved pair of graphs agrees edge-for-edge away from
// the moved id.

namespace detail {

// Chain c of d occupies the id block [sum(block_w[0..c)), +block_w[c]).
// When moved_id >= 0, that id (the last of from_chain's block) is appended
// to to_chain's run instead. Zero runs merge their endpoints.
inline Multigraph grouped_layout(const Multigraph& d,
                                 const std::vector<long long>& block_w,
                                 int moved_id, int from_chain, int to_chain) {
  const int dn = d.n();
  const int dm = d.m();
  std::vector<std::vector<int>> run(dm);
  long long off = 0;
  for (int c = 0; c < dm; ++c) {
    for (long long j = 0; j < block_w[c]; ++j)
      run[c].push_back(static_cast<int>(off + j));
    off += block_w[c];
  }
  if (moved_id >= 0) {
    run[from_chain].pop_back();
    run[to_chain].push_back(moved_id);
  }
  UnionFind uf(dn);
  for (int c = 0; c < dm; ++c)
    if (run[c].empty()) uf.unite(d.edge(c).u, d.edge(c).v);
  std::vector<int> rep(dn, -1);
  int n = 0;
  for (int v = 0; v < dn; ++v) {
    const int r = uf.find(v);
    if (rep[r] < 0) rep[r] = n++;
  }
  int n_total = n;
  for (int c = 0; c < dm; ++c)
    if (!run[c].empty()) n_total += static_cast<int>(run[c].size()) - 1;
  std::vector<std::pair<int, int>> edges(static_cast<std::size_t>(off));
  int next = n;
  for (int c = 0; c < dm; ++c) {
    if (run[c].empty()) continue;
    const int a = rep[uf.find(d.edge(c).u)];
    const int b = rep[uf.find(d.edge(c).v)];
    const int len = static_cast<int>(run[c].size());
    int prev = a;
    for (int j = 0; j < len; ++j) {
      const int nx = (j == len - 1) ? b : next++;
      edges[run[c][j]] = {prev, nx};
      prev = nx;
    }
  }
  return Multigraph(n_total, edges);
}

}  // namespace detail

inline Multigraph chain_grouped_subdivision(const WeightedDistillation& wd) {
  validate_weighted_distillation(wd);
  return detail::grouped_layout(wd.d, wd.w, -1, -1, -1);
}

struct MovePair {
  Multigraph before;
  Multigraph after;   // one edge re-homed from one chain to another
  int moved_edge = 0; // same id in both graphs
};

// Moves the last edge of from_chain onto to_chain. Both resulting weight
// vectors must pass the zero-cycle ban; every id except the moved one
// keeps its chain in both layouts, which is the identification the subset
// scan relies on.
inline MovePair realize_move(const WeightedDistillation& wd, int from_chain,
                             int to_chain) {
  validate_weighted_distillation(wd);
  const int dm = wd.d.m();
  if (from_chain < 0 || from_chain >= dm || to_chain < 0 || to_chain >= dm)
    throw Error("realize_move: chain id out of range");
  if (from_chain == to_chain)
    throw Error("realize_move: source and target chains coincide");
  if (wd.w[from_chain] < 1)
    throw Error("realize_move: source chain has no edge to move");
  WeightedDistillation moved = wd;
  moved.w[from_chain] -= 1;
  moved.w[to_chain] += 1;
  validate_weighted_distillation(moved);
  long long off = 0;
  for (int c = 0; c < from_chain; ++c) off += wd.w[c];
  MovePair mp;
  mp.moved_edge = static_cast<int>(off + wd.w[from_chain] - 1);
  mp.before = detail::grouped_layout(wd.d, wd.w, -1, -1, -1);
  mp.after =
      detail::grouped_layout(wd.d, wd.w, mp.moved_edge, from_chain, to_chain);
  return mp;
}

// ---------------------------------------------------------------------------
// Subset bookkeeping.

struct MoveDelta {
  int size = 0;                    // subset size i
  std::vector<long long> x;        // x[j]: unique contained bond has size j
  std::vector<long long> x_moved;  // same tally with the roles swapped

  // Equals d_i(before) - d_i(after).
  long long net() const {
    long long s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] - x_moved[j];
    return s;
  }
};

// Tallies the size-i edge subsets that disconnect exactly one side of a
// moved pair, keyed by the size of the unique bond they contain. A subset
// counts for the before side when it contains exactly one bond of that
// graph, the bond contains the moved edge, and no bond of the after graph
// through the moved edge fits inside the subset; the x_moved tally swaps
// the roles. Σ_j (x[j] - x_moved[j]) recovers d_i(before) - d_i(after).
inline MoveDelta count_xij(const Multigraph& g, const Multigraph& g_moved,
                           int moved_edge, int size,
                           const ProfileOptions& opts = ProfileOptions()) {
  const int m = g.m();
  if (g_moved.m() != m)
    throw Error("count_xij: the two graphs have different edge counts");
  if (moved_edge < 0 || moved_edge >= m)
    throw Error("count_xij: moved edge out of range");
  if (size < 1 || size > m) throw Error("count_xij: subset size out of range");
  if (m > opts.subset_cap || m > 63)
    throw BudgetError("count_xij: m = " + std::to_string(m) +
                      " exceeds subset enumeration cap " +
                      std::to_string(std::min(opts.subset_cap, 63)));

  auto bonds_up_to = [&](const Multigraph& h) {
    BondOptions bo;
    bo.want_split = false;
    BondCatalog cat = bond_catalog(h, bo);
    std::vector<std::pair<std::uint64_t, int>> out;
    for (int s = 1; s <= size; ++s)
      for (const Bond& bd : cat.by_size[s])
        out.push_back({bd.mask, s});
    return out;
  };
  const auto bonds_before = bonds_up_to(g);
  const auto bonds_after = bonds_up_to(g_moved);
  const std::uint64_t ebit = std::uint64_t{1} << moved_edge;

  MoveDelta row;
  row.size = size;
  row.x.assign(size + 1, 0);
  row.x_moved.assign(size + 1, 0);

  struct Scan {
    int total = 0;
    int with_e = 0;
    int only_size = 0;
  };
  auto scan = [&](const std::vector<std::pair<std::uint64_t, int>>& bonds,
                  std::uint64_t mask) {
    Scan s;
    for (const auto& [bm, bs] : bonds) {
      if ((bm & ~mask) != 0) continue;
      ++s.total;
      if (bm & ebit) ++s.with_e;
      s.only_size = bs;
    }
    return s;
  };

  // Only subsets through the moved edge can disconnect one side alone.
  detail::for_each_combination(m - 1, size - 1, [&](std::uint64_t packed) {
    const std::uint64_t lo = packed & (ebit - 1);
    const std::uint64_t hi = packed & ~(ebit - 1);
    const std::uint64_t mask = ebit | lo | (hi << 1);
    const Scan a = scan(bonds_before, mask);
    const Scan b = scan(bonds_after, mask);
    if (a.total == 1 && a.with_e == 1 && b.with_e == 0) row.x[a.only_size] += 1;
    if (b.total == 1 && b.with_e == 1 && a.with_e == 0)
      row.x_moved[b.only_size] += 1;
  });
  return row;
}

// ---------------------------------------------------------------------------
// Bridge surgery: re-homing a cycle edge across an adjacent bridge strictly
// lowers every informative disconnection count.

namespace detail {

inline void assert_profile_drop(const Multigraph& g, const Multigraph& h) {
  const ProfileOptions opts;
  if (g.m() > opts.subset_cap) return;
  const ReliabilityProfile a = profile(g);
  const ReliabilityProfile b = profile(h);
  for (int i = 1; i <= a.k + 1 && i <= a.m; ++i)
    if (!(b.d[i] < a.d[i]))
      throw Error("bridge_surgery: disconnection count failed to drop");
}

}  // namespace detail

inline Multigraph bridge_surgery(const Multigraph& g) {
  if (!is_connected(g)) throw Error("bridge_surgery: graph is disconnected");
  if (g.n() < 2) throw Error("bridge_surgery: single vertex has no bridge");
  if (g.m() < g.n())
    throw Error("bridge_surgery: a tree has no cycle edge to move");
  const std::vector<int> bridges = find_bridges(g);
  if (bridges.empty()) throw Error("bridge_surgery: graph is bridgeless");
  std::vector<char> is_bridge(g.m(), 0);
  for (int b : bridges) is_bridge[b] = 1;
  for (int b : bridges) {
    for (int side = 0; side < 2; ++side) {
      const int v = side == 0 ? g.edge(b).u : g.edge(b).v;
      const int w = side == 0 ? g.edge(b).v : g.edge(b).u;
      for (int e = 0; e < g.m(); ++e) {
        if (e == b || is_bridge[e]) continue;
        if (g.edge(e).u != v && g.edge(e).v != v) continue;
        std::vector<std::pair<int, int>> edges;
        edges.reserve(g.m());
        for (int i = 0; i < g.m(); ++i)
          edges.push_back({g.edge(i).u, g.edge(i).v});
        if (edges[e].first == v)
          edges[e].first = w;
        else
          edges[e].second = w;
        Multigraph out(g.n(), edges);
        detail::assert_profile_drop(g, out);
        return out;
      }
    }
  }
  throw Error("bridge_surgery: no bridge is adjacent to a cycle edge");
}

// ---------------------------------------------------------------------------
// Closed-form deltas. check = true replays the move and compares against
// the subset scan (or full profiles for the two-step and reconnection
// surgeries) before returning.

// Move one edge from l1 to l3. Answer for d_3.
inline long long k4_move_delta_d3(const K4Labels& L, bool check = false) {
  if (L.l1 < 1) throw Error("k4_move_delta_d3: moved chain is empty");
  const long long out =
      (L.l1 - 1 - L.l3) * (L.l2 + L.l4 + L.l6) + (L.l4 - L.l2) * L.l6;
  if (check) {
    const MovePair mp = realize_move(k4_weights(L), 0, 1);
    const long long scan = count_xij(mp.before, mp.after, mp.moved_edge, 3).net();
    if (scan != out)
      throw Error("k4_move_delta_d3: formula disagrees with the subset scan");
  }
  return out;
}

struct DeltaPair {
  long long d3 = 0;
  long long d4 = 0;
};

// Move one edge from l1 to r1, then one from r3 to l3. Answers for d_3 and
// d_4 of the original minus the twice-moved graph.
inline DeltaPair pi3_double_move_deltas(const Pi3Labels& L, bool check = false) {
  if (L.l1 < 1 || L.r3 < 1)
    throw Error("pi3_double_move_deltas: a moved chain is empty");
  const long long d1 = L.delta(1), d2 = L.delta(2), d3 = L.delta(3);
  const long long s1 = L.sigma(1), s2 = L.sigma(2), s3 = L.sigma(3);
  DeltaPair out;
  out.d3 = (d1 - 1) * (L.c1 + L.c2 + s2 + s3) + (-d3 - 1) * (L.c1 + s1 + s2) +
           L.c1 * d2 + L.c2 * (-d3 - 1 - d2);
  out.d4 = (d1 - 1) * (L.c1 * s3 + L.c2 * (s2 + s3) + s2 * s3) +
           L.c1 * d2 * s3 + (-d3 - 1) * (L.c1 * (s1 + s2) + s1 * s2) +
           L.c2 * s1 * (-d3 - 1 - d2);
  if (check) {
    const MovePair first = realize_move(pi3_weights(L), 2, 5);
    Pi3Labels mid = L;
    mid.l1 -= 1;
    mid.r1 += 1;
    const MovePair second = realize_move(pi3_weights(mid), 4, 1);
    for (int i = 3; i <= 4; ++i) {
      const long long scan =
          count_xij(first.before, first.after, first.moved_edge, i).net() +
          count_xij(second.before, second.after, second.moved_edge, i).net();
      if (scan != (i == 3 ? out.d3 : out.d4))
        throw Error(
            "pi3_double_move_deltas: formula disagrees with the subset scan");
    }
  }
  return out;
}

struct ReconnectDeltas {
  long long b3 = 0;  // 3-bond count of the prism form minus the bipartite form
  long long d4 = 0;  // d_4 of the prism form minus the bipartite form
};

// Swap the c1-side endpoints of l1 and r1, turning the prism distillate
// into the bipartite one while keeping every chain length. d_2 and the
// disconnections through any 2-bond are untouched, so the d_3 change is
// exactly the 3-bond change.
inline ReconnectDeltas pi3_reconnect_deltas(const Pi3Labels& L,
                                            bool check = false) {
  if (L.c1 < 1 || L.c2 < 1 || L.c3 < 1)
    throw Error("pi3_reconnect_deltas: rung chains must stay positive");
  const long long d1 = L.delta(1), d2 = L.delta(2), d3 = L.delta(3);
  const long long s1 = L.sigma(1), s2 = L.sigma(2), s3 = L.sigma(3);
  ReconnectDeltas out;
  out.b3 = L.c1 * (L.c2 * L.c3 + d1 * d2);
  out.d4 = L.c1 * (L.c2 * L.c3 * (s1 + s2 + s3) + d1 * d2 * (L.c2 + L.c3 + s3) +
                   L.c2 * d1 * d3 + L.c3 * d2 * d3);
  if (check) {
    const Multigraph g = realize_weak_subdivision(pi3_weights(L));
    const Multigraph h =
        realize_weak_subdivision(k33_weights_reconnected(L));
    BondOptions bo;
    bo.want_split = false;
    const Int b3_diff = bond_catalog(g, bo).b[3] - bond_catalog(h, bo).b[3];
    if (b3_diff != out.b3)
      throw Error(
          "pi3_reconnect_deltas: 3-bond formula disagrees with enumeration");
    const Int d4_diff = profile(g).d[4] - profile(h).d[4];
    if (d4_diff != out.d4)
      throw Error(
          "pi3_reconnect_deltas: d_4 formula disagrees with the profiles");
  }
  return out;
}

// Move one edge from a1 to b1. Answers for d_3 and d_4.
inline DeltaPair k33_move_deltas(const K33Labels& L, bool check = false) {
  if (L.a1 < 1) throw Error("k33_move_deltas: moved chain is empty");
  const long long d1 = L.delta(1), d2 = L.delta(2), d3 = L.delta(3);
  const long long s2 = L.sigma(2), s3 = L.sigma(3);
  DeltaPair out;
  out.d3 = (d1 - 1) * (s2 + s3) + L.a2 * L.a3 - L.b2 * L.b3;
  out.d4 = (d1 - 1) * (L.a2 * L.b3 + L.a3 * L.b2 + L.c2 * (L.a3 + L.b3) +
                       L.c3 * (L.a2 + L.b2)) +
           (d1 + d2 - 1) * (L.a3 * L.b3 + L.c3 * (L.a3 + L.b3)) +
           (d1 + d3 - 1) * (L.a2 * L.b2 + L.c2 * (L.a2 + L.b2));
  if (check) {
    const MovePair mp = realize_move(k33_weights(L), 0, 3);
    for (int i = 3; i <= 4; ++i) {
      const long long scan =
          count_xij(mp.before, mp.after, mp.moved_edge, i).net();
      if (scan != (i == 3 ? out.d3 : out.d4))
        throw Error("k33_move_deltas: formula disagrees with the subset scan");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spanning-tree accounting on the four-rung ladder.

// Tree count of the ladder subdivision with every rail chain of length
// rail and every rung chain of length rung.
inline Int wagner_tree_polynomial(long long rail, long long rung) {
  if (rail < 1 || rung < 1)
    throw Error("wagner_tree_polynomial: chain lengths must be positive");
  const Int l = rail;
  const Int g = rung;
  return 8 * g * g * g * g * l + 64 * g * g * g * l * l +
         160 * g * g * l * l * l + 128 * g * l * l * l * l +
         32 * l * l * l * l * l;
}

struct WagnerTreeTable {
  std::array<long long, 5> by_rung_count{};  // trees holding exactly i rungs
  // Joint membership for one fixed rung and an adjacent rail.
  long long both = 0;
  long long rail_only = 0;
  long long rung_only = 0;
  long long neither = 0;

  long long total() const {
    long long s = 0;
    for (long long v : by_rung_count) s += v;
    return s;
  }
};

// Classifies every spanning tree of the ladder by its rung count and by
// whether it holds the rung 0-4 and the rail 0-1.
inline WagnerTreeTable wagner_rung_distribution() {
  const Multigraph w = wagner_graph();
  WagnerTreeTable table;
  detail::for_each_combination(12, 7, [&](std::uint64_t mask) {
    UnionFind uf(8);
    for (int e = 0; e < 12; ++e)
      if ((mask >> e) & 1) uf.unite(w.edge(e).u, w.edge(e).v);
    if (uf.components() != 1) return;
    const int rungs = std::popcount(mask >> 8);
    table.by_rung_count[rungs] += 1;
    const bool has_rail = (mask & 1) != 0;
    const bool has_rung = (mask >> 8) & 1;
    if (has_rail && has_rung)
      table.both += 1;
    else if (has_rail)
      table.rail_only += 1;
    else if (has_rung)
      table.rung_only += 1;
    else
      table.neither += 1;
  });
  return table;
}

struct RatioBracket {
  long long rail = 0;  // integer rail weight with the most spanning trees
  Rat ratio_at_rail;   // rung weight over rail weight there
  Rat lo;              // ratio at the next heavier rail: a lower bound
  Rat hi;              // ratio at the next lighter rail: an upper bound
};

// With the edge budget m = 8*rail + 4*rung fixed, the tree count equals
// rail * (m^2 - 32 rail^2)^2 / 32; this scans the integer rail weights
// with positive rung weight for the discrete maximum and returns the
// ratio bracket around it. The bracket narrows as m grows.
inline RatioBracket wagner_optimal_ratio_check(long long m) {
  if (m < 12)
    throw Error("wagner_optimal_ratio_check: m is below the smallest ladder");
  auto trees32 = [&](long long l) -> Int {
    const Int L = l;
    const Int s = Int(m) * m - 32 * L * L;
    return L * s * s;
  };
  const long long top = (m - 1) / 8;
  long long best = 1;
  for (long long l = 2; l <= top; ++l)
    if (trees32(l) > trees32(best)) best = l;
  auto ratio = [&](long long l) { return Rat(m - 8 * l, 4 * l); };
  RatioBracket out;
  out.rail = best;
  out.ratio_at_rail = ratio(best);
  out.lo = ratio(best + 1);
  out.hi = best > 1 ? ratio(best - 1) : Rat(m);
  return out;
}

}  // namespace relopt
