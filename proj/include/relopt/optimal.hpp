// Constructors for the most-reliable families of small exceedance, the 1994
// matching-cycling construction they correct, the named graph pairs that rule
// out unique optima at larger exceedance, and the conjectural balanced
// subdivisions for exceedance 4 and 5.
//
// Every arrangement rule in this file is pinned by the placement-enumeration
// oracles in tests/test_optimal.cpp; nothing here is trusted on its own.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relopt/canonical.hpp"
#include "relopt/distillation.hpp"
#include "relopt/errors.hpp"
#include "relopt/multigraph.hpp"

namespace relopt {

// Which rule produced a constructed graph. For k >= 1 the edge count splits
// as m = modulus*q + r with modulus = 3k and r centered in
// (-modulus/2 .. modulus/2]; q is the base chain length and the |r| deviating
// chains sit on the subset described by rule.
struct OptimalSpec {
  int k = 0;
  long long m = 0;
  long long n = 0;  // m - k
  int modulus = 0;  // 3k for k >= 1, 0 for the tree and cycle rows
  long long q = 0;
  int r = 0;
  std::string rule;
  bool unique = true;        // false for trees: every tree ties
  bool conjectural = false;  // true for exceedance 4 and 5
};

namespace detail {

// m = mod*q + r with r in (-mod/2 .. mod/2].
inline std::pair<long long, int> centered_division(long long m, int mod) {
  long long q = m / mod;
  long long r = m - q * mod;
  if (2 * r > mod) {
    q += 1;
    r -= mod;
  }
  return {q, static_cast<int>(r)};
}

// Edge ids of the distillate whose chains deviate from the base length q.
// k = 2 lives on complete_graph(4), k = 3 on k33_graph.
inline std::vector<int> deviation_ids(int k, int r) {
  int a = r < 0 ? -r : r;
  if (a == 0) return {};
  if (k == 1) return {0};
  if (k == 2) {
    switch (a) {
      case 1: return {0};
      case 2: return {0, 5};     // an opposite pair
      case 3: return {0, 3, 5};  // the path 0-1-2-3
    }
  }
  if (k == 3) {
    switch (a) {
      case 1: return {0};
      case 2: return {0, 4};        // two nonadjacent edges
      case 3: return {0, 4, 8};     // a perfect matching
      case 4:
        if (r > 0) return {0, 3, 4, 8};  // path 0-3-1-4 plus the edge (2,5)
        return {0, 3, 7, 8};             // paths 0-3-1 and 4-2-5
    }
  }
  throw Error("deviation_ids: no arrangement for this (k, r)");
}

inline std::string placement_rule(int k, int r) {
  if (r == 0) return "all chains equal";
  std::string dir = r > 0 ? "longer" : "shorter";
  int a = r < 0 ? -r : r;
  if (a == 1) return "one " + dir + " chain (placement free)";
  if (k == 2) {
    if (a == 2) return "two " + dir + " chains on an opposite pair";
    return "three longer chains on a 3-edge path";
  }
  if (a == 2) return "two " + dir + " chains at nonadjacent edges";
  if (a == 3) return "three " + dir + " chains on a perfect matching";
  if (r > 0) return "four longer chains on a 3-edge path plus a disjoint edge";
  return "four shorter chains on two disjoint 2-edge paths";
}

}  // namespace detail

inline OptimalSpec optimal_spec(int k, long long m) {
  if (k < -1 || k > 3)
    throw Error(
        "optimal_spec: exceedance must lie in [-1..3]; "
        "4 and 5 only have conjectural constructions");
  if (m < 1 || m - k < 1)
    throw Error("optimal_spec: too few edges for this exceedance");
  OptimalSpec s;
  s.k = k;
  s.m = m;
  s.n = m - k;
  if (k <= 0) {
    s.rule = k == -1 ? "the path; every tree is equally reliable" : "the cycle";
    s.unique = k == 0;
    return s;
  }
  s.modulus = 3 * k;
  auto [q, r] = detail::centered_division(m, s.modulus);
  s.q = q;
  s.r = r;
  s.rule = detail::placement_rule(k, r);
  return s;
}

inline Multigraph optimal_graph(int k, long long m) {
  OptimalSpec s = optimal_spec(k, m);
  if (k == -1) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i) e.push_back({i, i + 1});
    return Multigraph(static_cast<int>(m) + 1, e);
  }
  if (k == 0) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i) e.push_back({i, (i + 1) % static_cast<int>(m)});
    return Multigraph(static_cast<int>(m), e);
  }
  WeightedDistillation wd;
  wd.d = k == 1 ? dipole(3) : k == 2 ? complete_graph(4) : k33_graph();
  wd.w.assign(wd.d.m(), s.q);
  for (int id : detail::deviation_ids(k, s.r)) wd.w[id] += s.r > 0 ? 1 : -1;
  return realize_weak_subdivision(wd);
}

// ---------------------------------------------------------------------------
// The matching-cycling construction of 1994. Chains grow one matching at a
// time, lowest edge id first inside the matching in play; any other choice
// inside a matching gives an isomorphic graph. Agrees with optimal_graph(3, m)
// exactly when m mod 9 != 5.

inline Multigraph wang_k3_graph(long long m) {
  if (m < 9) throw Error("wang_k3_graph: needs at least nine edges");
  // Three perfect matchings of k33_graph, concatenated in cycling order.
  static const int kOrder[9] = {0, 4, 8, 1, 5, 6, 2, 3, 7};
  WeightedDistillation wd;
  wd.d = k33_graph();
  wd.w.assign(9, 1 + (m - 9) / 9);
  for (int i = 0; i < (m - 9) % 9; ++i) wd.w[kOrder[i]] += 1;
  return realize_weak_subdivision(wd);
}

// ---------------------------------------------------------------------------
// Named pairs. Each one is a two-graph exhibit: equal size, incomparable or
// nearly tied reliability, documented contrast in note.

struct NamedPair {
  std::string name;
  Multigraph first;
  Multigraph second;
  std::string note;
};

namespace detail {

inline Multigraph cycles_joined_by_bridge(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i) e.push_back({i, (i + 1) % a});
  for (int i = 0; i < b; ++i) e.push_back({a + i, a + (i + 1) % b});
  e.push_back({0, a});
  return Multigraph(a + b, e);
}

inline Multigraph cycles_at_cutvertex(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i) e.push_back({i, (i + 1) % a});
  e.push_back({0, a});
  for (int i = 0; i + 1 < b - 1; ++i) e.push_back({a + i, a + i + 1});
  e.push_back({a + b - 2, 0});
  return Multigraph(a + b - 1, e);
}

inline Multigraph complement_on(int n,
                                std::vector<std::pair<int, int>> missing) {
  for (auto& [u, v] : missing)
    if (u > v) std::swap(u, v);
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool skip = false;
      for (auto& [a, b] : missing) skip = skip || (a == u && b == v);
      if (!skip) e.push_back({u, v});
    }
  return Multigraph(n, e);
}

inline Multigraph weighted_wagner(const std::vector<long long>& w) {
  WeightedDistillation wd;
  wd.d = wagner_graph();
  wd.w = w;
  return realize_weak_subdivision(wd);
}

}  // namespace detail

inline std::vector<std::string> named_pair_names() {
  return {"handcuffs",     "romero_safe",       "wagner_rails",
          "petersen_6_11", "pi3_counterexample", "k4_counterexample"};
}

// q parameterizes romero_safe (q >= 2) and wagner_rails (q >= 1); the other
// pairs take no parameter and require q = 0.
inline NamedPair named_pair(const std::string& name, long long q = 0) {
  NamedPair out;
  out.name = name;
  auto fixed_size = [&]() {
    if (q != 0) throw Error("named_pair: " + name + " takes no size parameter");
  };
  if (name == "handcuffs") {
    fixed_size();
    out.first = detail::cycles_joined_by_bridge(5, 5);
    out.second = detail::cycles_at_cutvertex(3, 8);
    out.note =
        "two (10,11)-graphs; the bridged one is the more reliable "
        "for p above one half";
    return out;
  }
  if (name == "romero_safe") {
    if (q < 2) throw Error("named_pair: romero_safe needs q >= 2");
    std::vector<long long> a(12, q), b(12, q);
    for (int i : {0, 2, 4, 6}) a[i] = q - 1;  // alternating rails
    for (int i : {0, 2, 5, 7}) b[i] = q - 1;  // same multiset, no matching
    out.first = detail::weighted_wagner(a);
    out.second = detail::weighted_wagner(b);
    out.note =
        "equal d2; the first is better near p = 1, "
        "the second has more spanning trees";
    return out;
  }
  if (name == "wagner_rails") {
    if (q < 1) throw Error("named_pair: wagner_rails needs q >= 1");
    std::vector<long long> a(12, q), b(12, q);
    b[0] = q - 1;  // a rail, adjacent at vertex 0 to
    b[8] = q + 1;  // this rung
    out.first = detail::weighted_wagner(a);
    out.second = detail::weighted_wagner(b);
    out.note =
        "moving one edge from a rail to an adjacent rung "
        "gains spanning trees once q >= 8";
    return out;
  }
  if (name == "petersen_6_11") {
    fixed_size();
    out.first = detail::complement_on(6, {{0, 1}, {1, 2}, {2, 3}, {4, 5}});
    out.second = detail::complement_on(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    out.note =
        "the two 3-edge-connected simple (6,11)-graphs with degree "
        "sequence (4,4,4,4,3,3); 224 vs 225 spanning trees";
    return out;
  }
  if (name == "pi3_counterexample") {
    fixed_size();
    WeightedDistillation g{prism_graph(), std::vector<long long>(9, 1)};
    g.w[2] = g.w[3] = 5;  // one rail in each triangle
    WeightedDistillation h{k33_graph(), std::vector<long long>(9, 1)};
    h.w[0] = h.w[1] = 5;  // two adjacent chains
    out.first = realize_weak_subdivision(g);
    out.second = realize_weak_subdivision(h);
    out.note =
        "a prism-shaped subdivision with more spanning trees than "
        "its reconnected bipartite form";
    return out;
  }
  if (name == "k4_counterexample") {
    fixed_size();
    WeightedDistillation g{complete_graph(4), {3, 1, 1, 5, 1, 3}};
    WeightedDistillation h{complete_graph(4), {2, 2, 1, 5, 1, 3}};
    out.first = realize_weak_subdivision(g);
    out.second = realize_weak_subdivision(h);
    out.note =
        "evening out an adjacent chain pair loses a spanning tree";
    return out;
  }
  throw Error("named_pair: unknown name " + name);
}

// ---------------------------------------------------------------------------
// Conjectural families. Exceedance 4 rides on the Wagner graph, exceedance 5
// on the Petersen graph; nothing returned here is asserted optimal.

enum class ConjecturalFlavor { kBalanced, kAthSobelA, kAthSobelB };

inline const char* flavor_name(ConjecturalFlavor f) {
  switch (f) {
    case ConjecturalFlavor::kBalanced: return "balanced";
    case ConjecturalFlavor::kAthSobelA: return "ath_sobel_a";
    case ConjecturalFlavor::kAthSobelB: return "ath_sobel_b";
  }
  return "?";
}

inline ConjecturalFlavor parse_conjectural_flavor(const std::string& s) {
  if (s == "balanced") return ConjecturalFlavor::kBalanced;
  if (s == "ath_sobel_a") return ConjecturalFlavor::kAthSobelA;
  if (s == "ath_sobel_b") return ConjecturalFlavor::kAthSobelB;
  throw Error("parse_conjectural_flavor: unknown flavor " + s);
}

namespace detail {

// The Petersen graph drawn as an 8-ring with two hub vertices 8 and 9.
// Ids 0..7 are the ring; 8..14 the chords. Isomorphic to petersen_graph(),
// which the tests assert.
inline Multigraph petersen_ring_form() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 8; ++i) e.push_back({i, (i + 1) % 8});
  e.push_back({1, 8});
  e.push_back({8, 5});
  e.push_back({7, 9});
  e.push_back({9, 3});
  e.push_back({8, 9});
  e.push_back({0, 4});
  e.push_back({2, 6});
  return Multigraph(10, e);
}

// The two lengthened-chain patterns with imbalanced vertex deviations, on
// petersen_ring_form ids. Five chains for flavor a, ten for flavor b.
inline const std::vector<int>& uneven_long_ids(ConjecturalFlavor f) {
  static const std::vector<int> a = {0, 9, 11, 13, 14};
  static const std::vector<int> b = {0, 1, 4, 6, 9, 10, 11, 12, 13, 14};
  return f == ConjecturalFlavor::kAthSobelA ? a : b;
}

}  // namespace detail

inline OptimalSpec conjectural_spec(
    int k, long long m,
    ConjecturalFlavor f = ConjecturalFlavor::kBalanced) {
  if (k != 4 && k != 5)
    throw Error(
        "conjectural_spec: only exceedances 4 and 5; "
        "use optimal_graph below that");
  OptimalSpec s;
  s.k = k;
  s.m = m;
  s.n = m - k;
  s.modulus = 3 * k;
  s.unique = false;
  s.conjectural = true;
  if (f != ConjecturalFlavor::kBalanced) {
    if (k != 5)
      throw Error("conjectural_spec: the uneven flavors need exceedance 5");
    int want = f == ConjecturalFlavor::kAthSobelA ? 5 : 10;
    if (m % 15 != want || m < 15 + want)
      throw Error("conjectural_spec: " + std::string(flavor_name(f)) +
                  " needs m = 15q + " + std::to_string(want) +
                  " with q >= 1");
    s.q = m / 15;
    s.r = want;
    s.rule = std::string(flavor_name(f)) +
             ": lengthened chains meet two vertices unevenly";
    return s;
  }
  if (m < (k == 4 ? 6 : 8))
    throw Error("conjectural_spec: too few edges for this exceedance");
  auto [q, r] = detail::centered_division(m, s.modulus);
  s.q = q;
  s.r = r;
  s.rule = k == 4 ? "balanced Wagner weighting, rails and rungs each balanced"
                  : "balanced Petersen weighting";
  return s;
}

inline Multigraph conjectural_graph(
    int k, long long m,
    ConjecturalFlavor f = ConjecturalFlavor::kBalanced) {
  OptimalSpec s = conjectural_spec(k, m, f);
  WeightedDistillation wd;
  if (f != ConjecturalFlavor::kBalanced) {
    wd.d = detail::petersen_ring_form();
    wd.w.assign(15, s.q);
    for (int id : detail::uneven_long_ids(f)) wd.w[id] += 1;
    return realize_weak_subdivision(wd);
  }
  // Deviations fill a matching first: alternate rails then rungs for the
  // Wagner graph, spokes then two opposite outer edges for Petersen.
  static const std::vector<int> kWagnerOrder = {0, 2, 4, 6, 8, 9};
  static const std::vector<int> kPetersenOrder = {5, 6, 7, 8, 9, 0, 2};
  const std::vector<int>& order = k == 4 ? kWagnerOrder : kPetersenOrder;
  wd.d = k == 4 ? wagner_graph() : petersen_graph();
  wd.w.assign(wd.d.m(), s.q);
  int a = s.r < 0 ? -s.r : s.r;
  for (int i = 0; i < a; ++i) wd.w[order[i]] += s.r > 0 ? 1 : -1;
  return realize_weak_subdivision(wd);
}

}  // namespace relopt
