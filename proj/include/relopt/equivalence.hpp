#pragma once
// Edge shifting: a reversible surgery that preserves the whole profile of
// disconnection counts. Repeated shifts define an equivalence relation whose
// classes have constant d-vectors and constant bridgelessness. Shifting whole
// chains across a cross-chain 2-bond reduces any bridgeless graph to an
// equivalent one whose 2-bonds all lie within single chains, which is the
// entry requirement for the cubic distillation machinery.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relopt/canonical.hpp"
#include "relopt/connectivity.hpp"
#include "relopt/distillation.hpp"
#include "relopt/errors.hpp"
#include "relopt/multigraph.hpp"
#include "relopt/reliability.hpp"

namespace relopt {

// ---------------------------------------------------------------------------
// Single shifts.

// Shift edge `edge` to the vertex `expansion.vertex`: expand a new edge
// there so that the two form a 2-bond, then contract `edge`. The expansion
// records the incidence split; the new edge always gets id m.
struct ShiftMove {
  int edge = 0;
  VertexExpansion expansion;
};

namespace detail {

// {e1, e2} is a 2-bond: removing both disconnects, removing either does not.
inline bool is_two_bond(const Multigraph& g, int e1, int e2) {
  if (g.is_loop(e1) || g.is_loop(e2)) return false;
  std::uint64_t m1 = 1ull << e1, m2 = 1ull << e2;
  return connected_without(g, m1) && connected_without(g, m2) &&
         !connected_without(g, m1 | m2);
}

}  // namespace detail

inline Multigraph shift_edge(const Multigraph& g, const ShiftMove& move) {
  if (move.edge < 0 || move.edge >= g.m())
    throw Error("shift_edge: no such edge");
  auto [mid, joining] = expand_at_vertex(g, move.expansion);
  if (!detail::is_two_bond(mid, move.edge, joining))
    throw Error("shift_edge: expansion does not create the required 2-bond");
  return contract_edge(mid, move.edge).first;
}

// Every legal shift: all incidence splits at every vertex, paired with every
// edge that forms a 2-bond with the inserted one. Splits leaving the new
// edge as a bridge can never qualify and are skipped up front.
inline std::vector<ShiftMove> enumerate_shifts(const Multigraph& g) {
  if (g.m() > 63) throw BudgetError("enumerate_shifts: too many edges");
  std::vector<ShiftMove> out;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> nl = g.incident_edges(v);
    std::vector<int> loops = g.loop_ids(v);
    const int nn = static_cast<int>(nl.size());
    const int ln = static_cast<int>(loops.size());
    if (nn > 16 || ln > 10)
      throw BudgetError("enumerate_shifts: vertex degree too large");
    std::vector<int> assign(ln, 0);
    for (std::uint32_t mask = 0; mask < (1u << nn); ++mask) {
      std::fill(assign.begin(), assign.end(), 0);
      for (;;) {
        int s1 = 0, s2 = 0;
        for (int i = 0; i < nn; ++i) ((mask >> i) & 1 ? s1 : s2) += 1;
        for (int i = 0; i < ln; ++i) {
          if (assign[i] == 0) s2 += 2;
          if (assign[i] == 1) s1 += 2;
          if (assign[i] == 2) s1 += 1, s2 += 1;
        }
        if (s1 > 0 && s2 > 0) {
          VertexExpansion ex;
          ex.vertex = v;
          for (int i = 0; i < nn; ++i)
            if ((mask >> i) & 1) ex.first_side.push_back(nl[i]);
          for (int i = 0; i < ln; ++i)
            ex.loops.push_back({loops[i], assign[i] == 0 ? LoopSplit::kSecond
                                          : assign[i] == 1 ? LoopSplit::kFirst
                                                           : LoopSplit::kAcross});
          auto [mid, joining] = expand_at_vertex(g, ex);
          for (int e = 0; e < g.m(); ++e)
            if (detail::is_two_bond(mid, e, joining)) out.push_back({e, ex});
        }
        int pos = 0;
        while (pos < ln && assign[pos] == 2) assign[pos++] = 0;
        if (pos == ln) break;
        ++assign[pos];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence classes.

struct EquivalenceClass {
  std::set<std::string> forms;  // canonical forms of the members
  bool complete = true;         // false when the size cap stopped the closure
};

// Breadth-first closure of the class under single shifts, deduplicated by
// canonical form. Shifts keep n and m fixed, so the state space is finite;
// the cap guards against the rare huge class.
inline EquivalenceClass equivalence_class(const Multigraph& g,
                                          int size_cap = 100000) {
  if (g.n() > kCanonicalVertexCap)
    throw BudgetError("equivalence_class: graph exceeds the isomorphism cap");
  if (!is_connected(g)) throw Error("equivalence_class: graph is disconnected");
  EquivalenceClass out;
  std::vector<Multigraph> queue;
  Multigraph start = canonical_graph(g);
  out.forms.insert(canonical_form(start));
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    Multigraph cur = std::move(queue.back());
    queue.pop_back();
    for (const ShiftMove& move : enumerate_shifts(cur)) {
      Multigraph next = canonical_graph(shift_edge(cur, move));
      std::string key = canonical_form(next);
      if (out.forms.contains(key)) continue;
      if (static_cast<int>(out.forms.size()) >= size_cap) {
        out.complete = false;
        return out;
      }
      out.forms.insert(key);
      queue.push_back(std::move(next));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction to a representative whose 2-bonds are all within single chains.

// While the graph has a 2-bond spanning two chains, shift the whole shorter
// side into the other chain (one merged chain, one zero chain), realized in
// a single step as a weight transfer on the proper distillation. The result
// is equivalent to the input, and its proper distillation is either a single
// vertex or 3-edge-connected.
inline Multigraph to_3ec_representative(const Multigraph& g) {
  if (!is_connected(g))
    throw Error("to_3ec_representative: graph is disconnected");
  if (!find_bridges(g).empty())
    throw Error("to_3ec_representative: graph has a bridge");
  bool all_two = true;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) != 2) all_two = false;
  if (all_two) return g;  // a cycle: every 2-bond is within the one chain

  Multigraph cur = g;
  for (;;) {
    ProperDistillation pd = proper_distillation(cur);
    if (pd.wd.d.n() == 1 || detail::three_edge_connected(pd.wd.d)) return cur;
    BondOptions opts;
    opts.want_split = false;
    BondCatalog cat = bond_catalog(pd.wd.d, opts);
    if (cat.by_size.size() < 3 || cat.by_size[2].empty())
      throw Error("to_3ec_representative: expected a 2-bond");
    const Bond& bond = cat.by_size[2][0];
    WeightedDistillation wd = pd.wd;
    wd.w[bond.edges[0]] += wd.w[bond.edges[1]];
    wd.w[bond.edges[1]] = 0;
    cur = realize_weak_subdivision(wd);
  }
}

}  // namespace relopt
