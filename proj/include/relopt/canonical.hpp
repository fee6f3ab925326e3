#pragma once

// Canonical forms for small multigraphs (n <= 12) by ordered search over
// vertex placements.
//
// Vertices are first colored by iterated neighborhood refinement (degree,
// loop count, then multisets of neighbor colors with multiplicities). The
// canonical sequence lists, per placement position, the color index followed
// by edge multiplicities to all earlier positions and the loop count; the
// lexicographically smallest sequence over all placements is canonical.
// Restricting each placement step to vertices of the smallest remaining
// color index is sound because the color index leads the per-position block.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "relopt/multigraph.hpp"

namespace relopt {

inline constexpr int kCanonicalVertexCap = 12;

namespace detail {

inline std::vector<int> refined_colors(const Multigraph& g) {
  const int n = g.n();
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  std::vector<int> loops(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v)
      ++loops[e.u];
    else {
      ++mult[e.u][e.v];
      ++mult[e.v][e.u];
    }
  }
  std::vector<int> color(n);
  {
    std::map<std::pair<int, int>, int> key;
    for (int v = 0; v < n; ++v) key[{g.degree(v), loops[v]}] = 0;
    int idx = 0;
    for (auto& [k, id] : key) id = idx++;
    for (int v = 0; v < n; ++v) color[v] = key[{g.degree(v), loops[v]}];
  }
  for (;;) {
    // signature: own color + sorted (neighbor color, multiplicity) pairs
    std::map<std::vector<int>, int> key;
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<int, int>> nbr;
      for (int w = 0; w < n; ++w)
        if (mult[v][w] > 0) nbr.push_back({color[w], mult[v][w]});
      std::sort(nbr.begin(), nbr.end());
      sig[v].push_back(color[v]);
      for (auto [c, k] : nbr) {
        sig[v].push_back(c);
        sig[v].push_back(k);
      }
      key[sig[v]] = 0;
    }
    int idx = 0;
    for (auto& [k, id] : key) id = idx++;
    std::vector<int> next(n);
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      next[v] = key[sig[v]];
      if (next[v] != color[v]) changed = true;
    }
    color = next;
    if (!changed) break;
  }
  return color;
}

struct CanonSearch {
  int n;
  std::vector<std::vector<int>> mult;
  std::vector<int> loops;
  std::vector<int> color;
  std::vector<int> best;       // best complete sequence
  bool have_best = false;
  std::vector<int> seq;        // current partial sequence
  std::vector<int> placed;     // position -> vertex
  std::vector<bool> used;
  std::vector<int> best_order; // placement achieving best

  void run() {
    dfs(0, false);
  }

  void dfs(int pos, bool strictly_less) {
    if (pos == n) {
      if (!have_best || strictly_less) {
        best = seq;
        best_order = placed;
        have_best = true;
      }
      return;
    }
    int min_color = -1;
    for (int v = 0; v < n; ++v)
      if (!used[v] && (min_color == -1 || color[v] < min_color))
        min_color = color[v];
    for (int v = 0; v < n; ++v) {
      if (used[v] || color[v] != min_color) continue;
      size_t mark = seq.size();
      seq.push_back(color[v]);
      for (int i = 0; i < pos; ++i) seq.push_back(mult[v][placed[i]]);
      seq.push_back(loops[v]);
      bool less = strictly_less, prune = false;
      if (!less && have_best) {
        for (size_t i = mark; i < seq.size(); ++i) {
          if (seq[i] < best[i]) {
            less = true;
            break;
          }
          if (seq[i] > best[i]) {
            prune = true;
            break;
          }
        }
      }
      if (!prune) {
        used[v] = true;
        placed.push_back(v);
        dfs(pos + 1, less);
        placed.pop_back();
        used[v] = false;
      }
      seq.resize(mark);
    }
  }
};

inline CanonSearch canon_search(const Multigraph& g) {
  if (g.n() > kCanonicalVertexCap)
    throw BudgetError("canonical_form: vertex count exceeds cap");
  CanonSearch s;
  s.n = g.n();
  s.mult.assign(s.n, std::vector<int>(s.n, 0));
  s.loops.assign(s.n, 0);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v)
      ++s.loops[e.u];
    else {
      ++s.mult[e.u][e.v];
      ++s.mult[e.v][e.u];
    }
  }
  s.color = refined_colors(g);
  s.used.assign(s.n, false);
  s.run();
  return s;
}

}  // namespace detail

// Canonical byte string; equal strings exactly characterize isomorphism.
inline std::string canonical_form(const Multigraph& g) {
  detail::CanonSearch s = detail::canon_search(g);
  std::string out = std::to_string(g.n());
  out += '|';
  for (size_t i = 0; i < s.best.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.best[i]);
  }
  return out;
}

// The graph relabeled into its canonical placement order.
inline Multigraph canonical_graph(const Multigraph& g) {
  detail::CanonSearch s = detail::canon_search(g);
  std::vector<int> pos(g.n());
  for (int i = 0; i < g.n(); ++i) pos[s.best_order[i]] = i;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.m());
  for (const Edge& e : g.edges()) edges.push_back({pos[e.u], pos[e.v]});
  std::sort(edges.begin(), edges.end(),
            [](auto a, auto b) {
              auto na = std::minmax(a.first, a.second);
              auto nb = std::minmax(b.first, b.second);
              return na < nb;
            });
  return Multigraph(g.n(), edges);
}

inline bool is_isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  auto degs = [](const Multigraph& g) {
    std::vector<std::pair<int, int>> d;
    for (int v = 0; v < g.n(); ++v) d.push_back({g.degree(v), g.loop_count(v)});
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degs(a) != degs(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace relopt
