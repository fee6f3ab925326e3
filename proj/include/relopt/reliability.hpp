#pragma once
// Exact all-terminal reliability spectra.
//
// Every edge survives independently with probability p.  With i of the m
// edges removed, d_i counts the removals that disconnect the graph and
// c_i = C(m,i) - d_i counts those that leave it connected, so
//
//   R(G,p) = sum_i c_i p^(m-i) (1-p)^i,    U = 1 - R.
//
// Only i <= k+1 (k = m - n) needs enumeration: fewer than n-1 surviving
// edges cannot span, hence d_i = C(m,i) for i > k+1 once n >= 2.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relopt/connectivity.hpp"
#include "relopt/errors.hpp"
#include "relopt/multigraph.hpp"
#include "relopt/numbers.hpp"
#include "relopt/polynomial.hpp"

namespace relopt {

struct ProfileOptions {
  // Largest m for which exhaustive subset enumeration is attempted.
  // RELOPT_SUBSET_CAP overrides the default.
  int subset_cap = 24;

  ProfileOptions() {
    if (const char* env = std::getenv("RELOPT_SUBSET_CAP")) {
      int v = std::atoi(env);
      if (v > 0) subset_cap = v;
    }
  }
};

struct ReliabilityProfile {
  int n = 0;
  int m = 0;
  int k = 0;
  std::optional<int> lambda;  // edge connectivity; empty for n = 1
  std::vector<Int> d;         // d[0..m], d[0] = 0
  std::vector<Int> c;         // c[i] + d[i] = C(m,i)
  Int t = 0;                  // spanning trees; equals c[k+1] for n >= 2
};

namespace detail {

// Calls fn(mask) for every size-r subset of {0..m-1}.  r <= m <= 63.
template <typename Fn>
void for_each_combination(int m, int r, Fn&& fn) {
  if (r < 0 || r > m) return;
  if (r == 0) {
    fn(std::uint64_t{0});
    return;
  }
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= (std::uint64_t{1} << i);
    fn(mask);
    int j = r - 1;
    while (j >= 0 && idx[j] == m - r + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int t = j + 1; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

// Fraction-free Gaussian elimination; exact integer determinant.
inline Int bareiss_determinant(std::vector<std::vector<Int>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int col = 0; col < n - 1; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      sign = -sign;
    }
    for (int r = col + 1; r < n; ++r) {
      for (int cc = col + 1; cc < n; ++cc) {
        a[r][cc] = (a[col][col] * a[r][cc] - a[r][col] * a[col][cc]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[col][col];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

}  // namespace detail

// Matrix-tree count over the multiplicity-weighted Laplacian.  Loops are
// ignored.  Disconnected input yields 0.
inline Int spanning_tree_count(const Multigraph& g) {
  const int n = g.n();
  if (n == 1) return 1;
  std::vector<std::vector<Int>> lap(n - 1, std::vector<Int>(n - 1, 0));
  for (int e = 0; e < g.m(); ++e) {
    if (g.is_loop(e)) continue;
    const int u = g.edge(e).u;
    const int v = g.edge(e).v;
    if (u < n - 1) lap[u][u] += 1;
    if (v < n - 1) lap[v][v] += 1;
    if (u < n - 1 && v < n - 1) {
      lap[u][v] -= 1;
      lap[v][u] -= 1;
    }
  }
  return detail::bareiss_determinant(std::move(lap));
}

// Full spectrum by exhaustive enumeration of the informative subset sizes.
// Requires a connected graph and m within the cap.
inline ReliabilityProfile profile(const Multigraph& g,
                                  const ProfileOptions& opts = ProfileOptions()) {
  if (!is_connected(g)) throw Error("profile: graph is disconnected");
  const int n = g.n();
  const int m = g.m();
  if (m > opts.subset_cap || m > 63) {
    throw BudgetError("profile: m = " + std::to_string(m) +
                      " exceeds subset enumeration cap " +
                      std::to_string(std::min(opts.subset_cap, 63)));
  }
  ReliabilityProfile pr;
  pr.n = n;
  pr.m = m;
  pr.k = m - n;
  pr.d.assign(m + 1, 0);
  pr.c.assign(m + 1, 0);
  if (n == 1) {
    // A single vertex stays connected under any removal.
    for (int i = 0; i <= m; ++i) pr.c[i] = binomial(m, i);
    pr.t = 1;
    pr.lambda.reset();
    return pr;
  }
  const int top = std::min(pr.k + 1, m);
  for (int i = 1; i <= top; ++i) {
    long long bad = 0;
    detail::for_each_combination(m, i, [&](std::uint64_t mask) {
      if (!connected_without(g, mask)) ++bad;
    });
    pr.d[i] = bad;
  }
  for (int i = pr.k + 2; i <= m; ++i) pr.d[i] = binomial(m, i);
  for (int i = 0; i <= m; ++i) pr.c[i] = binomial(m, i) - pr.d[i];
  pr.t = (pr.k + 1 >= 0 && pr.k + 1 <= m) ? pr.c[pr.k + 1] : Int(0);

  const Int t_mt = spanning_tree_count(g);
  if (t_mt != pr.t) throw Error("profile: matrix-tree cross-check failed");

  auto lam = edge_connectivity(g);
  if (!lam) throw Error("profile: edge connectivity unavailable");
  pr.lambda = static_cast<int>(*lam);
  int first_nonzero = m + 1;
  for (int i = 0; i <= m; ++i) {
    if (pr.d[i] != 0) {
      first_nonzero = i;
      break;
    }
  }
  if (first_nonzero != *pr.lambda) {
    throw Error("profile: min-cut cross-check failed");
  }
  return pr;
}

inline Rat reliability_at(const ReliabilityProfile& pr, const Rat& p) {
  if (p < 0 || p > 1) throw Error("reliability_at: p outside [0,1]");
  const Rat q = Rat(1) - p;
  Rat acc = 0;
  std::vector<Rat> ppow(pr.m + 1), qpow(pr.m + 1);
  ppow[0] = 1;
  qpow[0] = 1;
  for (int i = 1; i <= pr.m; ++i) {
    ppow[i] = ppow[i - 1] * p;
    qpow[i] = qpow[i - 1] * q;
  }
  for (int i = 0; i <= pr.m; ++i) {
    if (pr.c[i] == 0) continue;
    acc += Rat(pr.c[i]) * ppow[pr.m - i] * qpow[i];
  }
  return acc;
}

inline Rat unreliability_at(const ReliabilityProfile& pr, const Rat& p) {
  return Rat(1) - reliability_at(pr, p);
}

// ---------------------------------------------------------------------------
// Bonds.

struct Bond {
  std::vector<int> edges;  // ascending edge ids
  std::uint64_t mask = 0;
  // One side of the bipartition induces a tree: the cut only detaches a
  // pendant-like piece (a chain segment, a star, a single distillate edge
  // with its subdivisions, ...).
  bool trivial = false;
};

struct BondOptions {
  int bipartition_cap = 20;  // bonds enumerated over 2^(n-1) vertex splits
  ProfileOptions profile;    // governs the d_{i,j} subset scan
  bool want_split = true;
  int split_max = -1;  // default min(k+2, m)
};

struct BondCatalog {
  std::vector<std::vector<Bond>> by_size;  // by_size[s] = bonds of size s
  std::vector<Int> b;                      // b[s] = #bonds of size s
  std::vector<Int> b_nontrivial;
  bool split_computed = false;
  // d_split[i][j] = #disconnecting i-subsets whose smallest contained bond
  // has size j (0 <= j <= i <= split_max).
  std::vector<std::vector<Int>> d_split;

  Int total_bonds() const {
    Int s = 0;
    for (const Int& x : b) s += x;
    return s;
  }
};

// Enumerates bonds as crossing sets of vertex bipartitions with both sides
// connected, then classifies disconnecting subsets by smallest contained
// bond.  Loops never cross a bipartition, so they never enter a bond.
inline BondCatalog bond_catalog(const Multigraph& g,
                                const BondOptions& opts = BondOptions()) {
  if (!is_connected(g)) throw Error("bond_catalog: graph is disconnected");
  const int n = g.n();
  const int m = g.m();
  if (n > opts.bipartition_cap || n > 63) {
    throw BudgetError("bond_catalog: n exceeds bipartition cap");
  }
  if (m > 63) throw BudgetError("bond_catalog: m exceeds mask width");

  BondCatalog cat;
  cat.by_size.assign(m + 1, {});
  cat.b.assign(m + 1, 0);
  cat.b_nontrivial.assign(m + 1, 0);

  if (n >= 2) {
    // Side containing vertex 0 fixes the bipartition orientation.
    const std::uint64_t all = (n >= 63) ? ~std::uint64_t{0}
                                        : ((std::uint64_t{1} << n) - 1);
    for (std::uint64_t side = 0; side < (std::uint64_t{1} << (n - 1)); ++side) {
      const std::uint64_t s0 = (side << 1) | 1u;  // vertex 0 always inside
      const std::uint64_t s1 = all & ~s0;
      if (s1 == 0) continue;
      // Both sides must induce connected subgraphs.
      UnionFind uf0(n), uf1(n);
      int in0 = 0, in1 = 0;  // intra-side edge counts
      std::uint64_t cut = 0;
      for (int e = 0; e < m; ++e) {
        const int u = g.edge(e).u;
        const int v = g.edge(e).v;
        const bool u0 = (s0 >> u) & 1;
        const bool v0 = (s0 >> v) & 1;
        if (u0 != v0) {
          cut |= (std::uint64_t{1} << e);
        } else if (u0) {
          if (!g.is_loop(e)) uf0.unite(u, v);
          ++in0;
        } else {
          if (!g.is_loop(e)) uf1.unite(u, v);
          ++in1;
        }
      }
      auto side_connected = [&](std::uint64_t s, UnionFind& uf) {
        int root = -1;
        for (int v = 0; v < n; ++v) {
          if (!((s >> v) & 1)) continue;
          if (root < 0) {
            root = uf.find(v);
          } else if (uf.find(v) != root) {
            return false;
          }
        }
        return true;
      };
      if (!side_connected(s0, uf0) || !side_connected(s1, uf1)) continue;
      Bond bd;
      bd.mask = cut;
      for (int e = 0; e < m; ++e) {
        if ((cut >> e) & 1) bd.edges.push_back(e);
      }
      const int n0 = std::popcount(s0);
      const int n1 = n - n0;
      // Loops inside a side count toward in0/in1 but a tree has none, so
      // the equality test stays correct.
      bd.trivial = (in0 == n0 - 1) || (in1 == n1 - 1);
      const int s = static_cast<int>(bd.edges.size());
      cat.by_size[s].push_back(bd);
      cat.b[s] += 1;
      if (!bd.trivial) cat.b_nontrivial[s] += 1;
    }
  }

  if (opts.want_split && m <= opts.profile.subset_cap && n >= 2) {
    const int k = m - n;
    int imax = opts.split_max >= 0 ? opts.split_max : k + 2;
    imax = std::min(imax, m);
    if (imax >= 0) {
      cat.d_split.assign(imax + 1, std::vector<Int>(imax + 1, 0));
      // Bonds ascending by size; first submask hit is the smallest bond.
      std::vector<const Bond*> order;
      for (int s = 0; s <= std::min(imax, m); ++s) {
        for (const Bond& bd : cat.by_size[s]) order.push_back(&bd);
      }
      for (int i = 1; i <= imax; ++i) {
        detail::for_each_combination(m, i, [&](std::uint64_t mask) {
          if (connected_without(g, mask)) return;
          for (const Bond* bd : order) {
            if ((bd->mask & ~mask) == 0) {
              cat.d_split[i][bd->edges.size()] += 1;
              return;
            }
          }
          // A disconnecting set always contains a bond of size <= its own.
          throw Error("bond_catalog: no contained bond found");
        });
      }
      cat.split_computed = true;
    }
  }
  return cat;
}

// ---------------------------------------------------------------------------
// Exact comparison.

enum class Verdict { kEqual, kADominates, kBDominates, kCrossing };

struct CrossingInterval {
  Rat lo;  // dyadic endpoints, neither a root
  Rat hi;
};

struct ComparisonVerdict {
  Verdict verdict = Verdict::kEqual;
  // Isolating intervals for the sign changes of R_A - R_B on (0,1);
  // nonempty exactly for kCrossing.
  std::vector<CrossingInterval> crossings;
  // True when the d-vector test alone settled the verdict.
  bool by_dominance = false;
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kEqual: return "EQUAL";
    case Verdict::kADominates: return "A_DOMINATES";
    case Verdict::kBDominates: return "B_DOMINATES";
    case Verdict::kCrossing: return "CROSSING";
  }
  return "?";
}

// R_A - R_B = sum_i (d_B[i] - d_A[i]) p^(m-i) (1-p)^i expanded exactly.
inline Poly reliability_difference(const ReliabilityProfile& a,
                                   const ReliabilityProfile& b) {
  const int m = a.m;
  Poly diff;
  for (int i = 0; i <= m; ++i) {
    const Int coef = b.d[i] - a.d[i];
    if (coef == 0) continue;
    // (1-p)^i expanded, then shifted by p^(m-i).
    Poly term(i + 1, 0);
    for (int j = 0; j <= i; ++j) {
      Int c = binomial(i, j);
      term[j] = (j % 2 == 0) ? c : -c;
    }
    Poly shifted(m - i, 0);
    shifted.insert(shifted.end(), term.begin(), term.end());
    shifted = poly_scale(shifted, coef);
    diff = poly_add(diff, shifted);
  }
  return diff;
}

// Dominance first (each basis term is positive on (0,1), so a coefficient-
// wise d advantage is an everywhere advantage); exact root isolation of the
// difference polynomial otherwise.
inline ComparisonVerdict compare(const ReliabilityProfile& a,
                                 const ReliabilityProfile& b) {
  if (a.n != b.n || a.m != b.m) {
    throw Error("compare: profiles have different (n, m)");
  }
  ComparisonVerdict out;
  if (a.d == b.d) {
    out.verdict = Verdict::kEqual;
    out.by_dominance = true;
    return out;
  }
  bool a_le = true, b_le = true;
  for (int i = 0; i <= a.m; ++i) {
    if (a.d[i] > b.d[i]) a_le = false;
    if (b.d[i] > a.d[i]) b_le = false;
  }
  if (a_le) {
    out.verdict = Verdict::kADominates;
    out.by_dominance = true;
    return out;
  }
  if (b_le) {
    out.verdict = Verdict::kBDominates;
    out.by_dominance = true;
    return out;
  }
  const Poly diff = reliability_difference(a, b);
  const auto roots = isolate_roots_01(diff);
  for (const RootInterval& r : roots) {
    if (r.sign_change) out.crossings.push_back({r.lo, r.hi});
  }
  if (!out.crossings.empty()) {
    out.verdict = Verdict::kCrossing;
    return out;
  }
  // No sign change: one graph wins everywhere off a finite touch set.
  // The difference has at most deg roots, so some 1/j below is off them.
  for (int j = 2; j <= static_cast<int>(diff.size()) + 2; ++j) {
    const Rat val = poly_eval(diff, Rat(1, j));
    if (val == 0) continue;
    out.verdict = val > 0 ? Verdict::kADominates : Verdict::kBDominates;
    return out;
  }
  throw Error("compare: difference vanished at every sample");
}

}  // namespace relopt
