#pragma once
// Exhaustive catalogs of connected multigraphs at a fixed size, one
// representative per isomorphism class, and certification of a candidate
// against every member of such a corpus. Generation walks non-decreasing
// edge-type sequences; a set of vertex permutations is narrowed along each
// path and any branch whose permuted image sorts lexicographically below
// the branch itself is cut. The cut is sound but not exhaustive (a
// permutation dropped for climbing above the prefix may still dip below it
// later), so some non-minimal sequences reach the leaves; the shared
// canonical-form map absorbs them, keeps merges across workers idempotent,
// and makes the survivor budget count isomorphism classes exactly.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "relopt/canonical.hpp"
#include "relopt/connectivity.hpp"
#include "relopt/errors.hpp"
#include "relopt/multigraph.hpp"
#include "relopt/numbers.hpp"
#include "relopt/reliability.hpp"

namespace relopt {

struct CorpusSpec {
  int n = 0;
  long long m = 0;
  // Budget caps, both reported against in BudgetError messages.
  long long max_candidates = 5'000'000;  // generation tree nodes visited
  long long max_survivors = 100'000;     // isomorphism classes kept
  int subset_cap = 24;                   // profile budget during verification
  bool allow_loops = true;
  int workers = 1;
};

inline void validate_corpus_spec(const CorpusSpec& spec) {
  if (spec.n < 1) throw Error("corpus: need at least one vertex");
  if (spec.m < 0) throw Error("corpus: negative edge count");
  if (spec.m < spec.n - 1)
    throw Error("corpus: fewer than n - 1 edges cannot connect");
  if (spec.n > kCanonicalVertexCap)
    throw Error("corpus: vertex count exceeds the canonical-form cap");
  if (spec.workers < 1) throw Error("corpus: need at least one worker");
}

struct CorpusResult {
  std::vector<Multigraph> graphs;  // canonical representatives, sorted
  long long candidates_visited = 0;
};

namespace detail {

// Edge types in lexicographic (u, v) order, u <= v; loops are the u == v
// types. A multigraph on labeled vertices is a non-decreasing sequence of
// type ids, and relabeling acts by permuting types and re-sorting.
struct TypeTable {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> last_touching;       // per vertex, largest type id on it
  std::vector<std::vector<int>> perms;  // non-identity maps: type -> type
};

inline TypeTable build_type_table(int n, bool allow_loops) {
  TypeTable tt;
  tt.n = n;
  std::vector<std::vector<int>> tid(n, std::vector<int>(n, -1));
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      if (u == v && !allow_loops) continue;
      tid[u][v] = tid[v][u] = static_cast<int>(tt.pairs.size());
      tt.pairs.push_back({u, v});
    }
  tt.last_touching.assign(n, -1);
  for (int t = 0; t < static_cast<int>(tt.pairs.size()); ++t) {
    tt.last_touching[tt.pairs[t].first] = t;
    tt.last_touching[tt.pairs[t].second] = t;
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<int> map(tt.pairs.size());
    for (int t = 0; t < static_cast<int>(tt.pairs.size()); ++t) {
      const auto [u, v] = tt.pairs[t];
      const int a = std::min(perm[u], perm[v]);
      const int b = std::max(perm[u], perm[v]);
      map[t] = tid[a][b];
    }
    tt.perms.push_back(std::move(map));
  }
  return tt;
}

// One worker's depth-first sweep below a fixed first type. alive holds the
// permutations whose image of the prefix still ties it exactly; appending
// type t keeps a permutation with map[t] == t, discards map[t] > t, and
// kills the whole child when any map[t] < t, because the image would sort
// strictly below every completion.
struct CorpusSearch {
  const TypeTable* tt = nullptr;
  const CorpusSpec* spec = nullptr;
  std::atomic<long long>* visited = nullptr;
  std::atomic<int>* budget_hit = nullptr;  // 0 none, 1 candidates, 2 survivors
  std::map<std::string, Multigraph>* sink = nullptr;
  std::mutex* sink_lock = nullptr;
  std::vector<int> seq;

  bool leaf() {
    UnionFind uf(spec->n);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(seq.size());
    for (int t : seq) {
      edges.push_back(tt->pairs[t]);
      uf.unite(tt->pairs[t].first, tt->pairs[t].second);
    }
    if (uf.components() != 1) return true;
    const Multigraph g(spec->n, edges);
    std::string form = canonical_form(g);
    Multigraph rep = canonical_graph(g);
    const std::lock_guard<std::mutex> hold(*sink_lock);
    const bool fresh =
        sink->emplace(std::move(form), std::move(rep)).second;
    if (fresh &&
        static_cast<long long>(sink->size()) > spec->max_survivors) {
      budget_hit->store(2, std::memory_order_relaxed);
      return false;
    }
    return true;
  }

  bool dfs(int t_min, const std::vector<int>& alive) {
    if (visited->fetch_add(1, std::memory_order_relaxed) >=
        spec->max_candidates) {
      budget_hit->store(1, std::memory_order_relaxed);
      return false;
    }
    if (static_cast<long long>(seq.size()) == spec->m) return leaf();
    UnionFind uf(spec->n);
    std::vector<char> touched(spec->n, 0);
    for (int t : seq) {
      uf.unite(tt->pairs[t].first, tt->pairs[t].second);
      touched[tt->pairs[t].first] = touched[tt->pairs[t].second] = 1;
    }
    const long long rem = spec->m - static_cast<long long>(seq.size());
    if (rem < uf.components() - 1) return true;
    for (int v = 0; v < spec->n; ++v)
      if (!touched[v] && tt->last_touching[v] < t_min) return true;
    const int types = static_cast<int>(tt->pairs.size());
    std::vector<int> child;
    for (int t = t_min; t < types; ++t) {
      child.clear();
      bool minimal = true;
      for (int p : alive) {
        const int image = tt->perms[p][t];
        if (image < t) {
          minimal = false;
          break;
        }
        if (image == t) child.push_back(p);
      }
      if (!minimal) continue;
      seq.push_back(t);
      const bool ok = dfs(t, child);
      seq.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace detail

// One canonical representative of every connected multigraph class with
// spec.n vertices and spec.m edges, sorted by canonical form. Workers
// partition the search by first edge type; output is identical for every
// worker count.
inline CorpusResult enumerate_connected(const CorpusSpec& spec) {
  validate_corpus_spec(spec);
  const detail::TypeTable tt = detail::build_type_table(spec.n,
                                                        spec.allow_loops);
  const int types = static_cast<int>(tt.pairs.size());
  std::vector<int> all_perms(tt.perms.size());
  for (std::size_t i = 0; i < tt.perms.size(); ++i)
    all_perms[i] = static_cast<int>(i);

  std::atomic<long long> visited{0};
  std::atomic<int> budget_hit{0};
  std::map<std::string, Multigraph> sink;
  std::mutex sink_lock;

  auto sweep = [&](int worker) {
    detail::CorpusSearch cs;
    cs.tt = &tt;
    cs.spec = &spec;
    cs.visited = &visited;
    cs.budget_hit = &budget_hit;
    cs.sink = &sink;
    cs.sink_lock = &sink_lock;
    if (spec.m == 0) {
      if (worker == 0) cs.dfs(0, all_perms);
    }
    for (int t0 = worker; t0 < types; t0 += spec.workers) {
      if (spec.m == 0) break;
      if (budget_hit.load(std::memory_order_relaxed) != 0) break;
      std::vector<int> child;
      bool minimal = true;
      for (int p : all_perms) {
        const int image = tt.perms[p][t0];
        if (image < t0) {
          minimal = false;
          break;
        }
        if (image == t0) child.push_back(p);
      }
      if (!minimal) continue;
      cs.seq.assign(1, t0);
      if (!cs.dfs(t0, child)) break;
    }
  };

  if (spec.workers == 1) {
    sweep(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < spec.workers; ++w) pool.emplace_back(sweep, w);
    for (std::thread& th : pool) th.join();
  }

  if (budget_hit.load() == 1)
    throw BudgetError("corpus: candidate budget " +
                      std::to_string(spec.max_candidates) + " exhausted");
  if (budget_hit.load() == 2)
    throw BudgetError("corpus: survivor budget " +
                      std::to_string(spec.max_survivors) + " exhausted");

  CorpusResult out;
  out.candidates_visited = visited.load();
  out.graphs.reserve(sink.size());
  for (auto& entry : sink) out.graphs.push_back(std::move(entry.second));
  return out;
}

// ---------------------------------------------------------------------------
// Candidate certification.

enum class OptimalityVerdict {
  kUniquelyOptimal,  // strictly above every non-isomorphic member
  kUmrgNotUnique,    // never beaten or crossed, but tied with someone
  kNotUmrg,          // beaten or crossed; corpus may still hold a winner
  kNoUmrgExists,     // crossed while being the unique near-1 leader, so
                     // no member of the corpus dominates all others
};

inline const char* to_string(OptimalityVerdict v) {
  switch (v) {
    case OptimalityVerdict::kUniquelyOptimal: return "UNIQUELY_OPTIMAL";
    case OptimalityVerdict::kUmrgNotUnique: return "UMRG_NOT_UNIQUE";
    case OptimalityVerdict::kNotUmrg: return "NOT_UMRG";
    case OptimalityVerdict::kNoUmrgExists: return "NO_UMRG_EXISTS";
  }
  return "?";
}

struct CrossingRecord {
  std::string form;  // canonical form of the crossing member
  std::vector<CrossingInterval> intervals;
};

struct VerificationReport {
  std::string candidate_form;
  long long corpus_size = 0;  // isomorphism classes, candidate included
  // Non-isomorphic members by comparison outcome.
  long long dominated = 0;  // candidate strictly better everywhere
  long long equal = 0;      // identical reliability polynomial
  long long beaten = 0;     // member at least as good, better somewhere
  long long crossing = 0;
  std::vector<CrossingRecord> crossing_members;
  OptimalityVerdict verdict = OptimalityVerdict::kNotUmrg;
};

namespace detail {

inline bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Close to p = 1 the unreliability ordering is lexicographic in the d
// vector, so a uniform winner must be the unique lex minimum; if that
// minimum is itself crossed, the corpus has no uniform winner.
inline VerificationReport verify_against(const Multigraph& candidate,
                                         const std::vector<Multigraph>& corpus,
                                         int subset_cap) {
  ProfileOptions po;
  po.subset_cap = subset_cap;
  VerificationReport rep;
  rep.candidate_form = canonical_form(candidate);
  rep.corpus_size = static_cast<long long>(corpus.size());
  const ReliabilityProfile mine = profile(candidate, po);
  bool lex_leader = true;
  for (const Multigraph& other : corpus) {
    if (canonical_form(other) == rep.candidate_form) continue;
    const ReliabilityProfile theirs = profile(other, po);
    if (!lex_less(mine.d, theirs.d)) lex_leader = false;
    const ComparisonVerdict cv = compare(mine, theirs);
    switch (cv.verdict) {
      case Verdict::kADominates:
        rep.dominated += 1;
        break;
      case Verdict::kEqual:
        rep.equal += 1;
        break;
      case Verdict::kBDominates:
        rep.beaten += 1;
        break;
      case Verdict::kCrossing:
        rep.crossing += 1;
        rep.crossing_members.push_back(
            {canonical_form(other), cv.crossings});
        break;
    }
  }
  if (rep.beaten == 0 && rep.crossing == 0) {
    rep.verdict = rep.equal == 0 ? OptimalityVerdict::kUniquelyOptimal
                                 : OptimalityVerdict::kUmrgNotUnique;
  } else if (lex_leader && rep.beaten == 0) {
    rep.verdict = OptimalityVerdict::kNoUmrgExists;
  } else {
    rep.verdict = OptimalityVerdict::kNotUmrg;
  }
  return rep;
}

}  // namespace detail

// Certification against the full corpus at the candidate's size.
inline VerificationReport verify_uniquely_optimal(const Multigraph& candidate,
                                                  const CorpusSpec& spec) {
  validate_corpus_spec(spec);
  if (candidate.n() != spec.n ||
      static_cast<long long>(candidate.m()) != spec.m ||
      !is_connected(candidate))
    throw Error("verify: candidate does not belong to the corpus family");
  const CorpusResult corpus = enumerate_connected(spec);
  const std::string form = canonical_form(candidate);
  bool present = false;
  for (const Multigraph& g : corpus.graphs)
    present = present || canonical_form(g) == form;
  if (!present) throw Error("verify: candidate missing from its own corpus");
  return detail::verify_against(candidate, corpus.graphs, spec.subset_cap);
}

// Certification against an explicit member list; the verdict then speaks
// only about that list. Meant for curated sub-corpora whose full family
// blows the generation budget.
inline VerificationReport verify_uniquely_optimal(
    const Multigraph& candidate, const std::vector<Multigraph>& corpus,
    int subset_cap = 24) {
  if (!is_connected(candidate))
    throw Error("verify: candidate is disconnected");
  for (const Multigraph& g : corpus)
    if (g.n() != candidate.n() || g.m() != candidate.m())
      throw Error("verify: corpus member of a different size");
  return detail::verify_against(candidate, corpus, subset_cap);
}

// ---------------------------------------------------------------------------
// Pointwise winners.

// All corpus members attaining the maximum reliability at p, by exact
// rational evaluation; canonical representatives in canonical-form order.
inline std::vector<Multigraph> p_optimal_set(const CorpusSpec& spec,
                                             const Rat& p) {
  validate_corpus_spec(spec);
  if (!(p > 0 && p < 1))
    throw Error("p_optimal_set: p must lie strictly between 0 and 1");
  ProfileOptions po;
  po.subset_cap = spec.subset_cap;
  const CorpusResult corpus = enumerate_connected(spec);
  std::vector<Multigraph> best;
  Rat top = -1;
  for (const Multigraph& g : corpus.graphs) {
    const Rat r = reliability_at(profile(g, po), p);
    if (r > top) {
      top = r;
      best.clear();
    }
    if (r == top) best.push_back(g);
  }
  return best;
}

}  // namespace relopt
