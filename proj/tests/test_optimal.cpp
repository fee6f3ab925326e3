#include "relopt/optimal.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "relopt/canonical.hpp"
#include "relopt/connectivity.hpp"
#include "relopt/distillation.hpp"
#include "relopt/errors.hpp"
#include "relopt/multigraph.hpp"
#include "relopt/polynomial.hpp"
#include "relopt/reliability.hpp"
#include "test_util.hpp"

using namespace relopt;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<int> degree_multiset(const Multigraph& g) {
  std::vector<int> d(g.n());
  for (int v = 0; v < g.n(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<long long> chain_multiset(const Multigraph& g) {
  std::vector<long long> w = proper_distillation(g).wd.w;
  std::sort(w.begin(), w.end());
  return w;
}

bool simple_graph(const Multigraph& g) {
  auto gi = girth(g);
  return !gi || *gi >= 3;
}

// Per-vertex-pair multisets of chain weights; loops are kept on the diagonal.
std::vector<std::vector<std::vector<long long>>> weight_matrix(
    const WeightedDistillation& wd) {
  int n = wd.d.n();
  std::vector<std::vector<std::vector<long long>>> M(
      n, std::vector<std::vector<long long>>(n));
  for (int id = 0; id < wd.d.m(); ++id) {
    const Edge& e = wd.d.edge(id);
    M[e.u][e.v].push_back(wd.w[id]);
    if (e.u != e.v) M[e.v][e.u].push_back(wd.w[id]);
  }
  for (auto& row : M)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  return M;
}

// Subdivision-aware isomorphism: equal proper distillations under some
// relabeling, chain weights included. Avoids canonicalizing the full graph,
// so it works for any n as long as the distillate stays small.
bool subdivision_isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  ProperDistillation pa = proper_distillation(a);
  ProperDistillation pb = proper_distillation(b);
  int n = pa.wd.d.n();
  if (n != pb.wd.d.n() || pa.wd.d.m() != pb.wd.d.m()) return false;
  auto wa = pa.wd.w, wb = pb.wd.w;
  std::sort(wa.begin(), wa.end());
  std::sort(wb.begin(), wb.end());
  if (wa != wb) return false;
  auto Ma = weight_matrix(pa.wd);
  auto Mb = weight_matrix(pb.wd);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; ok && u < n; ++u)
      for (int v = u; ok && v < n; ++v)
        if (Ma[u][v] != Mb[p[u]][p[v]]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

Multigraph realize_k33(std::vector<long long> w) {
  return realize_weak_subdivision({k33_graph(), std::move(w)});
}

// d-vector of a coordinatewise below d-vector of b, at least one strict.
bool strictly_dominates(const ReliabilityProfile& a,
                        const ReliabilityProfile& b) {
  bool strict = false;
  for (int i = 0; i <= a.m; ++i) {
    if (a.d[i] > b.d[i]) return false;
    if (a.d[i] < b.d[i]) strict = true;
  }
  return strict;
}

bool exists_single_insertion(const Multigraph& g, const Multigraph& target) {
  for (int e = 0; e < g.m(); ++e)
    if (subdivision_isomorphic(insert_vertex(g, e), target)) return true;
  return false;
}

}  // namespace

TEST_CASE("catalog members carry their defining shapes") {
  struct Row {
    Multigraph g;
    int n, m, girth_want;
  };
  const std::vector<Row> rows = {
      {complete_graph(4), 4, 6, 3}, {prism_graph(), 6, 9, 3},
      {k33_graph(), 6, 9, 4},       {wagner_graph(), 8, 12, 4},
      {petersen_graph(), 10, 15, 5},
  };
  for (const Row& row : rows) {
    CAPTURE(row.n, row.m);
    REQUIRE(row.g.n() == row.n);
    REQUIRE(row.g.m() == row.m);
    for (int v = 0; v < row.g.n(); ++v) REQUIRE(row.g.degree(v) == 3);
    REQUIRE(detail::three_edge_connected(row.g));
    REQUIRE(girth(row.g) == row.girth_want);
  }
  // The ring drawing used for the uneven exceedance-5 weightings really is
  // the same graph.
  REQUIRE(is_isomorphic(detail::petersen_ring_form(), petersen_graph()));
}

TEST_CASE("optimal specs report the centered residue") {
  OptimalSpec s = optimal_spec(2, 14);
  CHECK(s.modulus == 6);
  CHECK(s.q == 2);
  CHECK(s.r == 2);
  CHECK(s.n == 12);
  CHECK(s.unique);
  CHECK_FALSE(s.conjectural);
  CHECK_THAT(s.rule, ContainsSubstring("opposite"));

  s = optimal_spec(3, 14);
  CHECK(s.q == 2);
  CHECK(s.r == -4);
  CHECK_THAT(s.rule, ContainsSubstring("two disjoint 2-edge paths"));

  s = optimal_spec(3, 12);
  CHECK(s.r == 3);
  CHECK_THAT(s.rule, ContainsSubstring("matching"));

  s = optimal_spec(1, 11);
  CHECK(s.modulus == 3);
  CHECK(s.q == 4);
  CHECK(s.r == -1);

  s = optimal_spec(-1, 5);
  CHECK_FALSE(s.unique);
  CHECK(s.modulus == 0);
  CHECK(s.n == 6);

  s = optimal_spec(0, 7);
  CHECK(s.unique);

  CHECK_THROWS_WITH(optimal_spec(4, 20), ContainsSubstring("conjectural"));
  CHECK_THROWS_WITH(optimal_spec(2, 2), ContainsSubstring("too few"));
  CHECK_THROWS_AS(optimal_spec(3, 3), Error);
}

TEST_CASE("small optimal graphs land on the expected forms") {
  for (int m : {1, 2, 3, 4, 5}) {
    Multigraph t = optimal_graph(-1, m);
    REQUIRE(t.n() == m + 1);
    REQUIRE(t.m() == m);
    REQUIRE(is_connected(t));
    REQUIRE(spanning_tree_count(t) == 1);
  }
  for (int m : {1, 2, 5, 9}) {
    Multigraph c = optimal_graph(0, m);
    REQUIRE(is_isomorphic(c, test_util::cycle(m)));
  }

  // Exceedance 1: parallel chains as even as possible.
  REQUIRE(optimal_graph(1, 2).n() == 1);
  REQUIRE(is_isomorphic(optimal_graph(1, 3), dipole(3)));
  CHECK(chain_multiset(optimal_graph(1, 11)) ==
        std::vector<long long>{3, 4, 4});

  // Exceedance 2.
  REQUIRE(is_isomorphic(optimal_graph(2, 6), complete_graph(4)));
  REQUIRE(is_isomorphic(optimal_graph(2, 4), dipole(4)));
  REQUIRE(optimal_graph(2, 3).n() == 1);

  // Exceedance 3, with the size-14 arrangement pinned explicitly.
  REQUIRE(is_isomorphic(optimal_graph(3, 9), k33_graph()));
  REQUIRE(optimal_graph(3, 4).n() == 1);
  REQUIRE(is_isomorphic(optimal_graph(3, 14),
                        realize_k33({1, 2, 2, 1, 2, 2, 2, 1, 1})));
}

TEST_CASE("every optimal graph is a balanced subdivision of its distillate") {
  struct Lane {
    int k;
    long long lo, hi;
    Multigraph member;
  };
  const std::vector<Lane> lanes = {
      {1, 3, 20, dipole(3)},
      {2, 6, 24, complete_graph(4)},
      {3, 9, 27, k33_graph()},
  };
  for (const Lane& lane : lanes) {
    for (long long m = lane.lo; m <= lane.hi; ++m) {
      CAPTURE(lane.k, m);
      Multigraph g = optimal_graph(lane.k, m);
      REQUIRE(is_connected(g));
      REQUIRE(g.n() == m - lane.k);
      REQUIRE(g.exceedance() == lane.k);
      ProperDistillation pd = proper_distillation(g);
      REQUIRE(is_isomorphic(pd.wd.d, lane.member));
      BalanceStats st = balance_stats(pd.wd);
      REQUIRE(st.balanced);
      REQUIRE(st.pi_v_balanced);
    }
  }
}

TEST_CASE("placement enumeration confirms each arrangement rule") {
  struct Family {
    int k;
    long long m;
    int pick;      // how many chains deviate
    int skipped;   // light sets whose contraction would close a cycle
  };
  const std::vector<Family> families = {
      {2, 8, 2, 0},  {2, 4, 2, 0},  {2, 9, 3, 0},
      {3, 11, 2, 0}, {3, 7, 2, 0},  {3, 12, 3, 0},
      {3, 6, 3, 0},  {3, 13, 4, 0}, {3, 5, 4, 9},
  };
  for (const Family& fam : families) {
    CAPTURE(fam.k, fam.m);
    const Multigraph base =
        fam.k == 2 ? complete_graph(4) : k33_graph();
    const OptimalSpec spec = optimal_spec(fam.k, fam.m);
    REQUIRE(std::abs(spec.r) == fam.pick);
    const Multigraph opt = optimal_graph(fam.k, fam.m);
    const ReliabilityProfile opt_pr = profile(opt);

    int skipped = 0, matched = 0, total = 0;
    detail::for_each_combination(base.m(), fam.pick, [&](std::uint64_t mask) {
      std::vector<long long> w(base.m(), spec.q);
      for (int id = 0; id < base.m(); ++id)
        if (mask & (std::uint64_t{1} << id)) w[id] += spec.r > 0 ? 1 : -1;
      Multigraph g;
      try {
        g = realize_weak_subdivision({base, w});
      } catch (const Error&) {
        ++skipped;  // zero-weight cycle: not a subdivision at all
        return;
      }
      ++total;
      ReliabilityProfile pr = profile(g);
      CHECK(pr.d[2] == opt_pr.d[2]);  // d2 never depends on the arrangement
      if (is_isomorphic(g, opt)) {
        ++matched;
        REQUIRE(pr.d == opt_pr.d);
      } else {
        // Everything else is strictly beaten in every coefficient.
        REQUIRE(strictly_dominates(opt_pr, pr));
      }
    });
    CHECK(skipped == fam.skipped);
    REQUIRE(matched >= 1);
    REQUIRE(total >= matched);
  }

  // A single deviating chain can sit anywhere.
  for (auto [k, m] : std::vector<std::pair<int, long long>>{
           {2, 5}, {2, 7}, {3, 8}, {3, 10}}) {
    CAPTURE(k, m);
    const Multigraph base = k == 2 ? complete_graph(4) : k33_graph();
    const OptimalSpec spec = optimal_spec(k, m);
    REQUIRE(std::abs(spec.r) == 1);
    const Multigraph opt = optimal_graph(k, m);
    for (int id = 0; id < base.m(); ++id) {
      std::vector<long long> w(base.m(), spec.q);
      w[id] += spec.r;
      REQUIRE(is_isomorphic(realize_weak_subdivision({base, w}), opt));
    }
  }
}

TEST_CASE("vertex insertion chains consecutive sizes for small exceedance") {
  for (long long m = 3; m <= 16; ++m) {
    CAPTURE(m);
    REQUIRE(exists_single_insertion(optimal_graph(1, m),
                                    optimal_graph(1, m + 1)));
  }
  for (long long m = 6; m <= 18; ++m) {
    CAPTURE(m);
    REQUIRE(exists_single_insertion(optimal_graph(2, m),
                                    optimal_graph(2, m + 1)));
  }
  // Exceedance 3 chains up fine through size 14 and then breaks: no single
  // insertion into the size-14 graph reaches the size-15 one.
  for (long long m = 9; m <= 13; ++m) {
    CAPTURE(m);
    REQUIRE(exists_single_insertion(optimal_graph(3, m),
                                    optimal_graph(3, m + 1)));
  }
  REQUIRE_FALSE(
      exists_single_insertion(optimal_graph(3, 14), optimal_graph(3, 15)));
}

TEST_CASE("the matching-cycling construction and where it breaks") {
  REQUIRE_THROWS_AS(wang_k3_graph(8), Error);
  REQUIRE(is_isomorphic(wang_k3_graph(9), k33_graph()));

  // Size 14: one full matching lengthened plus two chains of the second.
  REQUIRE(is_isomorphic(wang_k3_graph(14),
                        realize_k33({2, 2, 1, 1, 2, 2, 1, 1, 2})));

  for (long long m = 9; m <= 23; ++m) {
    CAPTURE(m);
    Multigraph w = wang_k3_graph(m);
    REQUIRE(is_connected(w));
    REQUIRE(w.exceedance() == 3);
    bool agree = subdivision_isomorphic(w, optimal_graph(3, m));
    REQUIRE(agree == (m % 9 != 5));
  }

  // Any choice inside a partially used matching yields the same graph.
  for (int id : {0, 4, 8}) {
    std::vector<long long> w(9, 1);
    w[id] = 2;
    REQUIRE(subdivision_isomorphic(realize_k33(w), wang_k3_graph(10)));
  }
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 4}, {0, 8}, {4, 8}}) {
    std::vector<long long> w(9, 1);
    w[a] = w[b] = 2;
    REQUIRE(subdivision_isomorphic(realize_k33(w), wang_k3_graph(11)));
  }
  for (int id : {1, 5, 6}) {
    std::vector<long long> w = {2, 1, 1, 1, 2, 1, 1, 1, 2};
    w[id] = 2;
    REQUIRE(subdivision_isomorphic(realize_k33(w), wang_k3_graph(13)));
  }
}

TEST_CASE("handcuffs pair crosses at one half") {
  NamedPair pair = named_pair("handcuffs");
  REQUIRE(pair.first.n() == 10);
  REQUIRE(pair.first.m() == 11);
  REQUIRE(pair.second.n() == 10);
  REQUIRE(pair.second.m() == 11);
  REQUIRE(find_bridges(pair.first).size() == 1);
  REQUIRE(find_bridges(pair.second).empty());

  ReliabilityProfile a = profile(pair.first);
  ReliabilityProfile b = profile(pair.second);
  // R_first - R_second = p^9 (1-p) (1-2p): the bridged graph wins above 1/2.
  Poly expect(12, 0);
  expect[9] = 1;
  expect[10] = -3;
  expect[11] = 2;
  REQUIRE(reliability_difference(a, b) == expect);
  REQUIRE(reliability_at(a, Rat(1, 2)) == reliability_at(b, Rat(1, 2)));
  ComparisonVerdict v = compare(a, b);
  REQUIRE(v.verdict == Verdict::kCrossing);
}

TEST_CASE("rearranged rails trade the small-p and large-p regimes") {
  CHECK_THROWS_AS(named_pair("romero_safe", 1), Error);
  NamedPair pair = named_pair("romero_safe", 2);
  REQUIRE(pair.first.n() == 16);
  REQUIRE(pair.first.m() == 20);
  REQUIRE(pair.second.n() == 16);
  REQUIRE(pair.second.m() == 20);
  REQUIRE(is_isomorphic(proper_distillation(pair.first).wd.d, wagner_graph()));
  REQUIRE(is_isomorphic(proper_distillation(pair.second).wd.d, wagner_graph()));
  REQUIRE(chain_multiset(pair.first) == chain_multiset(pair.second));

  ReliabilityProfile a = profile(pair.first);
  ReliabilityProfile b = profile(pair.second);
  REQUIRE(a.d[2] == b.d[2]);
  REQUIRE(a.d[3] < b.d[3]);  // first is better as p -> 1
  REQUIRE(b.t > a.t);        // second is better as p -> 0
  REQUIRE(reliability_at(a, Rat(99, 100)) > reliability_at(b, Rat(99, 100)));
  REQUIRE(reliability_at(a, Rat(1, 100)) < reliability_at(b, Rat(1, 100)));
  REQUIRE(compare(a, b).verdict == Verdict::kCrossing);
}

TEST_CASE("rail-to-rung move flips sign at large scale") {
  CHECK_THROWS_AS(named_pair("wagner_rails", 0), Error);
  for (long long q : {1, 2, 8, 9}) {
    CAPTURE(q);
    NamedPair pair = named_pair("wagner_rails", q);
    REQUIRE(pair.first.n() == 12 * q - 4);
    REQUIRE(pair.first.m() == 12 * q);
    REQUIRE(pair.second.n() == 12 * q - 4);
    REQUIRE(pair.second.m() == 12 * q);
    Int diff = spanning_tree_count(pair.second) -
               spanning_tree_count(pair.first);
    REQUIRE(diff == Int(7 * q - 51) * Int(q) * Int(q) * Int(q));
  }
  for (long long q : {1, 2, 3}) {
    Int t = spanning_tree_count(named_pair("wagner_rails", q).first);
    Int q5 = Int(q) * Int(q) * Int(q) * Int(q) * Int(q);
    REQUIRE(t == Int(392) * q5);
  }
}

TEST_CASE("the two near-tied simple (6,11)-graphs") {
  NamedPair pair = named_pair("petersen_6_11");
  const Multigraph& g = pair.first;
  const Multigraph& h = pair.second;
  for (const Multigraph* x : {&g, &h}) {
    REQUIRE(x->n() == 6);
    REQUIRE(x->m() == 11);
    REQUIRE(simple_graph(*x));
    REQUIRE(detail::three_edge_connected(*x));
    REQUIRE(degree_multiset(*x) == std::vector<int>{3, 3, 4, 4, 4, 4});
  }
  REQUIRE_FALSE(is_isomorphic(g, h));
  REQUIRE(spanning_tree_count(g) == 224);
  REQUIRE(spanning_tree_count(h) == 225);

  ReliabilityProfile a = profile(g);
  ReliabilityProfile b = profile(h);
  REQUIRE(a.d[3] == b.d[3]);
  REQUIRE(a.d[4] < b.d[4]);  // g wins as p -> 1, h wins as p -> 0
  REQUIRE(compare(a, b).verdict == Verdict::kCrossing);

  // Both arise from the exceedance-5 catalog member by contracting four
  // edges, so both are weak subdivisions of it.
  const Multigraph p = petersen_graph();
  auto contracts_to = [&](const Multigraph& target) {
    bool found = false;
    detail::for_each_combination(p.m(), 4, [&](std::uint64_t mask) {
      if (found) return;
      UnionFind uf(p.n());
      std::vector<int> ids;
      for (int id = 0; id < p.m(); ++id)
        if (mask & (std::uint64_t{1} << id)) {
          if (!uf.unite(p.edge(id).u, p.edge(id).v)) return;
          ids.push_back(id);
        }
      Multigraph cur = p;
      std::vector<int> map(p.m());
      std::iota(map.begin(), map.end(), 0);
      for (int id : ids) {
        auto [next, em] = contract_edge(cur, map[id]);
        cur = std::move(next);
        for (int j = 0; j < p.m(); ++j)
          if (map[j] >= 0) map[j] = em.to_new[map[j]];
      }
      if (is_isomorphic(cur, target)) found = true;
    });
    return found;
  };
  REQUIRE(contracts_to(g));
  REQUIRE(contracts_to(h));
}

TEST_CASE("reconnection counterexample keeps its tree advantage") {
  NamedPair pair = named_pair("pi3_counterexample");
  REQUIRE(pair.first.n() == 14);
  REQUIRE(pair.first.m() == 17);
  REQUIRE(pair.second.n() == 14);
  REQUIRE(pair.second.m() == 17);
  REQUIRE(is_isomorphic(proper_distillation(pair.first).wd.d, prism_graph()));
  REQUIRE(is_isomorphic(proper_distillation(pair.second).wd.d, k33_graph()));
  REQUIRE(chain_multiset(pair.first) ==
          std::vector<long long>{1, 1, 1, 1, 1, 1, 1, 5, 5});
  REQUIRE(chain_multiset(pair.first) == chain_multiset(pair.second));

  ReliabilityProfile a = profile(pair.first);
  ReliabilityProfile b = profile(pair.second);
  REQUIRE(a.t - b.t == 50);
  REQUIRE(b.d[4] - a.d[4] == 50);
}

TEST_CASE("chain rebalancing counterexample loses a spanning tree") {
  NamedPair pair = named_pair("k4_counterexample");
  REQUIRE(pair.first.n() == 12);
  REQUIRE(pair.first.m() == 14);
  REQUIRE(pair.second.n() == 12);
  REQUIRE(pair.second.m() == 14);
  REQUIRE(chain_multiset(pair.first) ==
          std::vector<long long>{1, 1, 1, 3, 3, 5});
  REQUIRE(chain_multiset(pair.second) ==
          std::vector<long long>{1, 1, 2, 2, 3, 5});

  ReliabilityProfile a = profile(pair.first);
  ReliabilityProfile b = profile(pair.second);
  REQUIRE(a.t - b.t == 1);           // the less balanced graph has one more
  REQUIRE(b.d[3] - a.d[3] == 1);
  REQUIRE(a.d[2] - b.d[2] == 1);     // and pays for it in 2-disconnections
}

TEST_CASE("named pair lookup rejects bad input") {
  CHECK_THROWS_WITH(named_pair("no_such_pair"), ContainsSubstring("unknown"));
  CHECK_THROWS_WITH(named_pair("handcuffs", 3),
                    ContainsSubstring("no size parameter"));
  CHECK_THROWS_AS(named_pair("petersen_6_11", 2), Error);
  CHECK(named_pair_names().size() == 6);
}

TEST_CASE("conjectural families stay balanced and honest") {
  REQUIRE(is_isomorphic(conjectural_graph(4, 12), wagner_graph()));
  REQUIRE(is_isomorphic(conjectural_graph(5, 15), petersen_graph()));

  OptimalSpec s = conjectural_spec(5, 20, ConjecturalFlavor::kAthSobelA);
  CHECK(s.conjectural);
  CHECK_FALSE(s.unique);
  CHECK(s.q == 1);

  for (long long m = 13; m <= 22; ++m) {
    CAPTURE(m);
    Multigraph g = conjectural_graph(4, m);
    REQUIRE(is_connected(g));
    REQUIRE(g.exceedance() == 4);
    ProperDistillation pd = proper_distillation(g);
    REQUIRE(is_isomorphic(pd.wd.d, wagner_graph()));
    BalanceStats st = balance_stats(pd.wd);
    REQUIRE(st.balanced);
  }
  // Spot-pin the deviation order: size 17 puts the extras on an alternating
  // rail set plus one rung.
  {
    std::vector<long long> w(12, 1);
    for (int id : {0, 2, 4, 6, 8}) w[id] = 2;
    REQUIRE(subdivision_isomorphic(
        conjectural_graph(4, 17),
        realize_weak_subdivision({wagner_graph(), w})));
  }
  for (long long m = 15; m <= 22; ++m) {
    CAPTURE(m);
    Multigraph g = conjectural_graph(5, m);
    REQUIRE(is_connected(g));
    REQUIRE(g.exceedance() == 5);
    ProperDistillation pd = proper_distillation(g);
    REQUIRE(is_isomorphic(pd.wd.d, petersen_graph()));
    BalanceStats st = balance_stats(pd.wd);
    REQUIRE(st.balanced);
    REQUIRE(st.pi_v_balanced);
  }

  CHECK_THROWS_WITH(conjectural_spec(3, 12), ContainsSubstring("optimal_graph"));
  CHECK_THROWS_AS(conjectural_spec(4, 12, ConjecturalFlavor::kAthSobelA),
                  Error);
  CHECK_THROWS_AS(conjectural_spec(5, 21, ConjecturalFlavor::kAthSobelA),
                  Error);
  CHECK_THROWS_AS(conjectural_spec(5, 20, ConjecturalFlavor::kAthSobelB),
                  Error);
  CHECK_THROWS_AS(conjectural_spec(5, 5), Error);
  CHECK(parse_conjectural_flavor("ath_sobel_b") ==
        ConjecturalFlavor::kAthSobelB);
  CHECK(std::string(flavor_name(ConjecturalFlavor::kBalanced)) == "balanced");
  CHECK_THROWS_AS(parse_conjectural_flavor("??"), Error);
}

TEST_CASE("the uneven weightings break vertex balance on purpose") {
  for (auto [m, flavor] : std::vector<std::pair<long long, ConjecturalFlavor>>{
           {20, ConjecturalFlavor::kAthSobelA},
           {35, ConjecturalFlavor::kAthSobelA},
           {25, ConjecturalFlavor::kAthSobelB},
           {40, ConjecturalFlavor::kAthSobelB}}) {
    CAPTURE(m, static_cast<int>(flavor));
    Multigraph g = conjectural_graph(5, m, flavor);
    REQUIRE(is_connected(g));
    REQUIRE(g.exceedance() == 5);
    REQUIRE(g.n() == m - 5);
    ProperDistillation pd = proper_distillation(g);
    REQUIRE(is_isomorphic(pd.wd.d, petersen_graph()));
    BalanceStats st = balance_stats(pd.wd);
    REQUIRE(st.balanced);           // chain lengths differ by at most one
    REQUIRE_FALSE(st.pi_v_balanced);  // but two vertices disagree by two
    auto [lo, hi] =
        std::minmax_element(st.pi_v.begin(), st.pi_v.end());
    REQUIRE(*hi - *lo == 2);
  }
  // The balanced flavor of the same size is a genuinely different graph.
  ProperDistillation even =
      proper_distillation(conjectural_graph(5, 20));
  CHECK(balance_stats(even.wd).pi_v_balanced);
}
