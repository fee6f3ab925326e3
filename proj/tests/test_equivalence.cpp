#include "relopt/equivalence.hpp"

#include <catch2/catch_amalgamated.hpp>
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
#include "test_util.hpp"

using namespace relopt;
using Catch::Matchers::ContainsSubstring;

namespace {

Multigraph figure_eight(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  int next = 1;
  for (int len : {a, b}) {
    int prev = 0;
    for (int i = 0; i + 1 < len; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, 0);
  }
  return Multigraph(next, edges);
}

Multigraph handcuffs(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i) edges.emplace_back(i, (i + 1) % a);
  for (int i = 0; i < b; ++i) edges.emplace_back(a + i, a + (i + 1) % b);
  edges.emplace_back(0, a);
  return Multigraph(a + b, edges);
}

// Two triangles joined by two disjoint unit chains; the joining pair is a
// 2-bond that spans two chains.
Multigraph twin_triangles() {
  return Multigraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5},
                        {0, 3}, {1, 4}});
}

Multigraph with_loop(const Multigraph& g, int v) {
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(e.u, e.v);
  edges.emplace_back(v, v);
  return Multigraph(g.n(), edges);
}

Multigraph bouquet(int loops) {
  std::vector<std::pair<int, int>> edges(loops, {0, 0});
  return Multigraph(1, edges);
}

Multigraph wheel4() {
  return Multigraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                        {0, 4}, {1, 4}, {2, 4}, {3, 4}});
}

bool same_profile(const Multigraph& a, const Multigraph& b) {
  ReliabilityProfile pa = profile(a);
  ReliabilityProfile pb = profile(b);
  return pa.n == pb.n && pa.m == pb.m && pa.k == pb.k && pa.d == pb.d &&
         pa.c == pb.c && pa.t == pb.t;
}

// Some enumerated shift of h lands back on g's isomorphism class.
bool has_inverse_shift(const Multigraph& g, const Multigraph& h) {
  std::string target = canonical_form(g);
  for (const ShiftMove& back : enumerate_shifts(h)) {
    if (canonical_form(shift_edge(h, back)) == target) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("every shift preserves the disconnection profile") {
  std::vector<Multigraph> corpus = {
      test_util::theta(2, 2, 2),  test_util::theta(1, 2, 3),
      test_util::theta(1, 1, 4),  figure_eight(3, 3),
      figure_eight(2, 4),         handcuffs(3, 3),
      twin_triangles(),           with_loop(test_util::theta(2, 2, 2), 2),
      with_loop(test_util::theta(2, 2, 2), 0),
      test_util::complete(4),     test_util::cycle(5),
      test_util::dipole(3),       bouquet(2),
      wheel4(),                   cube_graph(),
      k33_graph(),                petersen_graph(),
  };
  for (unsigned seed = 0; seed < 15; ++seed)
    corpus.push_back(test_util::random_connected_multigraph(5, 7, 900 + seed));

  long long checked = 0;
  for (const Multigraph& g : corpus) {
    ReliabilityProfile pg = profile(g);
    for (const ShiftMove& move : enumerate_shifts(g)) {
      Multigraph h = shift_edge(g, move);
      REQUIRE(h.n() == g.n());
      REQUIRE(h.m() == g.m());
      ReliabilityProfile ph = profile(h);
      REQUIRE(ph.k == pg.k);
      REQUIRE(ph.d == pg.d);
      REQUIRE(ph.c == pg.c);
      REQUIRE(ph.t == pg.t);
      ++checked;
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("shifts on 3-vertex-connected graphs only reproduce the graph") {
  for (const Multigraph& g :
       {test_util::complete(4), cube_graph(), k33_graph(), petersen_graph()}) {
    std::string form = canonical_form(g);
    std::vector<ShiftMove> moves = enumerate_shifts(g);
    CHECK(!moves.empty());
    for (const ShiftMove& move : moves)
      REQUIRE(canonical_form(shift_edge(g, move)) == form);
  }
}

TEST_CASE("shift preconditions") {
  Multigraph th = test_util::theta(2, 2, 2);

  SECTION("within-chain shift is legal and isomorphic") {
    // New edge extends the 0-2-1 path; contracting its partner restores the
    // shape.
    ShiftMove move;
    move.edge = 1;  // (2,1) on the same path
    move.expansion.vertex = 0;
    move.expansion.first_side = {0};  // (0,2)
    Multigraph h = shift_edge(th, move);
    CHECK(is_isomorphic(h, th));
  }

  SECTION("cross-path pair is rejected") {
    ShiftMove move;
    move.edge = 3;  // (3,1) on another path
    move.expansion.vertex = 0;
    move.expansion.first_side = {0};
    CHECK_THROWS_WITH(shift_edge(th, move), ContainsSubstring("2-bond"));
  }

  SECTION("bad edge id") {
    ShiftMove move;
    move.edge = 99;
    move.expansion.vertex = 0;
    CHECK_THROWS_WITH(shift_edge(th, move), ContainsSubstring("no such edge"));
  }

  SECTION("a bridge never takes part in a shift") {
    Multigraph hc = handcuffs(3, 3);
    for (const ShiftMove& move : enumerate_shifts(hc))
      CHECK(move.edge != 6);  // the joining bridge keeps its id
  }
}

TEST_CASE("shifts are reversible") {
  std::vector<Multigraph> corpus = {
      test_util::theta(2, 2, 2), figure_eight(3, 3), twin_triangles(),
      with_loop(test_util::theta(2, 2, 2), 2), test_util::complete(4)};
  for (const Multigraph& g : corpus) {
    std::vector<ShiftMove> moves = enumerate_shifts(g);
    int budget = 8;
    for (const ShiftMove& move : moves) {
      if (budget-- == 0) break;
      REQUIRE(has_inverse_shift(g, shift_edge(g, move)));
    }
  }
}

TEST_CASE("a pendant block slides along its chain") {
  // Loop at a path's interior vertex versus loop at the hub: one shift moves
  // the attachment point across the cutvertex.
  Multigraph interior = with_loop(test_util::theta(2, 2, 2), 2);
  Multigraph hub = with_loop(test_util::theta(2, 2, 2), 0);
  REQUIRE(!is_isomorphic(interior, hub));

  bool reached = false;
  for (const ShiftMove& move : enumerate_shifts(interior)) {
    if (is_isomorphic(shift_edge(interior, move), hub)) reached = true;
  }
  CHECK(reached);

  EquivalenceClass ci = equivalence_class(interior);
  EquivalenceClass ch = equivalence_class(hub);
  CHECK(ci.complete);
  CHECK(ci.forms == ch.forms);
  CHECK(ci.forms.size() == 2);
  CHECK(ci.forms.contains(canonical_form(interior)));
  CHECK(ci.forms.contains(canonical_form(hub)));
  CHECK(same_profile(interior, hub));
}

TEST_CASE("chains merge across a spanning 2-bond") {
  Multigraph twin = twin_triangles();
  Multigraph merged = to_3ec_representative(twin);
  REQUIRE(!is_isomorphic(twin, merged));

  bool reached = false;
  for (const ShiftMove& move : enumerate_shifts(twin)) {
    if (is_isomorphic(shift_edge(twin, move), merged)) reached = true;
  }
  CHECK(reached);

  EquivalenceClass ct = equivalence_class(twin);
  EquivalenceClass cm = equivalence_class(merged);
  CHECK(ct.complete);
  CHECK(ct.forms == cm.forms);
  CHECK(ct.forms.size() == 2);
  CHECK(same_profile(twin, merged));
  CHECK(find_bridges(twin).empty());
  CHECK(find_bridges(merged).empty());

  // Neither member is a positive subdivision of a cubic 3-edge-connected
  // graph: the class only meets that family through zero chains.
  for (const Multigraph& g : {twin, merged}) {
    ProperDistillation pd = proper_distillation(g);
    bool cubic = true;
    for (int v = 0; v < pd.wd.d.n(); ++v)
      if (pd.wd.d.degree(v) != 3) cubic = false;
    CHECK(!(cubic && detail::three_edge_connected(pd.wd.d)));
  }
}

TEST_CASE("graphs with only trivial shifts sit in singleton classes") {
  std::vector<Multigraph> singletons = {
      test_util::complete(4), test_util::cycle(5),  test_util::cycle(3),
      test_util::theta(2, 2, 2), figure_eight(3, 3), handcuffs(3, 3),
      test_util::dipole(3),   bouquet(2),           cube_graph(),
      k33_graph()};
  for (const Multigraph& g : singletons) {
    EquivalenceClass cls = equivalence_class(g);
    CHECK(cls.complete);
    CHECK(cls.forms == std::set<std::string>{canonical_form(g)});
  }
}

TEST_CASE("class search respects its size cap") {
  Multigraph interior = with_loop(test_util::theta(2, 2, 2), 2);
  EquivalenceClass cls = equivalence_class(interior, 1);
  CHECK(!cls.complete);
  CHECK(cls.forms.size() == 1);

  CHECK_THROWS_AS(equivalence_class(Multigraph(13, {})), BudgetError);
  CHECK_THROWS_WITH(equivalence_class(Multigraph(3, {{0, 1}})),
                    ContainsSubstring("disconnected"));
}

TEST_CASE("representative with three-edge-connected core") {
  SECTION("inputs that already qualify come back unchanged") {
    for (const Multigraph& g :
         {test_util::theta(2, 2, 2), test_util::complete(4),
          test_util::cycle(5), figure_eight(3, 3), bouquet(2), wheel4(),
          cube_graph(), test_util::dipole(3)}) {
      Multigraph rep = to_3ec_representative(g);
      CHECK(rep == g);
    }
    // The two-cycle graph is already in reduced form: one closed chain of
    // weight zero relative to the three-way dipole.
    WeightedDistillation wd{test_util::dipole(3), {0, 3, 3}};
    CHECK(is_isomorphic(figure_eight(3, 3), realize_weak_subdivision(wd)));
  }

  SECTION("twin triangles collapse to a doubled chain") {
    Multigraph twin = twin_triangles();
    CHECK_THROWS_WITH(cubic_weak_distillation(twin),
                      ContainsSubstring("to_3ec_representative"));

    Multigraph rep = to_3ec_representative(twin);
    CHECK(same_profile(twin, rep));
    CHECK(rep.n() == twin.n());
    CHECK(rep.m() == twin.m());

    BondCatalog cat = bond_catalog(rep);
    CHECK(cat.b_nontrivial[2] == 0);
    CHECK_NOTHROW(cubic_weak_distillation(rep));
    CHECK(to_3ec_representative(rep) == rep);

    // The merged graph carries a complete-graph weighting with a zero chain.
    WeightedDistillation wd{test_util::complete(4), {0, 1, 1, 2, 2, 2}};
    CHECK(is_isomorphic(rep, realize_weak_subdivision(wd)));
  }

  SECTION("a pendant loop is pushed onto the hub") {
    Multigraph interior = with_loop(test_util::theta(2, 2, 2), 2);
    Multigraph hub = with_loop(test_util::theta(2, 2, 2), 0);
    Multigraph rep = to_3ec_representative(interior);
    CHECK(is_isomorphic(rep, hub));
    CHECK(same_profile(interior, rep));
    CHECK_NOTHROW(cubic_weak_distillation(rep));
    CHECK(to_3ec_representative(hub) == hub);
  }

  SECTION("rejected inputs") {
    CHECK_THROWS_WITH(to_3ec_representative(handcuffs(3, 3)),
                      ContainsSubstring("bridge"));
    CHECK_THROWS_WITH(to_3ec_representative(Multigraph(2, {})),
                      ContainsSubstring("disconnected"));
  }

  SECTION("random bridgeless graphs reduce cleanly") {
    int reduced = 0;
    for (unsigned seed = 0; seed < 40; ++seed) {
      Multigraph g = test_util::random_connected_multigraph(6, 9, 300 + seed);
      if (!find_bridges(g).empty()) continue;
      Multigraph rep = to_3ec_representative(g);
      REQUIRE(same_profile(g, rep));
      BondCatalog cat = bond_catalog(rep);
      REQUIRE(cat.b_nontrivial[2] == 0);
      REQUIRE_NOTHROW(cubic_weak_distillation(rep));
      if (!(rep == g)) ++reduced;
    }
    CHECK(reduced > 0);
  }
}
