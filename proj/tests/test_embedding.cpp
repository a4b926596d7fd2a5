#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "planecut/cycles.hpp"
#include "planecut/dual.hpp"
#include "planecut/gen.hpp"
#include "planecut/paths.hpp"
#include "planecut/plg.hpp"

using namespace planecut;

namespace {

PlanarEmbedding triangle(i64 w0 = 1, i64 w1 = 1, i64 w2 = 1) {
  // CCW rotations; inner face traced counterclockwise
  return build_embedding(3,
                         {{0, 1, 5, false}, {1, 2, 7, false}, {2, 0, 9, false}},
                         {{0, 2}, {1, 0}, {2, 1}}, {w0, w1, w2});
}

}  // namespace

TEST_CASE("fraction arithmetic is exact and canonical", "[fraction]") {
  Fraction a(6, 4);
  CHECK(a.num == 3);
  CHECK(a.den == 2);
  CHECK(a.str() == "3/2");
  CHECK(Fraction(-6, -4).str() == "3/2");
  CHECK(Fraction(6, -4).str() == "-3/2");
  CHECK(Fraction::integer(4).str() == "4/1");
  CHECK(Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2));
  CHECK(Fraction(1, 3) * Fraction(3, 5) == Fraction(1, 5));
  CHECK(Fraction(7, 2) - Fraction(1, 2) == Fraction(3, 1));
  CHECK(Fraction(1, 3) < Fraction(34, 100));
  CHECK(Fraction(2, 6).compare(Fraction(1, 3)) == 0);
  CHECK_THROWS_AS(Fraction(1, 0), InvalidInput);
  i128 big = (i128(1) << 63);
  CHECK_THROWS_AS(Fraction(big, 1).compare(Fraction(3, big + 1)), ArithmeticOverflow);
}

TEST_CASE("triangle embedding: darts, rotations, faces", "[embedding]") {
  PlanarEmbedding g = triangle(3, 4, 5);
  REQUIRE(g.vertex_count() == 3);
  REQUIRE(g.edge_count() == 3);
  REQUIRE(g.face_count() == 2);

  CHECK(g.tail(0) == 0);
  CHECK(g.head(0) == 1);
  CHECK(g.tail(1) == 1);
  CHECK(g.head(1) == 0);
  CHECK(PlanarEmbedding::reverse(4) == 5);
  CHECK(g.cost(2) == 7);
  CHECK(g.cost(3) == 7);

  // the counterclockwise inner face is the orbit {0->1, 1->2, 2->0}
  std::size_t f_in = g.face_of(0);
  CHECK(g.face_of(2) == f_in);
  CHECK(g.face_of(4) == f_in);
  std::size_t f_out = g.face_of(1);
  CHECK(g.face_of(3) == f_out);
  CHECK(g.face_of(5) == f_out);
  CHECK(f_in != f_out);
  CHECK(g.face(f_in).size() == 3);
  CHECK(g.face(f_out).size() == 3);

  CHECK(g.total_vertex_weight() == 12);
  CHECK(g.total_cost() == 21);
  CHECK(g.rot_next(0) == 5);  // at vertex 0: [0->1, 0->2]
  CHECK(g.rot_next(5) == 0);
  CHECK(g.rot_prev(0) == 5);

  for (Dart d = 0; d < g.dart_count(); ++d) {
    // every dart appears in exactly one face boundary, at a consistent index
    std::size_t f = g.face_of(d);
    std::size_t hits = 0;
    for (Dart x : g.face(f)) hits += (x == d);
    CHECK(hits == 1);
  }
}

TEST_CASE("K4 embeds, K5 does not", "[embedding]") {
  // planar K4: vertex 3 in the center of triangle 0-1-2
  std::vector<EdgeRec> edges = {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false},
                                {0, 3, 1, false}, {1, 3, 1, false}, {2, 3, 1, false}};
  std::vector<std::vector<std::size_t>> rot = {
      {0, 3, 2}, {1, 4, 0}, {2, 5, 1}, {3, 4, 5}};
  PlanarEmbedding k4 = build_embedding(4, edges, rot, {1, 1, 1, 1});
  CHECK(k4.face_count() == 4);

  // K5 admits no planar rotation system; Euler must fail for this one too
  std::vector<EdgeRec> e5;
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t v = u + 1; v < 5; ++v) e5.push_back({u, v, 1, false});
  std::vector<std::vector<std::size_t>> rot5(5);
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t e = 0; e < e5.size(); ++e)
      if (e5[e].u == u || e5[e].v == u) rot5[u].push_back(e);
  CHECK_THROWS_AS(build_embedding(5, e5, rot5, std::vector<i64>(5, 1)), NonPlanarEmbedding);
}

TEST_CASE("builder rejects malformed inputs", "[embedding]") {
  CHECK_THROWS_AS(build_embedding(4,
                                  {{0, 1, 1, false}, {2, 3, 1, false}},
                                  {{0}, {0}, {1}, {1}}, {1, 1, 1, 1}),
                  DisconnectedGraph);
  CHECK_THROWS_AS(build_embedding(2, {{0, 1, 0, false}}, {{0}, {0}}, {1, 1}), NonpositiveCost);
  CHECK_THROWS_AS(build_embedding(2, {{0, 1, -3, false}}, {{0}, {0}}, {1, 1}), NonpositiveCost);
  // dart missing from rotations
  CHECK_THROWS_AS(build_embedding(2, {{0, 1, 1, false}}, {{0}, {}}, {1, 1}), InvalidInput);
  // dart listed twice
  CHECK_THROWS_AS(build_embedding(2, {{0, 1, 1, false}}, {{0, 0}, {0}}, {1, 1}), InvalidInput);
  // negative weight
  CHECK_THROWS_AS(build_embedding(2, {{0, 1, 1, false}}, {{0}, {0}}, {1, -1}), InvalidInput);
}

TEST_CASE("self-loops and parallel edges trace correctly", "[embedding]") {
  // one vertex, one self-loop: two faces
  PlanarEmbedding loop = build_embedding(1, {{0, 0, 2, false}}, {{0, 0}}, {7});
  CHECK(loop.face_count() == 2);
  CHECK(loop.total_cost() == 2);

  // theta graph: 2 vertices, 3 parallel edges, 3 faces
  PlanarEmbedding theta =
      build_embedding(2, {{0, 1, 1, false}, {0, 1, 2, false}, {0, 1, 3, false}},
                      {{0, 1, 2}, {2, 1, 0}}, {1, 1});
  CHECK(theta.face_count() == 3);
  std::vector<std::size_t> sizes;
  for (auto& f : theta.faces()) sizes.push_back(f.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 2, 2});
}

TEST_CASE("grid generator shape and outer face", "[embedding]") {
  PlanarEmbedding g = grid_graph(3, 3);
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 12);
  CHECK(g.face_count() == 5);
  CHECK(g.face(g.outer_face()).size() == 8);  // default outer face: the largest
  PlanarEmbedding p = path_graph(4);
  CHECK(p.face_count() == 1);
  PlanarEmbedding db = dumbbell_graph(2);
  CHECK(db.vertex_count() == 8);
  CHECK(db.edge_count() == 9);
}

TEST_CASE("plg round-trips byte-identically", "[plg]") {
  PlanarEmbedding g = grid_graph(2, 3, 4, 2);
  std::string s1 = write_plg_string(g);
  std::istringstream in(s1);
  PlanarEmbedding h = read_plg(in);
  CHECK(write_plg_string(h) == s1);
  CHECK(h.vertex_count() == g.vertex_count());
  CHECK(h.outer_face() == g.outer_face());

  SECTION("comments and blank lines are ignored") {
    std::string text = "# generated\nplg 1\nv 0 1 # corner\nv 1 2\n\ne 0 0 1 3\nrot 0 0\nrot 1 0\n";
    std::istringstream tin(text);
    PlanarEmbedding t = read_plg(tin);
    CHECK(t.vertex_count() == 2);
    CHECK(t.vertex_weight(1) == 2);
    CHECK(t.edge(0).cost == 3);
  }
  SECTION("outer record is honored") {
    std::string s = write_plg_string(triangle());
    PlanarEmbedding t = triangle();
    std::size_t other = 1 - t.outer_face();
    std::string patched = write_plg_string(t.with_outer_face(other));
    std::istringstream pin(patched);
    CHECK(read_plg(pin).outer_face() == other);
  }
  SECTION("malformed files throw FormatError") {
    auto reject = [](const std::string& text) {
      std::istringstream bad(text);
      CHECK_THROWS_AS(read_plg(bad), FormatError);
    };
    reject("v 0 1\n");                                      // missing header
    reject("plg 2\nv 0 1\n");                               // wrong version
    reject("plg 1\nv 0 1\nv 0 2\n");                        // duplicate id
    reject("plg 1\nv 0 1\nv 2 2\n");                        // non-dense ids
    reject("plg 1\nv 0 1\nq 0\n");                          // unknown record
    reject("plg 1\nv 0 1\nv 1 1\ne 0 0 1 1 9\nrot 0 0\n");  // trailing token
  }
}

TEST_CASE("dual swaps weights and is an involution", "[dual]") {
  PlanarEmbedding g = triangle(3, 4, 5);
  DualEmbedding d = dualize(g);
  CHECK(d.graph.vertex_count() == 2);
  CHECK(d.graph.edge_count() == 3);
  CHECK(d.graph.face_count() == 3);

  // primal vertex weights surface as dual face weights
  CHECK(d.graph.total_face_weight() == g.total_vertex_weight());
  for (std::size_t f = 0; f < d.graph.face_count(); ++f)
    CHECK(d.graph.face_weight(f) == g.vertex_weight(d.primal_vertex_of_face[f]));
  // edge ids and costs shared
  for (std::size_t e = 0; e < 3; ++e) CHECK(d.graph.edge(e).cost == g.edge(e).cost);

  // dualize twice: faces of the dual are primal vertices, so the double dual
  // has the primal's vertex weights back on vertices (up to the id bijection)
  DualEmbedding dd = dualize(d.graph);
  CHECK(dd.graph.vertex_count() == g.vertex_count());
  CHECK(dd.graph.edge_count() == g.edge_count());
  CHECK(dd.graph.face_count() == g.face_count());
  for (std::size_t i = 0; i < dd.graph.vertex_count(); ++i) {
    std::size_t pv = d.primal_vertex_of_face[i];
    CHECK(dd.graph.vertex_weight(i) == g.vertex_weight(pv));
  }

  SECTION("dual rotations cross primal faces in boundary order") {
    for (std::size_t f = 0; f < g.face_count(); ++f) {
      REQUIRE(d.graph.rotation(f) == g.face(f));
      for (Dart x : g.face(f)) CHECK(d.graph.tail(x) == f);
    }
  }
  SECTION("grid dual Euler bookkeeping") {
    PlanarEmbedding grid = grid_graph(3, 4);
    DualEmbedding gd = dualize(grid);
    CHECK(gd.graph.vertex_count() == grid.face_count());
    CHECK(gd.graph.face_count() == grid.vertex_count());
    CHECK(gd.graph.total_face_weight() == grid.total_vertex_weight());
  }
  SECTION("bridges become dual self-loops") {
    PlanarEmbedding p = path_graph(3);
    DualEmbedding pd = dualize(p);
    CHECK(pd.graph.vertex_count() == 1);
    CHECK(pd.graph.edge_count() == 2);
    for (std::size_t e = 0; e < 2; ++e) CHECK(pd.graph.edge(e).u == pd.graph.edge(e).v);
  }
}

TEST_CASE("random planar generator is seeded and valid", "[embedding]") {
  std::mt19937_64 rng(12345);
  RandomPlanarParams p;
  p.n_vertices = 24;
  p.delete_fraction = 0.0;
  PlanarEmbedding full = random_planar(p, rng);
  CHECK(full.vertex_count() == 24);
  CHECK(full.edge_count() == 3 * 24 - 6);  // stacked triangulation

  std::mt19937_64 r1(777), r2(777);
  p.delete_fraction = 0.35;
  PlanarEmbedding a = random_planar(p, r1);
  PlanarEmbedding b = random_planar(p, r2);
  CHECK(write_plg_string(a) == write_plg_string(b));
  CHECK(a.edge_count() < 3 * 24 - 6);
}

TEST_CASE("dijkstra agrees with bellman-ford on random instances", "[paths]") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 50; ++it) {
    RandomPlanarParams p;
    p.n_vertices = 4 + it % 9;
    p.delete_fraction = 0.3;
    PlanarEmbedding g = random_planar(p, rng);
    ShortestPathTree t1 = shortest_path_tree(g, 0);
    ShortestPathTree t2 = bellman_ford_spt(g, 0);
    REQUIRE(t1.dist == t2.dist);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      REQUIRE(t1.reached(v));  // connected
      if (v != 0) {
        // parent dart leads from parent with exactly the distance difference
        Dart pd = t1.parent_dart[v];
        CHECK(g.head(pd) == v);
        CHECK(t1.dist[g.tail(pd)] + g.cost(pd) == t1.dist[v]);
      }
    }
  }
}

TEST_CASE("fundamental cycles close through the tree", "[cycles]") {
  PlanarEmbedding g = grid_graph(3, 3);
  ShortestPathTree t = shortest_path_tree(g, 0);
  std::size_t checked = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (t.in_tree_edge[e]) {
      CHECK_THROWS_AS(fundamental_cycle(g, t, PlanarEmbedding::dart_uv(e)), DartInTree);
      continue;
    }
    for (Dart d : {PlanarEmbedding::dart_uv(e), PlanarEmbedding::dart_vu(e)}) {
      Cycle c = fundamental_cycle(g, t, d);
      CHECK(c.darts.front() == d);
      validate_cycle(g, c);
      ++checked;
    }
  }
  CHECK(checked == 2 * (g.edge_count() - (g.vertex_count() - 1)));
}

TEST_CASE("flood fill measures enclosed weight", "[cycles]") {
  PlanarEmbedding g0 = grid_graph(3, 3);
  // unit weight on every inner face, 0 on the outer face
  std::vector<i64> fw(g0.face_count(), 1);
  fw[g0.outer_face()] = 0;
  PlanarEmbedding g = g0.with_face_weights(fw);
  std::size_t f_inf = g.outer_face();

  // walk around the top-left unit square 0-1-4-3
  auto dart_between = [&](std::size_t u, std::size_t v) {
    for (Dart d : g.rotation(u))
      if (g.head(d) == v) return d;
    REQUIRE(false);
    return NONE;
  };
  Cycle sq;
  sq.darts = {dart_between(0, 1), dart_between(1, 4), dart_between(4, 3), dart_between(3, 0)};
  validate_cycle(g, sq);
  CHECK(enclosed_weight(g, sq, f_inf) == 1);
  CHECK(enclosed_weight(g, reversed(sq), f_inf) == 1);
  CHECK(cycle_is_ccw(g, sq, f_inf) != cycle_is_ccw(g, reversed(sq), f_inf));

  // boundary walk of the whole grid encloses all four unit squares
  Cycle ring;
  for (auto [u, v] : std::vector<std::pair<std::size_t, std::size_t>>{
           {0, 1}, {1, 2}, {2, 5}, {5, 8}, {8, 7}, {7, 6}, {6, 3}, {3, 0}})
    ring.darts.push_back(dart_between(u, v));
  validate_cycle(g, ring);
  CHECK(enclosed_weight(g, ring, f_inf) == 4);

  SECTION("self-crossing walks are rejected") {
    Cycle cross;
    for (auto [u, v] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 4}, {4, 7}, {7, 8}, {8, 5}, {5, 4}, {4, 3}, {3, 0}, {0, 1}})
      cross.darts.push_back(dart_between(u, v));
    validate_cycle(g, cross);
    CHECK_THROWS_AS(enclosed_weight(g, cross, f_inf), SelfCrossingCycle);
  }
  SECTION("pinched non-crossing walks are fine") {
    Cycle pinch;
    for (auto [u, v] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 4}, {4, 5}, {5, 8}, {8, 7}, {7, 4}, {4, 1}})
      pinch.darts.push_back(dart_between(u, v));
    validate_cycle(g, pinch);
    // doubled edge 1-4 is a pendant excursion; only square 4-5-8-7 is enclosed
    CHECK(enclosed_weight(g, pinch, f_inf) == 1);
    CHECK(is_near_simple(g, pinch, 1));
    Cycle sp = simple_part(g, pinch);
    REQUIRE(!sp.empty());
    CHECK(sp.darts.size() == 4);
  }
}

TEST_CASE("closed walks decompose into simple cycles", "[cycles]") {
  PlanarEmbedding g = grid_graph(3, 3);
  auto dart_between = [&](std::size_t u, std::size_t v) {
    for (Dart d : g.rotation(u))
      if (g.head(d) == v) return d;
    REQUIRE(false);
    return NONE;
  };
  // two squares glued at vertex 4, traversed as one closed walk
  std::vector<Dart> walk;
  for (auto [u, v] : std::vector<std::pair<std::size_t, std::size_t>>{
           {0, 1}, {1, 4}, {4, 5}, {5, 8}, {8, 7}, {7, 4}, {4, 3}, {3, 0}})
    walk.push_back(dart_between(u, v));
  std::vector<Cycle> parts = decompose_closed_walk(g, walk);
  REQUIRE(parts.size() == 2);
  std::size_t total = 0;
  for (const Cycle& c : parts) {
    validate_cycle(g, c);
    total += c.darts.size();
  }
  CHECK(total == walk.size());
}
