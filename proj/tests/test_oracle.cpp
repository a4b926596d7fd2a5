#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "planecut/dual.hpp"
#include "planecut/gen.hpp"
#include "planecut/oracle.hpp"
#include "planecut/subgraph.hpp"
#include "planecut/weights.hpp"

using namespace planecut;

namespace {

PlanarEmbedding grid_with_face_weights(std::size_t rows, std::size_t cols) {
  PlanarEmbedding g = grid_graph(rows, cols);
  std::vector<i64> fw(g.face_count());
  for (std::size_t f = 0; f < g.face_count(); ++f) fw[f] = static_cast<i64>(f % 7 + 1);
  return g.with_face_weights(std::move(fw));
}

std::vector<i64> faces_weighted(const PlanarEmbedding& g) {
  std::vector<i64> fw(g.face_count());
  for (std::size_t f = 0; f < g.face_count(); ++f) fw[f] = static_cast<i64>((f * 7 + 3) % 11);
  return fw;
}

}  // namespace

TEST_CASE("subgraph components: deletions merge faces and conserve weight", "[subgraph]") {
  PlanarEmbedding g = grid_with_face_weights(3, 3);
  REQUIRE(g.edge_count() == 12);

  SECTION("deleting one edge merges its two side faces") {
    std::vector<char> keep(12, 1);
    keep[0] = 0;  // edge 0 borders a square and some neighbor face
    auto comps = subgraph_components(g, keep);
    REQUIRE(comps.size() == 1);
    const SubgraphComponent& sc = comps[0];
    CHECK(sc.graph.vertex_count() == 9);
    CHECK(sc.graph.edge_count() == 11);
    CHECK(sc.graph.face_count() == g.face_count() - 1);
    CHECK(sc.graph.total_face_weight() == g.total_face_weight());
    std::size_t merged = 0;
    for (const auto& org : sc.face_origins) {
      CHECK(!org.empty());
      if (org.size() == 2) ++merged;
    }
    CHECK(merged == 1);
  }

  SECTION("deleting all vertical edges leaves three path components") {
    std::vector<char> keep(12, 1);
    for (std::size_t e = 0; e < 12; ++e) {
      const EdgeRec& er = g.edge(e);
      if (er.v == er.u + 3) keep[e] = 0;  // row-major: +3 is the vertical neighbor
    }
    auto comps = subgraph_components(g, keep);
    REQUIRE(comps.size() == 3);
    for (const auto& sc : comps) {
      CHECK(sc.graph.vertex_count() == 3);
      CHECK(sc.graph.edge_count() == 2);
      CHECK(sc.graph.face_count() == 1);
      CHECK(sc.graph.total_face_weight() == g.total_face_weight());
      CHECK(sc.face_origins[0].size() == g.face_count());
    }
  }

  SECTION("vertices with no kept edge are dropped") {
    std::vector<char> keep(12, 0);
    keep[0] = 1;  // one horizontal edge in the top row
    auto comps = subgraph_components(g, keep);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].graph.vertex_count() == 2);
    CHECK(comps[0].vertex_map == std::vector<std::size_t>{g.edge(0).u, g.edge(0).v});
  }

  SECTION("empty keep mask yields no components") {
    CHECK(subgraph_components(g, std::vector<char>(12, 0)).empty());
    CHECK_THROWS_AS(subgraph_components(g, std::vector<char>(11, 1)), InvalidInput);
  }
}

TEST_CASE("induced subgraph on the top rows of a grid", "[subgraph]") {
  PlanarEmbedding g = grid_with_face_weights(3, 3);
  std::vector<char> keep_vertex(9, 0);
  for (std::size_t v = 0; v < 6; ++v) keep_vertex[v] = 1;
  auto comps = induced_components(g, keep_vertex);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].graph.vertex_count() == 6);
  CHECK(comps[0].graph.edge_count() == 7);
  CHECK(comps[0].graph.face_count() == 3);
  CHECK(comps[0].graph.total_face_weight() == g.total_face_weight());
}

TEST_CASE("subgraph components on random instances keep structure maps coherent",
          "[subgraph]") {
  std::mt19937_64 rng(7101);
  for (int it = 0; it < 40; ++it) {
    RandomPlanarParams p;
    p.n_vertices = 10;
    PlanarEmbedding g = random_planar(p, rng);
    PlanarEmbedding gw = g.with_face_weights(faces_weighted(g));
    std::vector<char> keep(gw.edge_count());
    for (auto& k : keep) k = rng() % 3 != 0;

    std::size_t seen_vertices = 0;
    for (const SubgraphComponent& sc : subgraph_components(gw, keep)) {
      seen_vertices += sc.graph.vertex_count();
      CHECK(sc.graph.total_face_weight() == gw.total_face_weight());
      CHECK(sc.graph.total_vertex_weight() <= gw.total_vertex_weight());

      for (std::size_t e2 = 0; e2 < sc.graph.edge_count(); ++e2) {
        std::size_t e = sc.edge_map[e2];
        CHECK(sc.old_edge_to_new[e] == e2);
        CHECK(sc.graph.edge(e2).cost == gw.edge(e).cost);
        CHECK(sc.vertex_map[sc.graph.edge(e2).u] == gw.edge(e).u);
        Dart nd = PlanarEmbedding::dart_vu(e2);
        CHECK(sc.to_new_dart(sc.to_old_dart(nd)) == nd);
      }
      // restricted rotations appear in the original cyclic order
      for (std::size_t v2 = 0; v2 < sc.graph.vertex_count(); ++v2) {
        std::vector<Dart> old_sub;
        for (Dart d : gw.rotation(sc.vertex_map[v2]))
          if (sc.to_new_dart(d) != NONE) old_sub.push_back(sc.to_new_dart(d));
        const std::vector<Dart>& rot = sc.graph.rotation(v2);
        REQUIRE(rot.size() == old_sub.size());
        std::size_t shift = static_cast<std::size_t>(
            std::find(old_sub.begin(), old_sub.end(), rot[0]) - old_sub.begin());
        REQUIRE(shift < old_sub.size());
        for (std::size_t i = 0; i < rot.size(); ++i)
          CHECK(rot[i] == old_sub[(shift + i) % old_sub.size()]);
      }
      // face origins partition the original faces
      std::vector<char> covered(gw.face_count(), 0);
      for (const auto& org : sc.face_origins)
        for (std::size_t f : org) {
          CHECK(!covered[f]);
          covered[f] = 1;
        }
      CHECK(std::count(covered.begin(), covered.end(), 1) ==
            static_cast<std::ptrdiff_t>(gw.face_count()));
    }
    CHECK(seen_vertices <= gw.vertex_count());
  }
}

TEST_CASE("dart weights: tree darts zero, reverse antisymmetry, side sums", "[weights]") {
  PlanarEmbedding g = grid_with_face_weights(3, 3);
  ShortestPathTree t = shortest_path_tree(g, 0);
  std::size_t f_inf = g.outer_face();
  DartWeights dw = pp_dart_weights(g, t, f_inf);

  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    Dart d = PlanarEmbedding::dart_uv(e);
    if (t.in_tree_edge[e]) {
      CHECK(dw.weight[d] == 0);
      CHECK(dw.weight[PlanarEmbedding::reverse(d)] == 0);
    } else {
      CHECK(dw.weight[d] == -dw.weight[PlanarEmbedding::reverse(d)]);
      CHECK(dw.weight[d] != 0);  // every inner face of this grid has weight > 0
    }
  }

  for (const Cycle& c : enumerate_simple_cycles(g)) {
    Cycle ccw = cycle_is_ccw(g, c, f_inf) ? c : reversed(c);
    i64 enc = enclosed_weight(g, ccw, f_inf);
    CHECK(dw.sum(ccw) == enc);
    CHECK(dw.sum(reversed(ccw)) == -enc);
  }
}

TEST_CASE("dart weight cycle sums are spanning-tree invariant", "[weights]") {
  std::mt19937_64 rng(7102);
  for (int it = 0; it < 25; ++it) {
    RandomPlanarParams p;
    p.n_vertices = 8;
    PlanarEmbedding g0 = random_planar(p, rng);
    PlanarEmbedding g = g0.with_face_weights(faces_weighted(g0));
    std::size_t f_inf = g.outer_face();
    DartWeights a = pp_dart_weights(g, shortest_path_tree(g, 0), f_inf);
    DartWeights b =
        pp_dart_weights(g, shortest_path_tree(g, g.vertex_count() - 1), f_inf);
    for (const Cycle& c : enumerate_simple_cycles(g)) {
      CHECK(a.sum(c) == b.sum(c));
      Cycle ccw = cycle_is_ccw(g, c, f_inf) ? c : reversed(c);
      CHECK(a.sum(ccw) == enclosed_weight(g, ccw, f_inf));
    }
  }
}

TEST_CASE("dart weight sums match enclosed weight on duals and inner reference faces",
          "[weights]") {
  std::mt19937_64 rng(7103);
  for (int it = 0; it < 25; ++it) {
    RandomPlanarParams p;
    p.n_vertices = 8;
    PlanarEmbedding g = random_planar(p, rng);
    DualEmbedding d = dualize(g);
    // dual face weights carry the primal vertex weights
    auto cycles = enumerate_simple_cycles(d.graph);
    ShortestPathTree t = shortest_path_tree(d.graph, 0);
    for (std::size_t f_inf = 0; f_inf < d.graph.face_count(); ++f_inf) {
      DartWeights dw = pp_dart_weights(d.graph, t, f_inf);
      for (const Cycle& c : cycles) {
        Cycle ccw = cycle_is_ccw(d.graph, c, f_inf) ? c : reversed(c);
        CHECK(dw.sum(ccw) == enclosed_weight(d.graph, ccw, f_inf));
      }
    }
  }
}

TEST_CASE("dart weights reject broken tree masks", "[weights]") {
  PlanarEmbedding g = grid_with_face_weights(2, 3);
  std::vector<char> tree(g.edge_count(), 1);  // 7 edges, tree needs 5
  CHECK_THROWS_AS(pp_dart_weights(g, tree, 0), Error);
  std::vector<char> sparse(g.edge_count(), 0);
  CHECK_THROWS_AS(pp_dart_weights(g, sparse, 0), Error);
  ShortestPathTree t = shortest_path_tree(g, 0);
  CHECK_THROWS_AS(pp_dart_weights(g, t.in_tree_edge, g.face_count()), InvalidInput);
}

TEST_CASE("brute cuts on hand-checked shapes", "[oracle]") {
  SECTION("unit triangle") {
    PlanarEmbedding g = build_embedding(
        3, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false}},
        {{0, 2}, {1, 0}, {2, 1}}, {1, 1, 1});
    BruteCutResult r = brute_cuts(g);
    CHECK(r.best_quotient == Fraction(2, 1));
    CHECK(r.best_sparsity == Fraction(1, 1));
    CHECK(r.total_weight == 3);
  }
  SECTION("dumbbell: cheapest bridge cut wins both objectives") {
    PlanarEmbedding g = dumbbell_graph(2);
    BruteCutResult r = brute_cuts(g);
    CHECK(r.best_quotient == Fraction(1, 4));
    CHECK(r.best_sparsity == Fraction(1, 16));
    i64 ws = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if ((r.quotient_mask >> v) & 1) ws += g.vertex_weight(v);
    CHECK(ws == 4);
  }
  SECTION("weight concentrated on one vertex leaves no valid cut") {
    PlanarEmbedding g = build_embedding(
        3, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false}},
        {{0, 2}, {1, 0}, {2, 1}}, {5, 0, 0});
    CHECK_THROWS_AS(brute_cuts(g), NoCut);
  }
  SECTION("budgets") {
    PlanarEmbedding g = grid_graph(4, 5);
    CHECK_THROWS_AS(brute_cuts(g, 19), BudgetExceeded);
    CHECK_NOTHROW(brute_cuts(g, 20));
  }
}

TEST_CASE("small bisection oracle", "[oracle]") {
  SECTION("dumbbell bisects at the bridge") {
    BisectionResult r = min_bisection_small(dumbbell_graph(2));
    CHECK(r.cost == 1);
  }
  SECTION("odd total weight") {
    CHECK_THROWS_AS(
        min_bisection_small(build_embedding(
            3, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false}},
            {{0, 2}, {1, 0}, {2, 1}}, {1, 1, 1})),
        OddTotalWeight);
  }
  SECTION("even total but no balanced split") {
    CHECK_THROWS_AS(
        min_bisection_small(build_embedding(
            3, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false}},
            {{0, 2}, {1, 0}, {2, 1}}, {1, 1, 4})),
        NoBalancedCut);
  }
}

TEST_CASE("apsp is a metric consistent with single-source distances", "[oracle]") {
  std::mt19937_64 rng(7104);
  RandomPlanarParams p;
  p.n_vertices = 12;
  PlanarEmbedding g = random_planar(p, rng);
  auto d = apsp(g);
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    CHECK(d[u][u] == 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      CHECK(d[u][v] == d[v][u]);
      for (std::size_t w = 0; w < g.vertex_count(); ++w)
        CHECK(d[u][w] <= d[u][v] + d[v][w]);
    }
  }
  CHECK_THROWS_AS(apsp(g, 4), BudgetExceeded);
}

TEST_CASE("set distances over an explicit table", "[oracle]") {
  std::vector<std::vector<i64>> d = {{0, 1, 4}, {1, 0, 2}, {4, 2, 0}};
  CHECK(set_distance(d, {0}, {1, 2}, SetDistance::Max) == 4);
  CHECK(set_distance(d, {0}, {1, 2}, SetDistance::Sum) == 5);
  CHECK(set_distance(d, {0, 1}, {2}, SetDistance::Max) == 4);
  CHECK(set_distance(d, {0, 1}, {2}, SetDistance::Sum) == 6);
}

TEST_CASE("linkage simulation on a weighted path", "[oracle]") {
  // path 0-1-2 with costs 1 and 3: d(0,1)=1, d(1,2)=3, d(0,2)=4
  PlanarEmbedding g = build_embedding(3, {{0, 1, 1, false}, {1, 2, 3, false}},
                                      {{0}, {0, 1}, {1}}, {1, 1, 1});
  SECTION("single linkage") {
    MergeTrace t = linkage_simulate(g, Linkage::Single);
    REQUIRE(t.steps.size() == 2);
    CHECK(t.steps[0].a == 0);
    CHECK(t.steps[0].b == 1);
    CHECK(t.steps[0].value == Fraction(1, 1));
    CHECK(t.steps[0].joined == 3);
    CHECK(t.steps[1].a == 2);
    CHECK(t.steps[1].b == 3);
    CHECK(t.steps[1].value == Fraction(3, 1));
    CHECK(t.members[4] == std::vector<std::size_t>{0, 1, 2});
  }
  SECTION("complete linkage") {
    MergeTrace t = linkage_simulate(g, Linkage::Complete);
    CHECK(t.steps[1].value == Fraction(4, 1));
  }
  SECTION("average linkage") {
    MergeTrace t = linkage_simulate(g, Linkage::Average);
    CHECK(t.steps[1].value == Fraction(7, 2));
  }
}

TEST_CASE("single-linkage merge values equal the metric MST, sorted", "[oracle]") {
  std::mt19937_64 rng(7105);
  for (int it = 0; it < 10; ++it) {
    RandomPlanarParams p;
    p.n_vertices = 9;
    PlanarEmbedding g = random_planar(p, rng);
    MergeTrace t = linkage_simulate(g, Linkage::Single);
    std::vector<i64> got;
    for (const MergeStep& s : t.steps) {
      REQUIRE(s.value.den == 1);
      got.push_back(static_cast<i64>(s.value.num));
    }
    std::sort(got.begin(), got.end());
    CHECK(got == mst_of_metric(apsp(g)));
  }
}

TEST_CASE("simple cycle enumeration on known shapes", "[oracle]") {
  SECTION("triangle has one cycle") {
    PlanarEmbedding g = build_embedding(
        3, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false}},
        {{0, 2}, {1, 0}, {2, 1}}, {1, 1, 1});
    auto cycles = enumerate_simple_cycles(g);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].darts.size() == 3);
  }
  SECTION("theta graph: three two-edge cycles") {
    PlanarEmbedding g = build_embedding(2, {{0, 1, 1, false}, {0, 1, 1, false}, {0, 1, 1, false}},
                                        {{0, 1, 2}, {2, 1, 0}}, {1, 1});
    CHECK(enumerate_simple_cycles(g).size() == 3);
  }
  SECTION("single self-loop") {
    PlanarEmbedding g = build_embedding(1, {{0, 0, 1, false}}, {{0, 0}}, {1});
    auto cycles = enumerate_simple_cycles(g);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].darts.size() == 1);
  }
  SECTION("3x3 grid: the 13 polyomino boundaries") {
    CHECK(enumerate_simple_cycles(grid_graph(3, 3)).size() == 13);
  }
  SECTION("each cycle reported in exactly one orientation") {
    std::mt19937_64 rng(7106);
    RandomPlanarParams p;
    p.n_vertices = 8;
    PlanarEmbedding g = random_planar(p, rng);
    auto cycles = enumerate_simple_cycles(g);
    std::set<std::vector<Dart>> seen;
    for (const Cycle& c : cycles) {
      CHECK(seen.insert(c.darts).second);
      // normalize the reversal to its smallest rotation before lookup
      std::vector<Dart> rev = reversed(c).darts;
      std::vector<Dart> best = rev;
      for (std::size_t s = 0; s < rev.size(); ++s) {
        std::rotate(rev.begin(), rev.begin() + 1, rev.end());
        best = std::min(best, rev);
      }
      CHECK(!seen.count(best));
    }
    CHECK(cycles.size() <=
          (std::size_t(1) << (g.edge_count() - g.vertex_count() + 1)));
  }
  SECTION("budget guards") {
    CHECK_THROWS_AS(enumerate_simple_cycles(grid_graph(5, 5)), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_simple_cycles(grid_graph(4, 4), 16, 8), BudgetExceeded);
    CHECK_NOTHROW(enumerate_simple_cycles(grid_graph(4, 4), 16, 9));
  }
}

TEST_CASE("bipartition optima equal the best simple dual cycle", "[oracle]") {
  std::mt19937_64 rng(7107);
  for (int it = 0; it < 20; ++it) {
    RandomPlanarParams p;
    p.n_vertices = 8;
    PlanarEmbedding g = random_planar(p, rng);
    BruteCutResult brute = brute_cuts(g);
    DualEmbedding d = dualize(g);
    std::size_t f_inf = d.graph.outer_face();
    const i64 W = g.total_vertex_weight();
    REQUIRE(d.graph.total_face_weight() == W);

    bool any = false;
    Fraction best_q, best_s;
    for (const Cycle& c : enumerate_simple_cycles(d.graph)) {
      i64 enc = enclosed_weight(d.graph, c, f_inf);
      if (enc == 0 || enc == W) continue;
      i64 cost = cycle_cost(d.graph, c);
      Fraction q{cost, std::min(enc, W - enc)};
      Fraction s{cost, checked_mul(enc, W - enc)};
      if (!any || q < best_q) best_q = q;
      if (!any || s < best_s) best_s = s;
      any = true;
    }
    REQUIRE(any);
    CHECK(best_q == brute.best_quotient);
    CHECK(best_s == brute.best_sparsity);
  }
}
