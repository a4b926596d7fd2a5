#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "planecut/cluster.hpp"
#include "planecut/dual.hpp"
#include "planecut/gen.hpp"
#include "planecut/hardness.hpp"
#include "planecut/oracle.hpp"

using namespace planecut;

namespace {

PlanarEmbedding dual_of(const PlanarEmbedding& primal) { return dualize(primal).graph; }

PlanarEmbedding wide_minplus_dual(std::size_t n) {
  std::vector<i64> a, b, c;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(3 + 2 * i64(i));
    b.push_back(i64(2 * n) - i64(i));
    c.push_back(9 + i64((i * 5) % 7));
  }
  return dual_of(gen_minplus(a, b, c).graph);
}

// exact equality of the in-cluster ratio against the full graph, via expansion
void check_quotients(const PlanarEmbedding& g, const Cluster& c, std::size_t max_rank) {
  auto cycles = enumerate_simple_cycles(c.graph, c.graph.vertex_count(), max_rank);
  for (const Cycle& cy : cycles) {
    i64 enc = enclosed_weight(c.graph, cy, c.graph.outer_face());
    i64 den = std::min(enc, c.graph.total_face_weight() - enc);
    if (den <= 0) continue;
    Fraction local(cycle_cost(c.graph, cy), den);
    REQUIRE(local == cycle_quotient(g, c.expand(cy)));
  }
}

void check_structure(const PlanarEmbedding& g, const ClusterTree& t) {
  REQUIRE(t.degenerate_leaves == 0);
  REQUIRE(t.max_scars <= 6);
  REQUIRE(t.max_paths <= 12);
  std::size_t leaves = 0;
  for (const Cluster& c : t.nodes) {
    REQUIRE(c.graph.total_face_weight() == g.total_face_weight());
    REQUIRE(c.scars.size() <= 6);
    if (c.leaf()) {
      ++leaves;
      REQUIRE(c.graph.face_count() <= t.leaf_face_threshold);
    } else {
      REQUIRE(t.nodes[c.child_inside].parent == std::size_t(&c - t.nodes.data()));
      REQUIRE(t.nodes[c.child_outside].depth == c.depth + 1);
    }
    for (const ScarRecord& s : c.scars) {
      REQUIRE(s.face < c.graph.face_count());
      REQUIRE(s.path_a.vertices.size() == s.path_a.prefix_cost.size());
      REQUIRE(s.path_a.prefix_cost.front() == 0);
      REQUIRE(s.path_b.prefix_cost.front() == 0);
      // both paths start at the same branch vertex and costs never decrease
      REQUIRE(s.path_a.vertices.front() == s.path_b.vertices.front());
      for (std::size_t i = 1; i < s.path_a.prefix_cost.size(); ++i)
        REQUIRE(s.path_a.prefix_cost[i] > s.path_a.prefix_cost[i - 1]);
    }
  }
  REQUIRE(leaves == t.leaf_count);
}

}  // namespace

TEST_CASE("triangulation leaves only short faces and conserves weight", "[clusters]") {
  PlanarEmbedding g = dual_of(grid_graph(6, 6));
  Triangulated tri = triangulate_faces(g);
  REQUIRE(tri.real_edges == g.edge_count());
  REQUIRE(tri.stuck_faces == 0);
  REQUIRE(tri.graph.total_face_weight() == g.total_face_weight());
  for (std::size_t f = 0; f < tri.graph.face_count(); ++f)
    REQUIRE(tri.graph.face(f).size() <= 3);
  for (std::size_t e = tri.real_edges; e < tri.graph.edge_count(); ++e) {
    REQUIRE(tri.graph.edge(e).artificial);
    REQUIRE(tri.graph.edge(e).cost == 1);
  }
  for (std::size_t e = 0; e < tri.real_edges; ++e) {
    REQUIRE(tri.graph.edge(e).u == g.edge(e).u);
    REQUIRE(tri.graph.edge(e).v == g.edge(e).v);
    REQUIRE(tri.graph.edge(e).cost == g.edge(e).cost);
  }
  // one weighted piece per input face, carrying the full weight
  std::vector<i64> carried(g.face_count(), 0);
  std::vector<std::size_t> pieces(g.face_count(), 0);
  for (std::size_t f2 = 0; f2 < tri.graph.face_count(); ++f2) {
    ++pieces[tri.face_origin[f2]];
    if (tri.face_designated[f2]) carried[tri.face_origin[f2]] += tri.graph.face_weight(f2);
    else REQUIRE(tri.graph.face_weight(f2) == 0);
  }
  for (std::size_t f = 0; f < g.face_count(); ++f) {
    REQUIRE(carried[f] == g.face_weight(f));
    REQUIRE(pieces[f] >= 1);
  }
}

TEST_CASE("triangulation preserves enclosed weights of chord-free cycles", "[clusters]") {
  PlanarEmbedding g = dual_of(grid_graph(5, 7));
  Triangulated tri = triangulate_faces(g);
  ShortestPathTree spt = shortest_path_tree(g, 0);
  std::size_t checked = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (spt.in_tree_edge[e]) continue;
    Cycle c = fundamental_cycle(g, spt, PlanarEmbedding::dart_uv(e));
    i64 in_g = enclosed_weight(g, c, g.outer_face());
    // same darts exist in the triangulated graph (edge ids are shared), and the
    // reference face's piece sits on the same side
    i64 in_tri = enclosed_weight(tri.graph, c, tri.graph.face_of(g.face(g.outer_face()).front()));
    REQUIRE(in_g == in_tri);
    ++checked;
  }
  REQUIRE(checked > 10);
}

TEST_CASE("degree-2 splicing builds compound edges with exact expansions", "[clusters]") {
  // hexagon 0-1-2-4-5-3-0 as a ring of degree-2 vertices
  PlanarEmbedding g = build_embedding(
      6,
      {{0, 1, 2, false}, {1, 2, 3, false}, {2, 4, 5, false}, {4, 5, 7, false},
       {5, 3, 11, false}, {3, 0, 13, false}},
      {{0, 5}, {1, 0}, {2, 1}, {5, 4}, {3, 2}, {4, 3}}, std::vector<i64>(6, 1));

  // an all-removable ring has no kept endpoint to anchor a chain: left intact
  SplicedGraph ring = splice_degree_two(g, std::vector<char>(6, 1));
  REQUIRE(ring.graph.vertex_count() == 6);
  REQUIRE(ring.graph.edge_count() == 6);

  // keeping 0 and 4 splits the ring into two compound edges
  SplicedGraph sp = splice_degree_two(g, {0, 1, 1, 1, 0, 1});
  REQUIRE(sp.graph.vertex_count() == 2);
  REQUIRE(sp.graph.edge_count() == 2);
  REQUIRE(sp.graph.face_count() == g.face_count());
  i64 total = 0;
  for (std::size_t e = 0; e < sp.graph.edge_count(); ++e) total += sp.graph.edge(e).cost;
  REQUIRE(total == 2 + 3 + 5 + 7 + 11 + 13);
  // expansions chain up and cover every original edge once
  std::vector<char> used(g.edge_count(), 0);
  for (std::size_t e = 0; e < sp.graph.edge_count(); ++e) {
    const std::vector<Dart>& ex = sp.edge_expansion[e];
    REQUIRE(!ex.empty());
    for (std::size_t i = 0; i + 1 < ex.size(); ++i)
      REQUIRE(g.head(ex[i]) == g.tail(ex[i + 1]));
    REQUIRE(g.tail(ex.front()) == sp.vertex_map[sp.graph.edge(e).u]);
    REQUIRE(g.head(ex.back()) == sp.vertex_map[sp.graph.edge(e).v]);
    i64 cost = 0;
    for (Dart d : ex) {
      REQUIRE(!used[PlanarEmbedding::edge_of(d)]);
      used[PlanarEmbedding::edge_of(d)] = 1;
      cost += g.cost(d);
    }
    REQUIRE(cost == sp.graph.edge(e).cost);
  }
  for (char u : used) REQUIRE(u == 1);
}

TEST_CASE("splicing skips unmarked vertices and never mixes edge kinds", "[clusters]") {
  PlanarEmbedding g = build_embedding(
      4, {{0, 1, 2, false}, {1, 2, 3, true}, {2, 3, 5, true}, {3, 0, 7, false}},
      {{0, 3}, {1, 0}, {2, 1}, {3, 2}}, std::vector<i64>(4, 1));
  // vertices 1 and 3 join a real and a scaffolding edge: never spliced
  SplicedGraph sp = splice_degree_two(g, {1, 1, 1, 1});
  REQUIRE(sp.old_vertex_to_new[1] != NONE);
  REQUIRE(sp.old_vertex_to_new[3] != NONE);
  REQUIRE(sp.old_vertex_to_new[0] == NONE);
  REQUIRE(sp.old_vertex_to_new[2] == NONE);
  REQUIRE(sp.graph.edge_count() == 2);
  for (std::size_t e = 0; e < sp.graph.edge_count(); ++e) {
    REQUIRE(sp.edge_expansion[e].size() == 2);
    if (sp.graph.edge(e).artificial)
      REQUIRE(sp.graph.edge(e).cost == 3 + 5);
    else
      REQUIRE(sp.graph.edge(e).cost == 7 + 2);
  }

  SplicedGraph none = splice_degree_two(g, std::vector<char>(4, 0));
  REQUIRE(none.graph.vertex_count() == 4);
  REQUIRE(none.graph.edge_count() == 4);
}

TEST_CASE("small inputs become a single-node tree", "[clusters]") {
  PlanarEmbedding g = dual_of(grid_graph(3, 3));  // nine dual faces
  REQUIRE(g.face_count() <= 12);
  ClusterTree t = build_cluster_tree(g, 0);
  REQUIRE(t.nodes.size() == 1);
  REQUIRE(t.nodes[0].leaf());
  REQUIRE(t.nodes[0].scars.empty());
  REQUIRE(t.leaf_count == 1);
  CHECK_THROWS_AS(build_cluster_tree(g, g.vertex_count()), InvalidInput);
  CHECK_THROWS_AS(build_cluster_tree(g, 0, 1), InvalidInput);
}

TEST_CASE("cluster trees satisfy the structural contract", "[clusters]") {
  std::mt19937_64 rng(4501);
  RandomPlanarParams p;
  for (std::size_t n : {40, 90, 160}) {
    p.n_vertices = n;
    PlanarEmbedding g = dual_of(random_planar(p, rng));
    ClusterTree t = build_cluster_tree(g, 0);
    check_structure(g, t);
  }
  for (std::size_t k : {8, 14}) {
    PlanarEmbedding g = dual_of(grid_graph(k, k));
    ClusterTree t = build_cluster_tree(g, 0);
    check_structure(g, t);
    // depth stays logarithmic in the face count
    double logf = std::log2(double(g.face_count()));
    REQUIRE(double(t.max_depth) <= 4.0 * logf);
  }
  PlanarEmbedding g = dual_of(dumbbell_graph(6));  // dual with a self-loop
  check_structure(g, build_cluster_tree(g, 0));
}

TEST_CASE("cluster quotients equal full-graph quotients exactly", "[clusters]") {
  PlanarEmbedding g8 = dual_of(grid_graph(8, 8));
  ClusterTree t8 = build_cluster_tree(g8, 0);
  std::size_t probed = 0;
  for (std::size_t i = 1; i < t8.nodes.size() && probed < 5; ++i) {
    if (t8.nodes[i].graph.vertex_count() > 12) continue;
    check_quotients(g8, t8.nodes[i], 25);
    ++probed;
  }
  REQUIRE(probed >= 3);

  // three-vertex multigraph: parallel edges, bigon faces, compound splices
  PlanarEmbedding gm = wide_minplus_dual(12);
  ClusterTree tm = build_cluster_tree(gm, 0);
  REQUIRE(tm.nodes.size() > 1);
  check_structure(gm, tm);
  for (const Cluster& c : tm.nodes)
    if (c.graph.vertex_count() <= 6) check_quotients(gm, c, 4000);

  std::mt19937_64 rng(4502);
  RandomPlanarParams p;
  p.n_vertices = 60;
  PlanarEmbedding gr = dual_of(random_planar(p, rng));
  ClusterTree tr = build_cluster_tree(gr, 0);
  probed = 0;
  for (std::size_t i = 1; i < tr.nodes.size() && probed < 4; ++i) {
    if (tr.nodes[i].graph.vertex_count() > 11) continue;
    check_quotients(gr, tr.nodes[i], 25);
    ++probed;
  }
  REQUIRE(probed >= 2);
}

TEST_CASE("partial cycles always touch an intersection path", "[clusters]") {
  PlanarEmbedding g = dual_of(grid_graph(4, 4));
  ClusterTree t = build_cluster_tree(g, 0);
  REQUIRE(t.nodes.size() > 1);
  auto cycles = enumerate_simple_cycles(g, g.vertex_count(), 4000);
  REQUIRE(cycles.size() > 50);
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    const Cluster& c = t.nodes[i];
    std::set<std::size_t> members(c.vertex_to_global.begin(), c.vertex_to_global.end());
    std::set<std::size_t> on_path;
    for (const ScarRecord& s : c.scars) {
      on_path.insert(s.path_a.vertices.begin(), s.path_a.vertices.end());
      on_path.insert(s.path_b.vertices.begin(), s.path_b.vertices.end());
    }
    for (const Cycle& cy : cycles) {
      bool in = false, out = false, touch = false;
      for (Dart d : cy.darts) {
        std::size_t v = g.tail(d);
        (members.count(v) ? in : out) = true;
        if (on_path.count(v)) touch = true;
      }
      if (in && out) REQUIRE(touch);
    }
  }
}

TEST_CASE("decomposition is deterministic", "[clusters]") {
  std::mt19937_64 rng(4503);
  RandomPlanarParams p;
  p.n_vertices = 120;
  PlanarEmbedding g = dual_of(random_planar(p, rng));
  ClusterTree a = build_cluster_tree(g, 0);
  ClusterTree b = build_cluster_tree(g, 0);
  REQUIRE(a.nodes.size() == b.nodes.size());
  REQUIRE(a.max_depth == b.max_depth);
  REQUIRE(a.total_vertices == b.total_vertices);
  REQUIRE(a.total_edges == b.total_edges);
  for (std::size_t i = 0; i < a.nodes.size(); i += 5) {
    REQUIRE(a.nodes[i].vertex_to_global == b.nodes[i].vertex_to_global);
    REQUIRE(a.nodes[i].graph.edge_count() == b.nodes[i].graph.edge_count());
    for (std::size_t e = 0; e < a.nodes[i].graph.edge_count(); ++e) {
      REQUIRE(a.nodes[i].graph.edge(e).u == b.nodes[i].graph.edge(e).u);
      REQUIRE(a.nodes[i].graph.edge(e).cost == b.nodes[i].graph.edge(e).cost);
    }
  }
}

TEST_CASE("total cluster size stays near-linear", "[clusters]") {
  PlanarEmbedding g = dual_of(grid_graph(40, 40));
  ClusterTree t = build_cluster_tree(g, 0);
  check_structure(g, t);
  REQUIRE(t.size_constant <= 8.0);
  REQUIRE(t.max_depth <= 4 * std::size_t(std::log2(double(g.face_count()))));
}
