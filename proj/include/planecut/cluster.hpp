#pragma once
// Recursive cycle-separator decomposition of a face-weighted embedding.
// Each split runs along a fundamental cycle S = P1 P2 P3 of a shortest-path
// tree (P1, P2 tree paths, P3 one closing edge). The side a child loses is
// replaced by a single "scar" face carrying the removed weight, so the
// cost-to-weight ratio of any cycle inside a cluster equals its ratio in the
// full graph. Degree-2 boundary vertices are spliced into compound edges to
// keep the total size of all clusters near-linear.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "planecut/cycles.hpp"
#include "planecut/paths.hpp"
#include "planecut/subgraph.hpp"

namespace planecut {

// min(inside, outside) makes the value independent of which face plays
// infinity, so it can be evaluated in any weight-conserving subgraph.
inline Fraction cycle_quotient(const PlanarEmbedding& g, const Cycle& c) {
  i64 enc = enclosed_weight(g, c, g.outer_face());
  i64 den = std::min(enc, g.total_face_weight() - enc);
  if (den <= 0) throw NoCut("cycle does not separate weight");
  return Fraction(cycle_cost(g, c), den);
}

struct Triangulated {
  PlanarEmbedding graph;                 // input vertex ids; chords appended after input edges
  std::size_t real_edges = 0;            // edge ids below this are the input edge ids
  std::vector<std::size_t> face_origin;  // face -> input face
  std::vector<char> face_designated;     // the one piece per input face holding its weight
  std::size_t stuck_faces = 0;           // faces left longer than a triangle
};

// Adds scaffolding chords until every face has at most three darts (degenerate
// alternating multigraph faces may stay longer). Each input face's weight rides
// on the piece holding its first boundary dart; a cycle avoiding chords can
// never separate two pieces of one face, so enclosed weights are unchanged.
inline Triangulated triangulate_faces(const PlanarEmbedding& g) {
  std::vector<EdgeRec> edges = g.edges();
  std::vector<std::size_t> tail(g.dart_count());
  for (Dart d = 0; d < g.dart_count(); ++d) tail[d] = g.tail(d);

  std::vector<std::vector<Dart>> cyc;  // editable face dart lists, pieces appended
  std::vector<std::size_t> origin;
  cyc.reserve(2 * g.face_count());
  origin.reserve(2 * g.face_count());
  for (std::size_t f = 0; f < g.face_count(); ++f) {
    cyc.push_back(g.face(f));
    origin.push_back(f);
  }

  auto add_chord = [&](std::size_t u, std::size_t v) {
    edges.push_back(EdgeRec{u, v, 1, true});
    tail.push_back(u);
    tail.push_back(v);
    return edges.size() - 1;
  };

  std::size_t stuck = 0;
  for (std::size_t f = 0; f < cyc.size(); ++f) {
    while (cyc[f].size() > 3) {
      std::vector<Dart> c = cyc[f];  // copy: cyc may reallocate below
      const std::size_t len = c.size();
      std::size_t pick = NONE, span = 2;
      for (std::size_t i = 0; i < len && pick == NONE; ++i)
        if (tail[c[i]] != tail[c[(i + 2) % len]]) pick = i;
      if (pick == NONE && len > 4) {
        span = 3;
        for (std::size_t i = 0; i < len && pick == NONE; ++i)
          if (tail[c[i]] != tail[c[(i + 3) % len]]) pick = i;
      }
      if (pick == NONE) {  // two vertices alternating all the way around
        ++stuck;
        break;
      }
      std::size_t e = add_chord(tail[c[pick]], tail[c[(pick + span) % len]]);
      std::vector<Dart> piece;
      for (std::size_t j = 0; j < span; ++j) piece.push_back(c[(pick + j) % len]);
      piece.push_back(PlanarEmbedding::dart_vu(e));
      std::vector<Dart> rest;
      rest.push_back(PlanarEmbedding::dart_uv(e));
      for (std::size_t j = (pick + span) % len; j != pick; j = (j + 1) % len)
        rest.push_back(c[j]);
      cyc.push_back(std::move(piece));
      origin.push_back(origin[f]);
      cyc[f] = std::move(rest);
    }
  }

  // rotations from the face structure: rot_next(d) = face_next(reverse(d))
  const std::size_t dart_cnt = 2 * edges.size();
  std::vector<std::size_t> dart_face(dart_cnt, NONE), dart_pos(dart_cnt, NONE);
  for (std::size_t f = 0; f < cyc.size(); ++f)
    for (std::size_t i = 0; i < cyc[f].size(); ++i) {
      require(dart_face[cyc[f][i]] == NONE, "triangulation reuses a dart");
      dart_face[cyc[f][i]] = f;
      dart_pos[cyc[f][i]] = i;
    }
  for (Dart d = 0; d < dart_cnt; ++d) require(dart_face[d] != NONE, "triangulation lost a dart");
  auto face_next = [&](Dart d) {
    const std::vector<Dart>& fc = cyc[dart_face[d]];
    std::size_t p = dart_pos[d] + 1;
    return fc[p == fc.size() ? 0 : p];
  };
  std::vector<std::vector<Dart>> rot(g.vertex_count());
  std::vector<char> placed(dart_cnt, 0);
  for (Dart d0 = 0; d0 < dart_cnt; ++d0) {
    if (placed[d0]) continue;
    std::size_t v = tail[d0];
    Dart d = d0;
    do {
      require(!placed[d] && tail[d] == v, "rotation trace left its vertex");
      placed[d] = 1;
      rot[v].push_back(d);
      d = face_next(PlanarEmbedding::reverse(d));
    } while (d != d0);
  }

  Triangulated out;
  out.real_edges = g.edge_count();
  out.stuck_faces = stuck;
  PlanarEmbedding built = build_embedding_from_darts(
      g.vertex_count(), std::move(edges), rot, std::vector<i64>(g.vertex_weights()));
  std::vector<i64> fw(built.face_count(), 0);
  out.face_origin.assign(built.face_count(), NONE);
  out.face_designated.assign(built.face_count(), 0);
  for (std::size_t f2 = 0; f2 < built.face_count(); ++f2)
    out.face_origin[f2] = origin[dart_face[built.face(f2).front()]];
  for (std::size_t f = 0; f < g.face_count(); ++f) {
    std::size_t f2 = built.face_of(g.face(f).front());
    require(out.face_origin[f2] == f, "designated piece strayed from its face");
    out.face_designated[f2] = 1;
    fw[f2] = g.face_weight(f);
  }
  out.graph = built.with_face_weights(std::move(fw));
  require(out.graph.total_face_weight() == g.total_face_weight(), "triangulation weight leak");
  return out;
}

struct SplicedGraph {
  PlanarEmbedding graph;
  std::vector<std::size_t> vertex_map;            // new vertex -> old
  std::vector<std::size_t> old_vertex_to_new;     // NONE when spliced away
  std::vector<std::vector<Dart>> edge_expansion;  // new edge -> old darts, u-to-v order
  std::vector<std::size_t> face_map;              // new face -> old face
};

// Replaces maximal chains of marked degree-2 vertices with single compound
// edges (costs add, faces survive one-to-one). Chains mixing real and
// scaffolding edges stay untouched, as do all-removable rings.
inline SplicedGraph splice_degree_two(const PlanarEmbedding& g,
                                      const std::vector<char>& spliceable) {
  const std::size_t n = g.vertex_count();
  if (spliceable.size() != n) throw InvalidInput("spliceable mask size mismatch");
  std::vector<char> removable(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!spliceable[v] || g.degree(v) != 2) continue;
    Dart a = g.rotation(v)[0], b = g.rotation(v)[1];
    if (PlanarEmbedding::edge_of(a) == PlanarEmbedding::edge_of(b)) continue;  // lone loop
    if (g.artificial_dart(a) != g.artificial_dart(b)) continue;                // mixed chain
    removable[v] = 1;
  }

  struct Chain {
    std::vector<Dart> darts;
    bool artificial = false;
  };
  std::vector<Chain> chains;
  std::vector<char> consumed(g.dart_count(), 0);
  for (std::size_t u = 0; u < n; ++u) {
    if (removable[u]) continue;
    for (Dart d0 : g.rotation(u)) {
      if (consumed[d0] || !removable[g.head(d0)]) continue;
      Chain ch;
      ch.artificial = g.artificial_dart(d0);
      Dart d = d0;
      ch.darts.push_back(d);
      std::size_t v = g.head(d);
      while (removable[v]) {
        Dart back = PlanarEmbedding::reverse(d);
        Dart next = g.rotation(v)[0] == back ? g.rotation(v)[1] : g.rotation(v)[0];
        require(g.artificial_dart(next) == ch.artificial, "chain mixes edge kinds");
        ch.darts.push_back(next);
        d = next;
        v = g.head(d);
      }
      for (Dart cd : ch.darts) consumed[cd] = consumed[PlanarEmbedding::reverse(cd)] = 1;
      chains.push_back(std::move(ch));
    }
  }
  // a ring of removable vertices never reaches a kept endpoint: leave it whole
  for (std::size_t v = 0; v < n; ++v)
    if (removable[v] && !consumed[g.rotation(v)[0]]) removable[v] = 0;

  SplicedGraph out;
  out.old_vertex_to_new.assign(n, NONE);
  for (std::size_t v = 0; v < n; ++v)
    if (!removable[v]) {
      out.old_vertex_to_new[v] = out.vertex_map.size();
      out.vertex_map.push_back(v);
    }

  std::vector<EdgeRec> edges;
  std::vector<Dart> replacement(g.dart_count(), NONE);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (consumed[PlanarEmbedding::dart_uv(e)]) continue;
    const EdgeRec& er = g.edge(e);
    std::size_t ne = edges.size();
    edges.push_back(
        EdgeRec{out.old_vertex_to_new[er.u], out.old_vertex_to_new[er.v], er.cost, er.artificial});
    out.edge_expansion.push_back({PlanarEmbedding::dart_uv(e)});
    replacement[PlanarEmbedding::dart_uv(e)] = PlanarEmbedding::dart_uv(ne);
    replacement[PlanarEmbedding::dart_vu(e)] = PlanarEmbedding::dart_vu(ne);
  }
  for (Chain& ch : chains) {
    std::size_t u = g.tail(ch.darts.front()), w = g.head(ch.darts.back());
    i64 cost = 0;
    for (Dart d : ch.darts) cost = checked_add(cost, g.cost(d));
    std::size_t ne = edges.size();
    edges.push_back(EdgeRec{out.old_vertex_to_new[u], out.old_vertex_to_new[w], cost,
                            ch.artificial});
    replacement[ch.darts.front()] = PlanarEmbedding::dart_uv(ne);
    replacement[PlanarEmbedding::reverse(ch.darts.back())] = PlanarEmbedding::dart_vu(ne);
    out.edge_expansion.push_back(std::move(ch.darts));
  }

  std::vector<std::vector<Dart>> rot(out.vertex_map.size());
  for (std::size_t v2 = 0; v2 < out.vertex_map.size(); ++v2)
    for (Dart d : g.rotation(out.vertex_map[v2]))
      if (replacement[d] != NONE) rot[v2].push_back(replacement[d]);

  std::vector<i64> vw(out.vertex_map.size());
  for (std::size_t v2 = 0; v2 < out.vertex_map.size(); ++v2)
    vw[v2] = g.vertex_weight(out.vertex_map[v2]);
  PlanarEmbedding built =
      build_embedding_from_darts(out.vertex_map.size(), std::move(edges), rot, std::move(vw));
  require(built.face_count() == g.face_count(), "splice changed the face count");

  auto to_old_dart = [&](Dart nd) {
    const std::vector<Dart>& ex = out.edge_expansion[nd >> 1];
    return (nd & 1) ? PlanarEmbedding::reverse(ex.back()) : ex.front();
  };
  std::vector<i64> fw(built.face_count(), 0);
  out.face_map.assign(built.face_count(), NONE);
  for (std::size_t f2 = 0; f2 < built.face_count(); ++f2) {
    std::size_t f = g.face_of(to_old_dart(built.face(f2).front()));
    out.face_map[f2] = f;
    fw[f2] = g.face_weight(f);
  }
  out.graph = built.with_face_weights(std::move(fw));
  require(out.graph.total_face_weight() == g.total_face_weight(), "splice weight leak");
  return out;
}

// A shortest path recorded when a scar was made: any cycle that is only
// partially inside the scarred cluster must touch one of the two.
struct IntersectionPath {
  std::vector<std::size_t> vertices;  // ids in the decomposed graph, path order
  std::vector<i64> prefix_cost;       // cost from vertices[0] to vertices[i]
};

struct ScarRecord {
  std::size_t face = NONE;  // face id within the cluster graph
  IntersectionPath path_a, path_b;
};

struct Cluster {
  PlanarEmbedding graph;
  std::vector<std::size_t> vertex_to_global;      // cluster vertex -> decomposed-graph vertex
  std::vector<std::vector<Dart>> edge_expansion;  // cluster edge -> global darts, u-to-v order
  std::vector<ScarRecord> scars;
  std::size_t parent = NONE;
  std::size_t child_inside = NONE, child_outside = NONE;
  std::size_t depth = 0;
  bool balanced_scars = false;  // separator criterion used at this node
  double balance = 0;           // max(side value) / total for that criterion

  bool leaf() const { return child_inside == NONE; }

  std::vector<char> scar_mask() const {
    std::vector<char> m(graph.face_count(), 0);
    for (const ScarRecord& s : scars) m[s.face] = 1;
    return m;
  }

  // cluster cycle -> cycle of the decomposed graph (compound edges expanded)
  Cycle expand(const Cycle& c) const {
    Cycle out;
    for (Dart d : c.darts) {
      require(!graph.artificial_dart(d), "cycle through a scaffolding edge");
      const std::vector<Dart>& ex = edge_expansion[d >> 1];
      if (d & 1)
        for (auto it = ex.rbegin(); it != ex.rend(); ++it)
          out.darts.push_back(PlanarEmbedding::reverse(*it));
      else
        out.darts.insert(out.darts.end(), ex.begin(), ex.end());
    }
    return out;
  }
};

struct ClusterTree {
  std::vector<Cluster> nodes;  // nodes[0] is the root
  std::size_t root_vertex = NONE;
  std::vector<i64> dist_from_root;
  std::size_t leaf_face_threshold = 12;
  std::size_t max_depth = 0, max_scars = 0, max_paths = 0;
  std::size_t leaf_count = 0, degenerate_leaves = 0, stuck_faces = 0;
  std::size_t total_vertices = 0, total_edges = 0;
  double size_constant = 0;  // (total_vertices + total_edges) / (n log2 n)
};

namespace detail {

// tree path from the LCA down to x, as global-id vertices with prefix costs
inline IntersectionPath tree_path_from(const ShortestPathTree& t, std::size_t lca, std::size_t x,
                                       const std::vector<std::size_t>& to_global) {
  std::vector<std::size_t> chain;
  for (std::size_t v = x; v != lca; v = t.parent[v]) chain.push_back(v);
  chain.push_back(lca);
  IntersectionPath p;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    p.vertices.push_back(to_global[*it]);
    p.prefix_cost.push_back(t.dist[*it] - t.dist[lca]);
  }
  return p;
}

inline void split_cluster(ClusterTree& t, std::size_t idx) {
  // copies of everything needed from the node: push_back below invalidates refs
  const std::size_t cluster_faces = t.nodes[idx].graph.face_count();
  if (cluster_faces <= t.leaf_face_threshold) {
    ++t.leaf_count;
    return;
  }
  Triangulated tri = triangulate_faces(t.nodes[idx].graph);
  t.stuck_faces += tri.stuck_faces;

  std::size_t rho = 0;
  {
    const std::vector<std::size_t>& vg = t.nodes[idx].vertex_to_global;
    for (std::size_t v = 1; v < vg.size(); ++v) {
      i64 dv = t.dist_from_root[vg[v]], dr = t.dist_from_root[vg[rho]];
      if (dv < dr || (dv == dr && vg[v] < vg[rho])) rho = v;
    }
  }
  ShortestPathTree spt = shortest_path_tree(tri.graph, rho);
  for (std::size_t v = 0; v < tri.graph.vertex_count(); ++v)
    require(spt.reached(v), "cluster not connected by usable edges");

  // dual tree over nontree edges; subtree sums give both sides of every
  // candidate separator at once
  const std::size_t F = tri.graph.face_count();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(F);
  for (std::size_t e = 0; e < tri.graph.edge_count(); ++e) {
    if (spt.in_tree_edge[e]) continue;
    std::size_t fa = tri.graph.face_of(PlanarEmbedding::dart_uv(e));
    std::size_t fb = tri.graph.face_of(PlanarEmbedding::dart_vu(e));
    require(fa != fb, "nontree edge borders a single face");
    adj[fa].push_back({fb, e});
    adj[fb].push_back({fa, e});
  }
  std::vector<std::size_t> parent_face(F, NONE), via_edge(F, NONE), order;
  std::vector<char> seen(F, 0);
  order.reserve(F);
  seen[0] = 1;
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [f2, e] : adj[order[i]])
      if (!seen[f2]) {
        seen[f2] = 1;
        parent_face[f2] = order[i];
        via_edge[f2] = e;
        order.push_back(f2);
      }
  require(order.size() == F, "face links do not span the cluster");

  const std::size_t scar_total = t.nodes[idx].scars.size();
  std::vector<char> scar_face = t.nodes[idx].scar_mask();
  std::vector<i64> face_sub(F, 0), scar_sub(F, 0);
  for (std::size_t f2 = 0; f2 < F; ++f2)
    if (tri.face_designated[f2]) {
      face_sub[f2] = 1;
      scar_sub[f2] = scar_face[tri.face_origin[f2]] ? 1 : 0;
    }
  for (std::size_t i = F; i-- > 1;) {
    face_sub[parent_face[order[i]]] += face_sub[order[i]];
    scar_sub[parent_face[order[i]]] += scar_sub[order[i]];
  }
  const i64 face_total = face_sub[0], scar_total_v = scar_sub[0];

  // primary criterion alternates with depth; the other breaks ties so the
  // chosen separator still makes face progress at scar-balancing levels
  auto select = [&](bool scars_primary) {
    std::size_t best_face = NONE;
    i64 best_main = 0, best_tie = 0;
    for (std::size_t f2 = 0; f2 < F; ++f2) {
      if (via_edge[f2] == NONE) continue;
      i64 fs = std::max(face_sub[f2], face_total - face_sub[f2]);
      i64 ss = std::max(scar_sub[f2], scar_total_v - scar_sub[f2]);
      i64 main = scars_primary ? ss : fs, tie = scars_primary ? fs : ss;
      if (best_face == NONE || main < best_main || (main == best_main && tie < best_tie) ||
          (main == best_main && tie == best_tie && via_edge[f2] < via_edge[best_face])) {
        best_face = f2;
        best_main = main;
        best_tie = tie;
      }
    }
    require(best_face != NONE, "no separator candidate");
    return best_face;
  };
  std::vector<std::vector<std::size_t>> kids(F);
  for (std::size_t f2 = 0; f2 < F; ++f2)
    if (parent_face[f2] != NONE) kids[parent_face[f2]].push_back(f2);

  Cluster children[2];
  // builds both children for the given separator; false when a side fails to
  // lose faces (the separator would make no progress)
  auto attempt = [&](std::size_t best_face) {
    const std::size_t e_star = via_edge[best_face];
    std::vector<char> inside(F, 0);
    std::vector<std::size_t> stack{best_face};
    while (!stack.empty()) {
      std::size_t f2 = stack.back();
      stack.pop_back();
      inside[f2] = 1;
      for (std::size_t k : kids[f2]) stack.push_back(k);
    }

    // the in/out boundary is exactly the fundamental cycle of e_star
    std::size_t x = tri.graph.head(PlanarEmbedding::dart_uv(e_star));
    std::size_t y = tri.graph.tail(PlanarEmbedding::dart_uv(e_star));
    std::size_t lca = tree_lca(spt, x, y);
    IntersectionPath path_a = tree_path_from(spt, lca, x, t.nodes[idx].vertex_to_global);
    IntersectionPath path_b = tree_path_from(spt, lca, y, t.nodes[idx].vertex_to_global);
    {
      Cycle s = fundamental_cycle(tri.graph, spt, PlanarEmbedding::dart_uv(e_star));
      std::vector<char> on_cycle(tri.graph.edge_count(), 0);
      for (Dart d : s.darts) on_cycle[PlanarEmbedding::edge_of(d)] = 1;
      for (std::size_t e = 0; e < tri.graph.edge_count(); ++e) {
        bool crossing = inside[tri.graph.face_of(PlanarEmbedding::dart_uv(e))] !=
                        inside[tri.graph.face_of(PlanarEmbedding::dart_vu(e))];
        require(crossing == static_cast<bool>(on_cycle[e]),
                "separator cycle differs from the side boundary");
      }
    }

    std::vector<char> on_sep_vertex(tri.graph.vertex_count(), 0);
    for (std::size_t e = 0; e < tri.graph.edge_count(); ++e) {
      bool a = inside[tri.graph.face_of(PlanarEmbedding::dart_uv(e))];
      bool b = inside[tri.graph.face_of(PlanarEmbedding::dart_vu(e))];
      if (a != b) on_sep_vertex[tri.graph.edge(e).u] = on_sep_vertex[tri.graph.edge(e).v] = 1;
    }

    bool shrank = true;
    for (int side = 0; side < 2; ++side) {
      const bool want_inside = side == 0;
      std::vector<char> keep(tri.graph.edge_count(), 0);
      for (std::size_t e = 0; e < tri.graph.edge_count(); ++e) {
        bool a = inside[tri.graph.face_of(PlanarEmbedding::dart_uv(e))];
        bool b = inside[tri.graph.face_of(PlanarEmbedding::dart_vu(e))];
        if (a != b)
          keep[e] = 1;  // on the separator, kept by both children
        else if (e < tri.real_edges && a == want_inside)
          keep[e] = 1;  // interior scaffolding chords drop out, merging pieces back
      }
      std::vector<SubgraphComponent> comps = subgraph_components(tri.graph, keep);
      require(comps.size() == 1, "separator side is not connected");
      SubgraphComponent& sc = comps[0];

      // each face is either the far-side lump (the new scar) or the near-side
      // pieces of exactly one cluster face
      std::vector<std::size_t> pre_origin(sc.graph.face_count(), NONE);
      std::size_t scar_pre = NONE;
      for (std::size_t f2 = 0; f2 < sc.graph.face_count(); ++f2) {
        bool far = false, near = false;
        for (std::size_t tf : sc.face_origins[f2]) {
          if (inside[tf] != want_inside)
            far = true;
          else {
            require(pre_origin[f2] == NONE || pre_origin[f2] == tri.face_origin[tf],
                    "face pieces merged across cluster faces");
            pre_origin[f2] = tri.face_origin[tf];
            near = true;
          }
        }
        require(!(far && near), "scar lump absorbed near-side faces");
        if (far) {
          require(scar_pre == NONE, "separator produced two scars");
          scar_pre = f2;
        }
      }
      require(scar_pre != NONE, "separator removed nothing");

      std::vector<char> mask(sc.graph.vertex_count(), 0);
      for (std::size_t v2 = 0; v2 < sc.graph.vertex_count(); ++v2)
        mask[v2] = on_sep_vertex[sc.vertex_map[v2]];
      SplicedGraph sp = splice_degree_two(sc.graph, mask);

      Cluster child;
      child.graph = sp.graph;
      child.parent = idx;
      child.depth = t.nodes[idx].depth + 1;
      child.vertex_to_global.resize(sp.vertex_map.size());
      for (std::size_t v3 = 0; v3 < sp.vertex_map.size(); ++v3)
        child.vertex_to_global[v3] =
            t.nodes[idx].vertex_to_global[sc.vertex_map[sp.vertex_map[v3]]];

      child.edge_expansion.resize(sp.graph.edge_count());
      for (std::size_t ne = 0; ne < sp.graph.edge_count(); ++ne) {
        std::vector<Dart> full;
        for (Dart od : sp.edge_expansion[ne]) {
          Dart td = sc.to_old_dart(od);
          std::size_t te = PlanarEmbedding::edge_of(td);
          if (te >= tri.real_edges) continue;  // scaffolding: expands to nothing
          const std::vector<Dart>& ex = t.nodes[idx].edge_expansion[te];
          if (td & 1)
            for (auto it = ex.rbegin(); it != ex.rend(); ++it)
              full.push_back(PlanarEmbedding::reverse(*it));
          else
            full.insert(full.end(), ex.begin(), ex.end());
        }
        child.edge_expansion[ne] = std::move(full);
      }

      // carry surviving scars and their paths; the far lump becomes the new scar
      std::vector<std::size_t> origin_to_child(cluster_faces, NONE);
      std::size_t new_scar_face = NONE;
      for (std::size_t f3 = 0; f3 < sp.graph.face_count(); ++f3) {
        std::size_t pre = sp.face_map[f3];
        if (pre == scar_pre)
          new_scar_face = f3;
        else
          origin_to_child[pre_origin[pre]] = f3;
      }
      require(new_scar_face != NONE, "scar face lost in splicing");
      for (const ScarRecord& s : t.nodes[idx].scars)
        if (origin_to_child[s.face] != NONE)
          child.scars.push_back(ScarRecord{origin_to_child[s.face], s.path_a, s.path_b});
      child.scars.push_back(ScarRecord{new_scar_face, path_a, path_b});
      require(child.scars.size() <= 6, "cluster exceeded six scars");

      require(child.graph.total_face_weight() == t.nodes[idx].graph.total_face_weight(),
              "cluster split weight leak");
      if (child.graph.face_count() >= cluster_faces) shrank = false;
      children[side] = std::move(child);
    }
    return shrank;
  };

  bool use_scars = (t.nodes[idx].depth % 2 == 1) && scar_total >= 3;
  std::size_t best_face = select(use_scars);
  bool ok = attempt(best_face);
  if (!ok && use_scars) {  // scar balance stalled: fall back to face balance
    use_scars = false;
    best_face = select(false);
    ok = attempt(best_face);
  }
  if (!ok) {  // degenerate geometry: no progress, stop here
    ++t.degenerate_leaves;
    ++t.leaf_count;
    return;
  }
  t.nodes[idx].balanced_scars = use_scars;
  i64 total = use_scars ? scar_total_v : face_total;
  i64 score = use_scars ? std::max(scar_sub[best_face], scar_total_v - scar_sub[best_face])
                        : std::max(face_sub[best_face], face_total - face_sub[best_face]);
  t.nodes[idx].balance = total == 0 ? 0 : double(score) / double(total);
  for (int side = 0; side < 2; ++side) {
    std::size_t child_id = t.nodes.size();
    t.nodes.push_back(std::move(children[side]));
    (side == 0 ? t.nodes[idx].child_inside : t.nodes[idx].child_outside) = child_id;
  }
}

}  // namespace detail

// Decomposes until every leaf has at most leaf_face_threshold faces. Scar
// counts stay bounded because odd depths balance scars instead of faces.
inline ClusterTree build_cluster_tree(const PlanarEmbedding& g, std::size_t root_vertex,
                                      std::size_t leaf_face_threshold = 12) {
  if (root_vertex >= g.vertex_count()) throw InvalidInput("cluster root out of range");
  if (leaf_face_threshold < 2) throw InvalidInput("leaf threshold below two faces");
  ClusterTree t;
  t.root_vertex = root_vertex;
  t.leaf_face_threshold = leaf_face_threshold;
  t.dist_from_root = shortest_path_tree(g, root_vertex).dist;

  Cluster root;
  root.graph = g;
  root.vertex_to_global.resize(g.vertex_count());
  std::iota(root.vertex_to_global.begin(), root.vertex_to_global.end(), std::size_t{0});
  root.edge_expansion.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    root.edge_expansion[e] = {PlanarEmbedding::dart_uv(e)};
  t.nodes.push_back(std::move(root));

  for (std::size_t idx = 0; idx < t.nodes.size(); ++idx) detail::split_cluster(t, idx);

  for (const Cluster& c : t.nodes) {
    t.max_depth = std::max(t.max_depth, c.depth);
    t.max_scars = std::max(t.max_scars, c.scars.size());
    t.max_paths = std::max(t.max_paths, 2 * c.scars.size());
    t.total_vertices += c.graph.vertex_count();
    t.total_edges += c.graph.edge_count();
  }
  double denom = double(g.vertex_count()) *
                 std::max(1.0, std::log2(double(std::max<std::size_t>(g.vertex_count(), 2))));
  t.size_constant = double(t.total_vertices + t.total_edges) / denom;
  return t;
}

}  // namespace planecut
