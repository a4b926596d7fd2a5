#pragma once
// Edge-subset subgraphs of an embedding, split into connected components.
// Deleting edges merges the faces around them: each new face carries the total
// weight of the original faces that collapsed into it, so every component sees
// the full weight W of the original graph and cycle side-weights are preserved.

#include <numeric>
#include <vector>

#include "planecut/embedding.hpp"

namespace planecut {

struct SubgraphComponent {
  PlanarEmbedding graph;
  std::vector<std::size_t> vertex_map;           // new vertex -> old vertex
  std::vector<std::size_t> edge_map;             // new edge -> old edge
  std::vector<std::size_t> old_vertex_to_new;    // NONE when absent
  std::vector<std::size_t> old_edge_to_new;      // NONE when absent
  std::vector<std::vector<std::size_t>> face_origins;  // new face -> old faces

  Dart to_old_dart(Dart d) const { return 2 * edge_map[d >> 1] + (d & 1); }
  Dart to_new_dart(Dart d_old) const {
    std::size_t e = old_edge_to_new[d_old >> 1];
    return e == NONE ? NONE : 2 * e + (d_old & 1);
  }
};

// Components of the subgraph formed by the kept edges. Vertices incident to no
// kept edge are dropped (they host no cycles). Each component is a valid
// embedding whose rotations are the restriction of the original rotations.
inline std::vector<SubgraphComponent> subgraph_components(const PlanarEmbedding& g,
                                                          const std::vector<char>& keep_edge) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  if (keep_edge.size() != m) throw InvalidInput("keep_edge mask size mismatch");

  detail::UnionFind comp(n);
  for (std::size_t e = 0; e < m; ++e)
    if (keep_edge[e]) comp.unite(g.edge(e).u, g.edge(e).v);

  // one entry per component root that owns at least one kept edge
  std::vector<std::size_t> root_slot(n, NONE);
  std::vector<std::size_t> roots;
  for (std::size_t e = 0; e < m; ++e)
    if (keep_edge[e]) {
      std::size_t r = comp.find(g.edge(e).u);
      if (root_slot[r] == NONE) {
        root_slot[r] = roots.size();
        roots.push_back(r);
      }
    }

  std::vector<SubgraphComponent> out(roots.size());
  if (out.empty()) return out;

  for (auto& sc : out) {
    sc.old_vertex_to_new.assign(n, NONE);
    sc.old_edge_to_new.assign(m, NONE);
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t slot = root_slot[comp.find(v)];
    if (slot == NONE) continue;
    bool incident = false;
    for (Dart d : g.rotation(v))
      if (keep_edge[PlanarEmbedding::edge_of(d)]) {
        incident = true;
        break;
      }
    if (!incident) continue;
    out[slot].old_vertex_to_new[v] = out[slot].vertex_map.size();
    out[slot].vertex_map.push_back(v);
  }
  for (std::size_t e = 0; e < m; ++e)
    if (keep_edge[e]) {
      std::size_t slot = root_slot[comp.find(g.edge(e).u)];
      out[slot].old_edge_to_new[e] = out[slot].edge_map.size();
      out[slot].edge_map.push_back(e);
    }

  for (auto& sc : out) {
    const std::size_t cn = sc.vertex_map.size();
    std::vector<EdgeRec> edges(sc.edge_map.size());
    for (std::size_t e2 = 0; e2 < sc.edge_map.size(); ++e2) {
      const EdgeRec& er = g.edge(sc.edge_map[e2]);
      edges[e2] = EdgeRec{sc.old_vertex_to_new[er.u], sc.old_vertex_to_new[er.v], er.cost,
                          er.artificial};
    }
    std::vector<std::vector<Dart>> rot(cn);
    for (std::size_t v2 = 0; v2 < cn; ++v2)
      for (Dart d : g.rotation(sc.vertex_map[v2])) {
        Dart nd = sc.to_new_dart(d);
        if (nd != NONE) rot[v2].push_back(nd);
      }
    std::vector<i64> vw(cn);
    for (std::size_t v2 = 0; v2 < cn; ++v2) vw[v2] = g.vertex_weight(sc.vertex_map[v2]);
    sc.graph = build_embedding_from_darts(cn, std::move(edges), rot, std::move(vw));

    // merge original faces across every edge missing from THIS component
    detail::UnionFind fu(g.face_count());
    for (std::size_t e = 0; e < m; ++e)
      if (sc.old_edge_to_new[e] == NONE)
        fu.unite(g.face_of(PlanarEmbedding::dart_uv(e)), g.face_of(PlanarEmbedding::dart_vu(e)));

    std::vector<std::size_t> class_to_new_face(g.face_count(), NONE);
    sc.face_origins.assign(sc.graph.face_count(), {});
    for (std::size_t f2 = 0; f2 < sc.graph.face_count(); ++f2) {
      for (Dart nd : sc.graph.face(f2)) {
        std::size_t cls = fu.find(g.face_of(sc.to_old_dart(nd)));
        if (class_to_new_face[cls] == NONE)
          class_to_new_face[cls] = f2;
        else
          require(class_to_new_face[cls] == f2, "face class split across subgraph faces");
      }
    }
    std::vector<i64> fw(sc.graph.face_count(), 0);
    for (std::size_t f = 0; f < g.face_count(); ++f) {
      std::size_t f2 = class_to_new_face[fu.find(f)];
      require(f2 != NONE, "original face lost by subgraph face merge");
      sc.face_origins[f2].push_back(f);
      fw[f2] = checked_add(fw[f2], g.face_weight(f));
    }
    sc.graph = sc.graph.with_face_weights(std::move(fw));
    require(sc.graph.total_face_weight() == g.total_face_weight(),
            "face weight not conserved by subgraph");
  }
  return out;
}

// vertex-induced convenience wrapper
inline std::vector<SubgraphComponent> induced_components(const PlanarEmbedding& g,
                                                         const std::vector<char>& keep_vertex) {
  if (keep_vertex.size() != g.vertex_count()) throw InvalidInput("keep_vertex mask size mismatch");
  std::vector<char> keep_edge(g.edge_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    keep_edge[e] = keep_vertex[g.edge(e).u] && keep_vertex[g.edge(e).v];
  return subgraph_components(g, keep_edge);
}

}  // namespace planecut
