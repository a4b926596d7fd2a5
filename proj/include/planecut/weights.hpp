#pragma once
// Dart weights relative to a spanning tree and a reference face f_inf.
//
// Tree darts get weight 0. A non-tree dart d gets +/- the face weight enclosed
// by its fundamental cycle (the side away from f_inf): positive when the cycle
// traversed in d's direction keeps the enclosed side on its left (ccw), else
// negative. Consequence used everywhere: for any vertex-simple ccw cycle, the
// sum of its dart weights equals the total face weight it encloses, and any
// closed walk sums to an integer combination of such terms.
//
// Computed in O(n + m): the non-tree edges, viewed between their two incident
// faces, form a spanning tree of the faces; root it at f_inf and take subtree
// weight sums. The child-side face of a non-tree edge tells the sign.

#include <vector>

#include "planecut/cycles.hpp"
#include "planecut/embedding.hpp"
#include "planecut/paths.hpp"

namespace planecut {

struct DartWeights {
  std::vector<i64> weight;     // indexed by dart
  std::vector<char> tree_edge;  // indexed by edge
  std::size_t f_inf = NONE;

  i64 sum(const Cycle& c) const {
    i64 s = 0;
    for (Dart d : c.darts) s = checked_add(s, weight[d]);
    return s;
  }
};

// tree_edge must mark exactly the edges of a spanning tree of g.
inline DartWeights pp_dart_weights(const PlanarEmbedding& g, const std::vector<char>& tree_edge,
                                   std::size_t f_inf) {
  const std::size_t n = g.vertex_count(), m = g.edge_count(), F = g.face_count();
  if (tree_edge.size() != m) throw InvalidInput("tree_edge mask size mismatch");
  if (f_inf >= F) throw InvalidInput("f_inf out of range");
  {
    std::size_t cnt = 0;
    detail::UnionFind uf(n);
    for (std::size_t e = 0; e < m; ++e)
      if (tree_edge[e]) {
        ++cnt;
        require(uf.find(g.edge(e).u) != uf.find(g.edge(e).v), "tree mask contains a cycle");
        uf.unite(g.edge(e).u, g.edge(e).v);
      }
    require(cnt == n - 1, "tree mask is not spanning");
  }

  // faces linked across non-tree edges; BFS from f_inf orients it as a tree
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(F);  // (face, edge)
  for (std::size_t e = 0; e < m; ++e)
    if (!tree_edge[e]) {
      std::size_t fa = g.face_of(PlanarEmbedding::dart_uv(e));
      std::size_t fb = g.face_of(PlanarEmbedding::dart_vu(e));
      require(fa != fb, "non-tree edge with equal side faces");
      adj[fa].push_back({fb, e});
      adj[fb].push_back({fa, e});
    }
  std::vector<std::size_t> parent_face(F, NONE), via_edge(F, NONE), order;
  std::vector<char> seen(F, 0);
  order.reserve(F);
  seen[f_inf] = 1;
  order.push_back(f_inf);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [f2, e] : adj[order[i]])
      if (!seen[f2]) {
        seen[f2] = 1;
        parent_face[f2] = order[i];
        via_edge[f2] = e;
        order.push_back(f2);
      }
  require(order.size() == F, "face links do not span all faces");

  std::vector<i64> subtree(F, 0);
  for (std::size_t f = 0; f < F; ++f) subtree[f] = g.face_weight(f);
  for (std::size_t i = F; i-- > 1;)
    subtree[parent_face[order[i]]] =
        checked_add(subtree[parent_face[order[i]]], subtree[order[i]]);

  DartWeights out;
  out.weight.assign(2 * m, 0);
  out.tree_edge = tree_edge;
  out.f_inf = f_inf;
  for (std::size_t f = 0; f < F; ++f) {
    std::size_t e = via_edge[f];
    if (e == NONE) continue;  // f_inf
    // f is the child side: its subtree is what the fundamental cycle encloses
    Dart d_left_child = g.face_of(PlanarEmbedding::dart_uv(e)) == f
                            ? PlanarEmbedding::dart_uv(e)
                            : PlanarEmbedding::dart_vu(e);
    out.weight[d_left_child] = subtree[f];
    out.weight[PlanarEmbedding::reverse(d_left_child)] = -subtree[f];
  }
  return out;
}

inline DartWeights pp_dart_weights(const PlanarEmbedding& g, const ShortestPathTree& t,
                                   std::size_t f_inf) {
  return pp_dart_weights(g, t.in_tree_edge, f_inf);
}

}  // namespace planecut
