#pragma once
// Planar duality. Vertex i of the dual is face i of the primal; edge and dart
// ids are SHARED between the two embeddings: dual dart d runs from
// face_of(d) to face_of(reverse(d)) and crosses primal dart d. Faces of the
// dual correspond one-to-one to primal vertices; weights ride along both ways
// (primal face weights -> dual vertex weights, primal vertex weights -> dual
// face weights), so dualize is a weight-preserving involution.

#include <utility>
#include <vector>

#include "planecut/embedding.hpp"

namespace planecut {

struct DualEmbedding {
  PlanarEmbedding graph;
  // dual face index -> primal vertex index (dual vertex i is primal face i)
  std::vector<std::size_t> primal_vertex_of_face;
  // primal vertex index -> dual face index
  std::vector<std::size_t> face_of_primal_vertex;
};

inline DualEmbedding dualize(const PlanarEmbedding& g) {
  const std::size_t m = g.edge_count();
  const std::size_t nf = g.face_count();
  if (m == 0) throw InvalidInput("dualize needs at least one edge");

  std::vector<EdgeRec> dedges(m);
  for (std::size_t e = 0; e < m; ++e) {
    const EdgeRec& er = g.edge(e);
    dedges[e] = EdgeRec{g.face_of(PlanarEmbedding::dart_uv(e)),
                        g.face_of(PlanarEmbedding::dart_vu(e)), er.cost, er.artificial};
  }
  // rotation of dual vertex f = boundary darts of primal face f in trace order
  std::vector<std::vector<Dart>> drot(nf);
  for (std::size_t f = 0; f < nf; ++f) drot[f] = g.face(f);

  DualEmbedding d;
  d.graph = build_embedding_from_darts(nf, std::move(dedges), drot,
                                       std::vector<i64>(g.face_weights()));
  require(d.graph.face_count() == g.vertex_count(), "dual face count != primal vertex count");

  // each dual face's darts all share one primal tail vertex
  d.primal_vertex_of_face.assign(d.graph.face_count(), NONE);
  d.face_of_primal_vertex.assign(g.vertex_count(), NONE);
  std::vector<i64> dfw(d.graph.face_count(), 0);
  for (std::size_t f = 0; f < d.graph.face_count(); ++f) {
    require(!d.graph.face(f).empty(), "empty dual face");
    std::size_t pv = g.tail(d.graph.face(f).front());
    for (Dart dd : d.graph.face(f)) require(g.tail(dd) == pv, "dual face mixes primal vertices");
    d.primal_vertex_of_face[f] = pv;
    require(d.face_of_primal_vertex[pv] == NONE, "primal vertex hit twice in dual faces");
    d.face_of_primal_vertex[pv] = f;
    dfw[f] = g.vertex_weight(pv);
  }
  d.graph = d.graph.with_face_weights(std::move(dfw));
  // designate the face of primal vertex 0 as the dual's outer face: stable
  // under primal relabeling of everything except vertex 0, and deterministic
  d.graph = d.graph.with_outer_face(d.face_of_primal_vertex[0]);
  return d;
}

}  // namespace planecut
