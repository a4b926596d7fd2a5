#pragma once
// Combinatorial planar embeddings: rotation systems over darts, face tracing,
// and validation. Embeddings are immutable once built; all views copy.
//
// Dart encoding: edge e owns darts 2e (u -> v) and 2e+1 (v -> u); reverse(d) = d^1.
// Rotations list OUTGOING darts per vertex in cyclic order. Face successor is
// rot_next(reverse(d)); the traced face lies to the LEFT of each of its darts.
// With counterclockwise rotations this orients inner faces counterclockwise.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "planecut/base.hpp"

namespace planecut {

using Dart = std::size_t;

struct EdgeRec {
  std::size_t u = 0;
  std::size_t v = 0;
  i64 cost = 1;
  bool artificial = false;  // scaffolding edge, excluded from cycle candidates
};

class PlanarEmbedding {
 public:
  PlanarEmbedding() = default;

  std::size_t vertex_count() const { return vw_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t dart_count() const { return 2 * edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  const EdgeRec& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<EdgeRec>& edges() const { return edges_; }

  static Dart reverse(Dart d) { return d ^ 1; }
  static std::size_t edge_of(Dart d) { return d >> 1; }
  static Dart dart_uv(std::size_t e) { return 2 * e; }
  static Dart dart_vu(std::size_t e) { return 2 * e + 1; }

  std::size_t tail(Dart d) const {
    const EdgeRec& e = edges_[d >> 1];
    return (d & 1) ? e.v : e.u;
  }
  std::size_t head(Dart d) const {
    const EdgeRec& e = edges_[d >> 1];
    return (d & 1) ? e.u : e.v;
  }
  i64 cost(Dart d) const { return edges_[d >> 1].cost; }
  bool artificial_dart(Dart d) const { return edges_[d >> 1].artificial; }

  std::size_t degree(std::size_t v) const { return rot_[v].size(); }
  const std::vector<Dart>& rotation(std::size_t v) const { return rot_[v]; }

  // next / previous outgoing dart around tail(d)
  Dart rot_next(Dart d) const {
    const std::vector<Dart>& r = rot_[tail(d)];
    std::size_t p = rot_pos_[d] + 1;
    return r[p == r.size() ? 0 : p];
  }
  Dart rot_prev(Dart d) const {
    const std::vector<Dart>& r = rot_[tail(d)];
    std::size_t p = rot_pos_[d];
    return r[p == 0 ? r.size() - 1 : p - 1];
  }

  Dart face_next(Dart d) const { return rot_next(reverse(d)); }

  std::size_t face_of(Dart d) const { return face_of_[d]; }
  const std::vector<Dart>& face(std::size_t f) const { return faces_[f]; }
  const std::vector<std::vector<Dart>>& faces() const { return faces_; }
  std::size_t outer_face() const { return outer_; }

  i64 vertex_weight(std::size_t v) const { return vw_[v]; }
  i64 face_weight(std::size_t f) const { return fw_[f]; }
  const std::vector<i64>& vertex_weights() const { return vw_; }
  const std::vector<i64>& face_weights() const { return fw_; }
  i64 total_vertex_weight() const { return total_vw_; }
  i64 total_face_weight() const { return total_fw_; }
  // total cost over non-artificial edges
  i64 total_cost() const { return total_cost_; }

  PlanarEmbedding with_face_weights(std::vector<i64> fw) const {
    if (fw.size() != faces_.size()) throw InvalidInput("face weight vector size mismatch");
    PlanarEmbedding g = *this;
    g.total_fw_ = 0;
    for (i64 w : fw) {
      if (w < 0) throw InvalidInput("negative face weight");
      g.total_fw_ = checked_add(g.total_fw_, w);
    }
    g.fw_ = std::move(fw);
    return g;
  }

  PlanarEmbedding with_outer_face(std::size_t f) const {
    if (f >= faces_.size()) throw InvalidInput("outer face index out of range");
    PlanarEmbedding g = *this;
    g.outer_ = f;
    return g;
  }

  PlanarEmbedding with_vertex_weights(std::vector<i64> vw) const {
    if (vw.size() != vw_.size()) throw InvalidInput("vertex weight vector size mismatch");
    PlanarEmbedding g = *this;
    g.total_vw_ = 0;
    for (i64 w : vw) {
      if (w < 0) throw InvalidInput("negative vertex weight");
      g.total_vw_ = checked_add(g.total_vw_, w);
    }
    g.vw_ = std::move(vw);
    return g;
  }

 private:
  friend PlanarEmbedding build_embedding_from_darts(std::size_t, std::vector<EdgeRec>,
                                                    const std::vector<std::vector<Dart>>&,
                                                    std::vector<i64>, std::vector<i64>,
                                                    std::size_t);

  std::vector<EdgeRec> edges_;
  std::vector<i64> vw_;
  std::vector<i64> fw_;
  std::vector<std::vector<Dart>> rot_;
  std::vector<std::size_t> rot_pos_;  // dart -> index within rotation(tail(dart))
  std::vector<std::size_t> face_of_;
  std::vector<std::vector<Dart>> faces_;
  std::size_t outer_ = 0;
  i64 total_vw_ = 0;
  i64 total_fw_ = 0;
  i64 total_cost_ = 0;
};

// Core builder: rotations given as outgoing-dart lists per vertex.
// Validates permutation structure, connectivity, positive costs, and Euler's
// formula (V - E + F == 2). outer == NONE selects the largest face (ties: the
// smallest face index, faces numbered in trace order from dart 0).
inline PlanarEmbedding build_embedding_from_darts(std::size_t n, std::vector<EdgeRec> edges,
                                                  const std::vector<std::vector<Dart>>& rot,
                                                  std::vector<i64> vertex_weights,
                                                  std::vector<i64> face_weights = {},
                                                  std::size_t outer = NONE) {
  if (n == 0) throw InvalidInput("embedding needs at least one vertex");
  if (rot.size() != n) throw InvalidInput("rotation list count != vertex count");
  if (vertex_weights.size() != n) throw InvalidInput("vertex weight count != vertex count");

  PlanarEmbedding g;
  const std::size_t m = edges.size();
  for (std::size_t e = 0; e < m; ++e) {
    if (edges[e].u >= n || edges[e].v >= n) throw InvalidInput("edge endpoint out of range");
    if (edges[e].cost <= 0) throw NonpositiveCost("edge " + std::to_string(e) + " has cost <= 0");
  }
  g.edges_ = std::move(edges);
  g.vw_ = std::move(vertex_weights);
  g.total_vw_ = 0;
  for (i64 w : g.vw_) {
    if (w < 0) throw InvalidInput("negative vertex weight");
    g.total_vw_ = checked_add(g.total_vw_, w);
  }
  g.total_cost_ = 0;
  for (const EdgeRec& e : g.edges_)
    if (!e.artificial) g.total_cost_ = checked_add(g.total_cost_, e.cost);

  // rotation lists must form a permutation of all darts, each at its tail
  g.rot_ = rot;
  g.rot_pos_.assign(2 * m, NONE);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < rot[v].size(); ++i) {
      Dart d = rot[v][i];
      if (d >= 2 * m) throw InvalidInput("rotation refers to nonexistent dart");
      if (g.tail(d) != v) throw InvalidInput("rotation lists dart at wrong vertex");
      if (g.rot_pos_[d] != NONE) throw InvalidInput("dart repeated in rotations");
      g.rot_pos_[d] = i;
    }
  }
  for (std::size_t d = 0; d < 2 * m; ++d)
    if (g.rot_pos_[d] == NONE) throw InvalidInput("dart missing from rotations");

  // connectivity over undirected edges
  {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t cnt = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (Dart d : g.rot_[v]) {
        std::size_t w = g.head(d);
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          stack.push_back(w);
        }
      }
    }
    if (cnt != n) throw DisconnectedGraph("embedding is not connected");
  }

  // face tracing
  g.face_of_.assign(2 * m, NONE);
  for (Dart d0 = 0; d0 < 2 * m; ++d0) {
    if (g.face_of_[d0] != NONE) continue;
    std::size_t f = g.faces_.size();
    g.faces_.emplace_back();
    Dart d = d0;
    do {
      require(g.face_of_[d] == NONE, "face tracing revisited a dart");
      g.face_of_[d] = f;
      g.faces_[f].push_back(d);
      d = g.face_next(d);
    } while (d != d0);
  }
  if (m == 0) g.faces_.emplace_back();  // single vertex: one face, empty boundary

  const std::size_t f_cnt = g.faces_.size();
  // Euler check; rotation systems failing it embed only in higher genus
  if (static_cast<long long>(n) - static_cast<long long>(m) + static_cast<long long>(f_cnt) != 2)
    throw NonPlanarEmbedding("V - E + F = " +
                             std::to_string(static_cast<long long>(n) - static_cast<long long>(m) +
                                            static_cast<long long>(f_cnt)) +
                             ", expected 2");

  if (face_weights.empty()) face_weights.assign(f_cnt, 0);
  if (face_weights.size() != f_cnt) throw InvalidInput("face weight count != face count");
  g.total_fw_ = 0;
  for (i64 w : face_weights) {
    if (w < 0) throw InvalidInput("negative face weight");
    g.total_fw_ = checked_add(g.total_fw_, w);
  }
  g.fw_ = std::move(face_weights);

  if (outer == NONE) {
    std::size_t best = 0;
    for (std::size_t f = 1; f < f_cnt; ++f)
      if (g.faces_[f].size() > g.faces_[best].size()) best = f;
    g.outer_ = best;
  } else {
    if (outer >= f_cnt) throw InvalidInput("outer face index out of range");
    g.outer_ = outer;
  }
  return g;
}

// Convenience builder: rotations given as cyclic lists of incident EDGE ids.
// A self-loop's id appears twice in its vertex's list; the first occurrence is
// taken as the u->v dart, the second as v->u. Matches the PLG `rot` record.
inline PlanarEmbedding build_embedding(std::size_t n, std::vector<EdgeRec> edges,
                                       const std::vector<std::vector<std::size_t>>& rot_edges,
                                       std::vector<i64> vertex_weights,
                                       std::vector<i64> face_weights = {},
                                       std::size_t outer = NONE) {
  if (rot_edges.size() != n) throw InvalidInput("rotation list count != vertex count");
  const std::size_t m = edges.size();
  std::vector<std::vector<Dart>> rot(n);
  std::vector<char> loop_seen(m, 0);
  for (std::size_t v = 0; v < n; ++v) {
    rot[v].reserve(rot_edges[v].size());
    for (std::size_t e : rot_edges[v]) {
      if (e >= m) throw InvalidInput("rotation refers to nonexistent edge");
      const EdgeRec& er = edges[e];
      Dart d;
      if (er.u == er.v) {
        if (er.u != v) throw InvalidInput("rotation lists edge at non-endpoint");
        d = loop_seen[e] ? PlanarEmbedding::dart_vu(e) : PlanarEmbedding::dart_uv(e);
        loop_seen[e] = 1;
      } else if (er.u == v) {
        d = PlanarEmbedding::dart_uv(e);
      } else if (er.v == v) {
        d = PlanarEmbedding::dart_vu(e);
      } else {
        throw InvalidInput("rotation lists edge at non-endpoint");
      }
      rot[v].push_back(d);
    }
  }
  return build_embedding_from_darts(n, std::move(edges), rot, std::move(vertex_weights),
                                    std::move(face_weights), outer);
}

}  // namespace planecut
