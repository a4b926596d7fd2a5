#pragma once
// Closed walks in an embedding: fundamental cycles, flood-fill side weights,
// orientation tests, and decomposition of closed walks into simple cycles.
//
// A cycle is a dart sequence with head(darts[i]) == tail(darts[i+1]) and
// head(back) == tail(front). Flood fills operate on the face adjacency with
// the cycle's edges blocked; for a non-self-crossing closed walk the weight of
// the side not containing f_inf is the enclosed weight.

#include <vector>

#include "planecut/embedding.hpp"
#include "planecut/paths.hpp"

namespace planecut {

struct Cycle {
  std::vector<Dart> darts;

  std::size_t size() const { return darts.size(); }
  bool empty() const { return darts.empty(); }
};

inline void validate_cycle(const PlanarEmbedding& g, const Cycle& c) {
  if (c.darts.empty()) throw InvalidInput("empty cycle");
  for (std::size_t i = 0; i < c.darts.size(); ++i) {
    Dart d = c.darts[i];
    if (d >= g.dart_count()) throw InvalidInput("cycle dart out of range");
    Dart nx = c.darts[(i + 1) % c.darts.size()];
    if (g.head(d) != g.tail(nx)) throw InvalidInput("cycle darts are not consecutive");
  }
}

inline i64 cycle_cost(const PlanarEmbedding& g, const Cycle& c) {
  i64 s = 0;
  for (Dart d : c.darts) s = checked_add(s, g.cost(d));
  return s;
}

inline Cycle reversed(const Cycle& c) {
  Cycle r;
  r.darts.reserve(c.darts.size());
  for (auto it = c.darts.rbegin(); it != c.darts.rend(); ++it)
    r.darts.push_back(PlanarEmbedding::reverse(*it));
  return r;
}

// faces reachable from start without crossing a blocked edge
inline std::vector<char> flood_faces(const PlanarEmbedding& g, const std::vector<char>& blocked_edge,
                                     std::size_t start_face) {
  std::vector<char> seen(g.face_count(), 0);
  std::vector<std::size_t> st{start_face};
  seen[start_face] = 1;
  while (!st.empty()) {
    std::size_t f = st.back();
    st.pop_back();
    for (Dart d : g.face(f)) {
      if (blocked_edge[PlanarEmbedding::edge_of(d)]) continue;
      std::size_t f2 = g.face_of(PlanarEmbedding::reverse(d));
      if (!seen[f2]) {
        seen[f2] = 1;
        st.push_back(f2);
      }
    }
  }
  return seen;
}

// Rejects walks that cross themselves at a vertex: at every vertex the
// (incoming, outgoing) dart pairs must be non-interleaving in rotation order.
// Each dart may appear at most once. Doubled edges (d and reverse(d)) are
// allowed; that is the near-simple case.
inline void check_non_crossing(const PlanarEmbedding& g, const Cycle& c) {
  validate_cycle(g, c);
  std::vector<char> dart_used(g.dart_count(), 0);
  for (Dart d : c.darts) {
    if (dart_used[d]) throw SelfCrossingCycle("walk uses a dart twice");
    dart_used[d] = 1;
  }
  // corridors per vertex: (slot of reverse(incoming), slot of outgoing)
  struct Corridor {
    std::size_t a, b;
  };
  std::vector<std::vector<Corridor>> at(g.vertex_count());
  const std::size_t len = c.darts.size();
  for (std::size_t i = 0; i < len; ++i) {
    Dart in = c.darts[i];
    Dart out = c.darts[(i + 1) % len];
    std::size_t v = g.head(in);
    std::size_t sa = NONE, sb = NONE;
    const std::vector<Dart>& r = g.rotation(v);
    for (std::size_t p = 0; p < r.size(); ++p) {
      if (r[p] == PlanarEmbedding::reverse(in)) sa = p;
      if (r[p] == out) sb = p;
    }
    require(sa != NONE && sb != NONE, "corridor slots not found");
    at[v].push_back({sa, sb});
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& cs = at[v];
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        // cross iff exactly one endpoint of cs[j] lies strictly inside the
        // circular arc (cs[i].a, cs[i].b)
        auto inside = [&](std::size_t x) {
          std::size_t a = cs[i].a, b = cs[i].b;
          // a shared slot is a doubled edge: nested corridors, not a crossing
          if (a == x || b == x) return false;
          if (a < b) return a < x && x < b;
          return x > a || x < b;
        };
        if (inside(cs[j].a) != inside(cs[j].b))
          throw SelfCrossingCycle("walk crosses itself at vertex " + std::to_string(v));
      }
  }
}

inline std::vector<char> cycle_edge_mask(const PlanarEmbedding& g, const Cycle& c) {
  std::vector<char> blocked(g.edge_count(), 0);
  for (Dart d : c.darts) blocked[PlanarEmbedding::edge_of(d)] = 1;
  return blocked;
}

// total face weight strictly on the side of c not containing f_inf
inline i64 enclosed_weight(const PlanarEmbedding& g, const Cycle& c, std::size_t f_inf) {
  check_non_crossing(g, c);
  std::vector<char> outside = flood_faces(g, cycle_edge_mask(g, c), f_inf);
  i64 enc = 0;
  for (std::size_t f = 0; f < g.face_count(); ++f)
    if (!outside[f]) enc = checked_add(enc, g.face_weight(f));
  return enc;
}

// face mask of the enclosed side
inline std::vector<char> enclosed_faces(const PlanarEmbedding& g, const Cycle& c, std::size_t f_inf) {
  check_non_crossing(g, c);
  std::vector<char> outside = flood_faces(g, cycle_edge_mask(g, c), f_inf);
  for (auto& x : outside) x = !x;
  return outside;
}

// A simple cycle is counterclockwise (in the f_inf frame) when the faces to
// the LEFT of its darts are the enclosed side.
inline bool cycle_is_ccw(const PlanarEmbedding& g, const Cycle& c, std::size_t f_inf) {
  check_non_crossing(g, c);
  std::vector<char> left = flood_faces(g, cycle_edge_mask(g, c), g.face_of(c.darts.front()));
  return !left[f_inf];
}

// nontree dart d plus the tree path head(d) -> tail(d)
inline Cycle fundamental_cycle(const PlanarEmbedding& g, const ShortestPathTree& t, Dart d) {
  std::size_t e = PlanarEmbedding::edge_of(d);
  if (t.in_tree_edge[e]) throw DartInTree("fundamental_cycle of a tree dart");
  std::size_t x = g.head(d), y = g.tail(d);
  if (!t.reached(x) || !t.reached(y)) throw UnreachableVertex("fundamental_cycle outside tree");
  std::size_t l = tree_lca(t, x, y);
  Cycle c;
  c.darts.push_back(d);
  for (std::size_t v = x; v != l; v = t.parent[v])
    c.darts.push_back(PlanarEmbedding::reverse(t.parent_dart[v]));
  std::vector<Dart> down;
  for (std::size_t v = y; v != l; v = t.parent[v]) down.push_back(t.parent_dart[v]);
  for (auto it = down.rbegin(); it != down.rend(); ++it) c.darts.push_back(*it);
  validate_cycle(g, c);
  return c;
}

// Split a closed walk into vertex-simple cycles by stack popping: every
// returned cycle is simple, and their darts partition the walk's darts.
inline std::vector<Cycle> decompose_closed_walk(const PlanarEmbedding& g,
                                                const std::vector<Dart>& walk) {
  std::vector<Cycle> out;
  if (walk.empty()) return out;
  for (std::size_t i = 0; i < walk.size(); ++i)
    require(g.head(walk[i]) == g.tail(walk[(i + 1) % walk.size()]), "walk darts not consecutive");

  std::vector<std::size_t> pos(g.vertex_count(), NONE);
  std::vector<Dart> stack;
  pos[g.tail(walk.front())] = 0;
  for (Dart d : walk) {
    stack.push_back(d);
    std::size_t v = g.head(d);
    if (pos[v] != NONE) {
      Cycle c;
      c.darts.assign(stack.begin() + pos[v], stack.end());
      for (Dart dd : c.darts) {
        std::size_t t = g.tail(dd);
        if (t != v) pos[t] = NONE;
      }
      stack.resize(pos[v]);
      out.push_back(std::move(c));
    } else {
      pos[v] = stack.size();
    }
  }
  require(stack.empty(), "closed walk did not close");
  return out;
}

// Near-simple relative to an anchor vertex: darts used in both directions form
// a simple path with one endpoint at the anchor, the rest is a simple cycle.
inline bool is_near_simple(const PlanarEmbedding& g, const Cycle& c, std::size_t anchor) {
  std::vector<char> used(g.dart_count(), 0);
  for (Dart d : c.darts) {
    if (used[d]) return false;
    used[d] = 1;
  }
  std::vector<std::size_t> single_deg(g.vertex_count(), 0);
  std::vector<std::size_t> doubled_deg(g.vertex_count(), 0);
  std::size_t doubled_edges = 0, single_edges = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    bool a = used[PlanarEmbedding::dart_uv(e)], b = used[PlanarEmbedding::dart_vu(e)];
    if (a && b) {
      ++doubled_edges;
      ++doubled_deg[g.edge(e).u];
      ++doubled_deg[g.edge(e).v];
    } else if (a || b) {
      ++single_edges;
      ++single_deg[g.edge(e).u];
      ++single_deg[g.edge(e).v];
    }
  }
  // doubled part: simple path anchored at anchor (possibly empty)
  std::size_t odd = 0;
  bool anchor_is_endpoint = false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (doubled_deg[v] > 2) return false;
    if (doubled_deg[v] == 1) {
      ++odd;
      if (v == anchor) anchor_is_endpoint = true;
    }
  }
  if (doubled_edges > 0 && (odd != 2 || !anchor_is_endpoint)) return false;
  // single part: one simple cycle
  if (single_edges == 0) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (single_deg[v] != 0 && single_deg[v] != 2) return false;
  return true;
}

// Simple part of a near-simple cycle (the doubled darts cancel). Returns an
// empty cycle when the leftover darts do not chain up; callers treat that as
// "no extra candidate".
inline Cycle simple_part(const PlanarEmbedding& g, const Cycle& c) {
  std::vector<char> used(g.dart_count(), 0);
  for (Dart d : c.darts) used[d] = 1;
  std::vector<Dart> keep;
  for (Dart d : c.darts)
    if (!used[PlanarEmbedding::reverse(d)]) keep.push_back(d);
  Cycle out;
  if (keep.empty()) return out;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (g.head(keep[i]) != g.tail(keep[(i + 1) % keep.size()])) return out;
  out.darts = std::move(keep);
  return out;
}

}  // namespace planecut
