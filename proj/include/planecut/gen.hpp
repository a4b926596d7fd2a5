#pragma once
// Instance generators: fixed families (grids, paths, dumbbells) and seeded
// random planar graphs built by stacking vertices into triangle faces and then
// deleting a connectivity-preserving random edge subset. All randomness flows
// through a caller-supplied mt19937_64 so instances are reproducible from the
// recorded seed.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "planecut/embedding.hpp"

namespace planecut {

// Rotations from a straight-line drawing: darts sorted counterclockwise by
// angle. Callers must supply a crossing-free drawing with distinct angles at
// every vertex; that is an input contract, not something checked here beyond
// the embedding validation itself (Euler catches crossings).
inline PlanarEmbedding build_embedding_from_points(const std::vector<std::pair<double, double>>& pts,
                                                   std::vector<EdgeRec> edges,
                                                   std::vector<i64> vertex_weights,
                                                   std::size_t outer = NONE) {
  const std::size_t n = pts.size();
  const std::size_t m = edges.size();
  std::vector<std::vector<Dart>> rot(n);
  for (std::size_t e = 0; e < m; ++e) {
    if (edges[e].u == edges[e].v) throw InvalidInput("point layout cannot place self-loops");
    rot[edges[e].u].push_back(PlanarEmbedding::dart_uv(e));
    rot[edges[e].v].push_back(PlanarEmbedding::dart_vu(e));
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::pair<double, Dart>> ang;
    ang.reserve(rot[v].size());
    for (Dart d : rot[v]) {
      std::size_t h = (d & 1) ? edges[d >> 1].u : edges[d >> 1].v;
      ang.emplace_back(std::atan2(pts[h].second - pts[v].second, pts[h].first - pts[v].first), d);
    }
    std::sort(ang.begin(), ang.end());
    for (std::size_t i = 0; i < ang.size(); ++i) rot[v][i] = ang[i].second;
  }
  return build_embedding_from_darts(n, std::move(edges), rot, std::move(vertex_weights), {}, outer);
}

// rows x cols grid, vertices numbered row-major
inline PlanarEmbedding grid_graph(std::size_t rows, std::size_t cols, i64 cost = 1, i64 weight = 1) {
  if (rows < 1 || cols < 1) throw InvalidInput("grid needs positive dimensions");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) pts.emplace_back(double(j), double(i));
  std::vector<EdgeRec> edges;
  auto id = [cols](std::size_t i, std::size_t j) { return i * cols + j; };
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (j + 1 < cols) edges.push_back({id(i, j), id(i, j + 1), cost, false});
      if (i + 1 < rows) edges.push_back({id(i, j), id(i + 1, j), cost, false});
    }
  return build_embedding_from_points(pts, std::move(edges),
                                     std::vector<i64>(rows * cols, weight));
}

inline PlanarEmbedding path_graph(std::size_t n, i64 cost = 1, i64 weight = 1) {
  return grid_graph(1, n, cost, weight);
}

// two k x k grids joined by one light edge; the classic separator stress shape
inline PlanarEmbedding dumbbell_graph(std::size_t k, i64 blob_cost = 5, i64 bridge_cost = 1) {
  if (k < 1) throw InvalidInput("dumbbell needs k >= 1");
  std::vector<std::pair<double, double>> pts;
  std::vector<EdgeRec> edges;
  auto id = [&](std::size_t blob, std::size_t i, std::size_t j) {
    return blob * k * k + i * k + j;
  };
  for (std::size_t blob = 0; blob < 2; ++blob) {
    double x0 = blob == 0 ? 0.0 : double(k) + 3.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) pts.emplace_back(x0 + double(j), double(i));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (j + 1 < k) edges.push_back({id(blob, i, j), id(blob, i, j + 1), blob_cost, false});
        if (i + 1 < k) edges.push_back({id(blob, i, j), id(blob, i + 1, j), blob_cost, false});
      }
  }
  edges.push_back({id(0, k / 2, k - 1), id(1, k / 2, 0), bridge_cost, false});
  return build_embedding_from_points(pts, std::move(edges), std::vector<i64>(2 * k * k, 1));
}

struct RandomPlanarParams {
  std::size_t n_vertices = 8;     // >= 3
  double delete_fraction = 0.3;   // share of edges to try deleting
  i64 max_cost = 20;              // costs uniform in [1, max_cost]
  i64 max_weight = 5;             // weights uniform in [0, max_weight]
};

// Stacked triangulation: start from a triangle, repeatedly insert a vertex
// into a uniformly random face and join it to the three corners. Rotations are
// maintained combinatorially; every intermediate graph is a plane
// triangulation. Then delete a random subset of edges, keeping connectivity.
inline PlanarEmbedding random_planar(const RandomPlanarParams& p, std::mt19937_64& rng) {
  if (p.n_vertices < 3) throw InvalidInput("random_planar needs n >= 3");
  const std::size_t n = p.n_vertices;

  struct DartRef {
    std::size_t e;
    bool rev;
  };
  // local dart encoding mirrors PlanarEmbedding: dart = 2e + rev
  std::vector<std::array<std::size_t, 2>> ev;  // edge -> endpoints
  std::vector<std::vector<std::size_t>> rot(n);
  auto tail = [&](std::size_t d) { return ev[d >> 1][d & 1]; };
  auto head = [&](std::size_t d) { return ev[d >> 1][1 - (d & 1)]; };

  auto add_edge = [&](std::size_t u, std::size_t v) {
    ev.push_back({u, v});
    return ev.size() - 1;
  };
  // initial CCW triangle 0-1-2: faces (as dart triples, face on the left)
  std::size_t e01 = add_edge(0, 1), e12 = add_edge(1, 2), e20 = add_edge(2, 0);
  rot[0] = {2 * e01, 2 * e20 + 1};
  rot[1] = {2 * e12, 2 * e01 + 1};
  rot[2] = {2 * e20, 2 * e12 + 1};
  // inner face (0->1,1->2,2->0) and outer face (0->2,2->1,1->0)
  std::vector<std::array<std::size_t, 3>> faces;
  faces.push_back({2 * e01, 2 * e12, 2 * e20});
  faces.push_back({2 * e20 + 1, 2 * e12 + 1, 2 * e01 + 1});

  auto insert_after = [&](std::size_t v, std::size_t after_dart, std::size_t new_dart) {
    auto& r = rot[v];
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] == after_dart) {
        r.insert(r.begin() + i + 1, new_dart);
        return;
      }
    require(false, "rotation dart not found during stacking");
  };

  for (std::size_t x = 3; x < n; ++x) {
    std::size_t fi = rng() % faces.size();
    auto [d0, d1, d2] = faces[fi];
    std::size_t a = tail(d0), b = tail(d1), c = tail(d2);
    require(head(d0) == b && head(d1) == c && head(d2) == a, "face triple inconsistent");
    std::size_t exa = add_edge(x, a), exb = add_edge(x, b), exc = add_edge(x, c);
    // orbit constraints: rot_next(x->b) = x->a, rot_next(x->a) = x->c
    rot[x] = {2 * exa, 2 * exc, 2 * exb};
    // at each corner the new dart points into the old face: insert x-darts
    // right after the corner's incoming-reversed dart
    insert_after(a, PlanarEmbedding::reverse(d2) /* a->c */, 2 * exa + 1);
    insert_after(b, PlanarEmbedding::reverse(d0) /* b->a */, 2 * exb + 1);
    insert_after(c, PlanarEmbedding::reverse(d1) /* c->b */, 2 * exc + 1);
    faces[fi] = {d0, 2 * exb + 1, 2 * exa};        // a->b, b->x, x->a
    faces.push_back({d1, 2 * exc + 1, 2 * exb});   // b->c, c->x, x->b
    faces.push_back({d2, 2 * exa + 1, 2 * exc});   // c->a, a->x, x->c
  }

  // random deletions that keep the graph connected
  const std::size_t m0 = ev.size();
  std::vector<std::size_t> order(m0);
  for (std::size_t i = 0; i < m0; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> alive(m0, 1);
  std::size_t to_delete = static_cast<std::size_t>(p.delete_fraction * double(m0));
  auto connected_without = [&](std::size_t skip) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t e = 0; e < m0; ++e)
      if (alive[e] && e != skip) {
        adj[ev[e][0]].push_back(ev[e][1]);
        adj[ev[e][1]].push_back(ev[e][0]);
      }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> st{0};
    seen[0] = 1;
    std::size_t cnt = 1;
    while (!st.empty()) {
      std::size_t v = st.back();
      st.pop_back();
      for (std::size_t w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          st.push_back(w);
        }
    }
    return cnt == n;
  };
  std::size_t deleted = 0;
  for (std::size_t e : order) {
    if (deleted >= to_delete) break;
    if (connected_without(e)) {
      alive[e] = 0;
      ++deleted;
    }
  }

  // re-index surviving edges, restrict rotations
  std::vector<std::size_t> new_id(m0, NONE);
  std::vector<EdgeRec> edges;
  std::uniform_int_distribution<i64> cost_dist(1, p.max_cost);
  for (std::size_t e = 0; e < m0; ++e)
    if (alive[e]) {
      new_id[e] = edges.size();
      edges.push_back({ev[e][0], ev[e][1], cost_dist(rng), false});
    }
  std::vector<std::vector<Dart>> rot2(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t d : rot[v])
      if (alive[d >> 1]) rot2[v].push_back(2 * new_id[d >> 1] + (d & 1));

  std::uniform_int_distribution<i64> weight_dist(0, p.max_weight);
  std::vector<i64> vw(n);
  for (std::size_t v = 0; v < n; ++v) vw[v] = weight_dist(rng);
  // cut objectives need weight on at least two vertices
  std::size_t positive = 0;
  for (i64 w : vw)
    if (w > 0) ++positive;
  for (std::size_t v = 0; v < n && positive < 2; ++v)
    if (vw[v] == 0) {
      vw[v] = 1;
      ++positive;
    }

  return build_embedding_from_darts(n, std::move(edges), rot2, std::move(vw));
}

}  // namespace planecut
