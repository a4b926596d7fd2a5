#pragma once
// Single-source shortest paths over darts. Dijkstra with an automatic choice
// between a binary heap and a Dial bucket queue (small distance bound), plus
// a Bellman-Ford reference used by the oracle tests. Distances are exact
// 64-bit; unreachable vertices carry INF64 and a NONE parent.

#include <cassert>
#include <queue>
#include <vector>

#include "planecut/embedding.hpp"

namespace planecut {

struct ShortestPathTree {
  std::size_t root = NONE;
  std::vector<i64> dist;              // INF64 when unreachable
  std::vector<std::size_t> parent;    // vertex, NONE at root / unreachable
  std::vector<Dart> parent_dart;      // dart parent(v) -> v, NONE at root / unreachable
  std::vector<std::size_t> depth;     // edge count from root, 0 at root
  std::vector<char> in_tree_edge;     // edge id -> used by the tree

  bool reached(std::size_t v) const { return dist[v] != INF64; }
};

// filter(dart) -> usable; by default artificial edges are skipped so trees and
// distances never depend on scaffolding
template <typename Filter>
ShortestPathTree dijkstra(const PlanarEmbedding& g, std::size_t root, Filter&& filter) {
  const std::size_t n = g.vertex_count();
  ShortestPathTree t;
  t.root = root;
  t.dist.assign(n, INF64);
  t.parent.assign(n, NONE);
  t.parent_dart.assign(n, NONE);
  t.depth.assign(n, 0);
  t.in_tree_edge.assign(g.edge_count(), 0);
  t.dist[root] = 0;

  // Dial buckets pay off when the largest finite distance is small; bound by
  // total usable cost
  i64 bound = 0;
  bool small = true;
  for (std::size_t e = 0; e < g.edge_count() && small; ++e) {
    bound = checked_add(bound, g.edge(e).cost);
    if (bound > (1 << 22)) small = false;
  }

  if (small) {
    std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(bound) + 1);
    buckets[0].push_back(root);
    std::vector<char> done(n, 0);
    for (i64 dv = 0; dv <= bound; ++dv) {
      for (std::size_t qi = 0; qi < buckets[dv].size(); ++qi) {
        std::size_t v = buckets[dv][qi];
        if (done[v] || t.dist[v] != dv) continue;
        done[v] = 1;
        for (Dart d : g.rotation(v)) {
          if (!filter(d)) continue;
          std::size_t w = g.head(d);
          i64 nd = dv + g.cost(d);
          if (nd < t.dist[w]) {
            t.dist[w] = nd;
            t.parent[w] = v;
            t.parent_dart[w] = d;
            buckets[nd].push_back(w);
          }
        }
      }
    }
  } else {
    using Item = std::pair<i64, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0, root);
    while (!pq.empty()) {
      auto [dv, v] = pq.top();
      pq.pop();
      if (dv != t.dist[v]) continue;
      for (Dart d : g.rotation(v)) {
        if (!filter(d)) continue;
        std::size_t w = g.head(d);
        i64 nd = checked_add(dv, g.cost(d));
        if (nd < t.dist[w]) {
          t.dist[w] = nd;
          t.parent[w] = v;
          t.parent_dart[w] = d;
          pq.emplace(nd, w);
        }
      }
    }
  }

  for (std::size_t v = 0; v < n; ++v)
    if (t.parent_dart[v] != NONE) t.in_tree_edge[PlanarEmbedding::edge_of(t.parent_dart[v])] = 1;
  // depths by repeated parent walk with memo (graphs here are small to mid)
  for (std::size_t v = 0; v < n; ++v) {
    if (!t.reached(v) || t.depth[v] != 0 || v == root) continue;
    std::vector<std::size_t> chain;
    std::size_t u = v;
    while (u != root && t.depth[u] == 0) {
      chain.push_back(u);
      u = t.parent[u];
    }
    std::size_t base = t.depth[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.depth[*it] = ++base;
  }
  return t;
}

inline ShortestPathTree shortest_path_tree(const PlanarEmbedding& g, std::size_t root) {
  if (root >= g.vertex_count()) throw InvalidInput("shortest_path_tree: root out of range");
  return dijkstra(g, root, [&](Dart d) { return !g.artificial_dart(d); });
}

// Bellman-Ford reference implementation (oracle cross-check)
inline ShortestPathTree bellman_ford_spt(const PlanarEmbedding& g, std::size_t root) {
  const std::size_t n = g.vertex_count();
  ShortestPathTree t;
  t.root = root;
  t.dist.assign(n, INF64);
  t.parent.assign(n, NONE);
  t.parent_dart.assign(n, NONE);
  t.depth.assign(n, 0);
  t.in_tree_edge.assign(g.edge_count(), 0);
  t.dist[root] = 0;
  for (std::size_t round = 0; round + 1 < n || round == 0; ++round) {
    bool changed = false;
    for (Dart d = 0; d < g.dart_count(); ++d) {
      if (g.artificial_dart(d)) continue;
      std::size_t u = g.tail(d), v = g.head(d);
      if (t.dist[u] == INF64) continue;
      i64 nd = checked_add(t.dist[u], g.cost(d));
      if (nd < t.dist[v]) {
        t.dist[v] = nd;
        t.parent[v] = u;
        t.parent_dart[v] = d;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (t.parent_dart[v] != NONE) t.in_tree_edge[PlanarEmbedding::edge_of(t.parent_dart[v])] = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (!t.reached(v) || v == root || t.depth[v] != 0) continue;
    std::vector<std::size_t> chain;
    std::size_t u = v;
    while (u != root && t.depth[u] == 0) {
      chain.push_back(u);
      u = t.parent[u];
    }
    std::size_t base = t.depth[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.depth[*it] = ++base;
  }
  return t;
}

// deepest common ancestor of u and v in the tree (parent walk, exact)
inline std::size_t tree_lca(const ShortestPathTree& t, std::size_t u, std::size_t v) {
  require(t.reached(u) && t.reached(v), "lca of unreachable vertex");
  while (u != v) {
    if (t.depth[u] >= t.depth[v])
      u = t.parent[u];
    else
      v = t.parent[v];
  }
  return u;
}

}  // namespace planecut
