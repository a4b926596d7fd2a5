#pragma once
// Brute-force reference implementations, deliberately independent of the
// optimized solvers: exhaustive bipartition scans, all-pairs distances,
// agglomerative-linkage simulation, and simple-cycle enumeration. Every
// routine enforces an explicit size budget and throws BudgetExceeded beyond
// it; these exist to check answers, not to scale.

#include <algorithm>
#include <set>
#include <vector>

#include "planecut/cycles.hpp"
#include "planecut/embedding.hpp"
#include "planecut/paths.hpp"

namespace planecut {

struct BruteCutResult {
  Fraction best_quotient;   // min over bipartitions of cost / min(w_S, W - w_S)
  u64 quotient_mask = 0;    // bit v set => vertex v on the S side (vertex 0 never set)
  Fraction best_sparsity;   // min over bipartitions of cost / (w_S * (W - w_S))
  u64 sparsity_mask = 0;
  i64 total_weight = 0;
};

namespace detail {

inline i64 mask_cut_cost(const PlanarEmbedding& g, u64 mask) {
  i64 c = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const EdgeRec& er = g.edge(e);
    if (er.artificial) continue;
    if (((mask >> er.u) & 1) != ((mask >> er.v) & 1)) c = checked_add(c, er.cost);
  }
  return c;
}

inline i64 mask_weight(const PlanarEmbedding& g, u64 mask) {
  i64 w = 0;
  for (u64 rest = mask; rest;) {
    std::size_t v = static_cast<std::size_t>(__builtin_ctzll(rest));
    rest &= rest - 1;
    w = checked_add(w, g.vertex_weight(v));
  }
  return w;
}

}  // namespace detail

// Exhaustive minimum quotient / sparsity over all 2^(n-1) bipartitions
// (vertex 0 pinned to the complement side; both objectives are symmetric).
inline BruteCutResult brute_cuts(const PlanarEmbedding& g, std::size_t max_vertices = 20) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices) throw BudgetExceeded("brute_cuts vertex budget");
  if (n < 2) throw NoCut("graph has a single vertex");
  BruteCutResult out;
  out.total_weight = g.total_vertex_weight();
  bool found = false;
  for (u64 mask = 1; mask < (u64(1) << (n - 1)); ++mask) {
    u64 side = mask << 1;  // vertex 0 stays out of S
    i64 w_s = detail::mask_weight(g, side);
    i64 w_rest = out.total_weight - w_s;
    if (w_s == 0 || w_rest == 0) continue;
    i64 cost = detail::mask_cut_cost(g, side);
    Fraction q{cost, std::min(w_s, w_rest)};
    Fraction s{cost, checked_mul(w_s, w_rest)};
    if (!found || q < out.best_quotient) {
      out.best_quotient = q;
      out.quotient_mask = side;
    }
    if (!found || s < out.best_sparsity) {
      out.best_sparsity = s;
      out.sparsity_mask = side;
    }
    found = true;
  }
  if (!found) throw NoCut("no bipartition with positive weight on both sides");
  return out;
}

struct BisectionResult {
  i64 cost = 0;
  u64 mask = 0;  // bit v set => vertex v on the S side
};

// Exhaustive minimum-cost bipartition with w(S) == W/2.
inline BisectionResult min_bisection_small(const PlanarEmbedding& g,
                                           std::size_t max_vertices = 24) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices) throw BudgetExceeded("min_bisection vertex budget");
  const i64 W = g.total_vertex_weight();
  if (W % 2 != 0) throw OddTotalWeight("total vertex weight is odd");
  bool found = false;
  BisectionResult out;
  for (u64 mask = 1; mask < (u64(1) << (n - 1)); ++mask) {
    u64 side = mask << 1;
    if (detail::mask_weight(g, side) != W / 2) continue;
    i64 cost = detail::mask_cut_cost(g, side);
    if (!found || cost < out.cost) {
      out.cost = cost;
      out.mask = side;
    }
    found = true;
  }
  if (!found) throw NoBalancedCut("no bipartition with half the total weight");
  return out;
}

// All-pairs shortest path distances over non-artificial edges.
inline std::vector<std::vector<i64>> apsp(const PlanarEmbedding& g,
                                          std::size_t max_vertices = 4096) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices) throw BudgetExceeded("apsp vertex budget");
  std::vector<std::vector<i64>> d(n);
  for (std::size_t s = 0; s < n; ++s) {
    ShortestPathTree t = shortest_path_tree(g, s);
    d[s] = std::move(t.dist);
    for (std::size_t v = 0; v < n; ++v)
      require(d[s][v] != INF64, "apsp on disconnected span");
  }
  return d;
}

enum class SetDistance { Max, Sum };

inline i64 set_distance(const std::vector<std::vector<i64>>& d, const std::vector<std::size_t>& a,
                        const std::vector<std::size_t>& b, SetDistance mode) {
  require(!a.empty() && !b.empty(), "set distance over empty set");
  i64 acc = mode == SetDistance::Max ? 0 : 0;
  for (std::size_t x : a)
    for (std::size_t y : b) {
      i64 v = d[x][y];
      acc = mode == SetDistance::Max ? std::max(acc, v) : checked_add(acc, v);
    }
  return acc;
}

enum class Linkage { Single, Complete, Average };

struct MergeStep {
  std::size_t a = NONE, b = NONE;  // cluster ids merged (a < b)
  std::size_t joined = NONE;       // id of the new cluster
  Fraction value;                  // linkage distance at the merge
};

struct MergeTrace {
  std::vector<MergeStep> steps;                       // n - 1 merges
  std::vector<std::vector<std::size_t>> members;      // by cluster id (leaves first)
};

// Agglomerative clustering over the graph metric. Cluster ids: 0..n-1 are the
// single-vertex leaves, merge i creates id n+i. Ties broken by smallest (a, b).
inline MergeTrace linkage_simulate(const PlanarEmbedding& g, Linkage mode,
                                   std::size_t max_vertices = 512) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices) throw BudgetExceeded("linkage vertex budget");
  require(n >= 2, "linkage needs two points");
  std::vector<std::vector<i64>> d = apsp(g, max_vertices);

  MergeTrace out;
  out.members.reserve(2 * n - 1);
  for (std::size_t v = 0; v < n; ++v) out.members.push_back({v});
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);

  auto linkage_value = [&](std::size_t ca, std::size_t cb) {
    const auto& A = out.members[ca];
    const auto& B = out.members[cb];
    i64 best = 0;
    bool first = true;
    i64 sum = 0;
    for (std::size_t x : A)
      for (std::size_t y : B) {
        i64 v = d[x][y];
        if (mode == Linkage::Average)
          sum = checked_add(sum, v);
        else if (first || (mode == Linkage::Single ? v < best : v > best))
          best = v;
        first = false;
      }
    if (mode == Linkage::Average)
      return Fraction{sum, checked_mul(static_cast<i64>(A.size()), static_cast<i64>(B.size()))};
    return Fraction{best, 1};
  };

  while (active.size() > 1) {
    MergeStep step;
    bool first = true;
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        Fraction v = linkage_value(active[i], active[j]);
        if (first || v < step.value) {
          step.a = active[i];
          step.b = active[j];
          step.value = v;
          first = false;
        }
      }
    step.joined = out.members.size();
    std::vector<std::size_t> merged = out.members[step.a];
    merged.insert(merged.end(), out.members[step.b].begin(), out.members[step.b].end());
    std::sort(merged.begin(), merged.end());
    out.members.push_back(std::move(merged));
    active.erase(std::remove(active.begin(), active.end(), step.a), active.end());
    active.erase(std::remove(active.begin(), active.end(), step.b), active.end());
    active.push_back(step.joined);
    std::sort(active.begin(), active.end());
    out.steps.push_back(step);
  }
  return out;
}

// Minimum spanning tree edge values of the complete graph over a metric;
// equals the sorted single-linkage merge values.
inline std::vector<i64> mst_of_metric(const std::vector<std::vector<i64>>& d) {
  const std::size_t n = d.size();
  require(n >= 2, "mst needs two points");
  std::vector<char> in(n, 0);
  std::vector<i64> key(n, INF64);
  std::vector<i64> picked;
  key[0] = 0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t best = NONE;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && (best == NONE || key[v] < key[best])) best = v;
    in[best] = 1;
    if (it > 0) picked.push_back(key[best]);
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v]) key[v] = std::min(key[v], d[best][v]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

// All vertex-simple cycles (every vertex visited once; includes single-dart
// loops and two-edge cycles between parallel edges), each reported in exactly
// one orientation. Enumeration is per lowest vertex with interior vertices
// strictly larger; budget guards via the cycle-space rank bound
// #cycles <= 2^(m - n + 1).
inline std::vector<Cycle> enumerate_simple_cycles(const PlanarEmbedding& g,
                                                  std::size_t max_vertices = 18,
                                                  std::size_t max_rank = 20) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  if (n > max_vertices) throw BudgetExceeded("cycle enumeration vertex budget");
  if (m + 1 > n + max_rank) throw BudgetExceeded("cycle enumeration rank budget");

  std::vector<Cycle> out;
  std::vector<char> on_path(n, 0);
  std::vector<char> edge_used(m, 0);
  std::vector<Dart> path;

  for (std::size_t s = 0; s < n; ++s) {
    // every cycle whose minimum vertex is s, found once per orientation;
    // keep the orientation with the smaller first dart.
    auto dfs = [&](auto&& self, std::size_t v) -> void {
      for (Dart dnext : g.rotation(v)) {
        if (g.artificial_dart(dnext)) continue;
        std::size_t e = PlanarEmbedding::edge_of(dnext);
        if (edge_used[e]) continue;
        std::size_t h = g.head(dnext);
        if (h == s) {
          path.push_back(dnext);
          if (path.front() < PlanarEmbedding::reverse(path.back())) {
            out.push_back(Cycle{path});
            validate_cycle(g, out.back());
          }
          path.pop_back();
          continue;
        }
        if (h < s || on_path[h]) continue;
        on_path[h] = 1;
        edge_used[e] = 1;
        path.push_back(dnext);
        self(self, h);
        path.pop_back();
        edge_used[e] = 0;
        on_path[h] = 0;
      }
    };
    on_path[s] = 1;
    dfs(dfs, s);
    on_path[s] = 0;
  }
  return out;
}

}  // namespace planecut
