#pragma once
// Exact minimum quotient / sparsity cuts on weighted planar graphs.
//
// A cut with both sides connected corresponds to a vertex-simple cycle in the
// dual; splitting a disconnected side never hurts either objective, so the
// optimum is always attained by such a cycle. Cycles are searched in a layered
// graph over the dual: node (v, y) means "walk ending at v whose dart-weight
// sum is y" with dart weights from pp_dart_weights, so a closed walk at (u, y)
// encloses total face weight y (mod winding). Scanning y in [1, W-1] with
// denominators min(y, W-y) resp. y*(W-y) is sound for arbitrary closed walks:
// dist-to-multiple-of-W is subadditive, t -> t*(W-t) is concave increasing on
// [0, W/2], and a walk decomposes into simple cycles whose sums telescope, so
// every table entry is a weighted average bounded below by the true optimum.
// The reported walk is decomposed and re-evaluated cycle by cycle; the best
// simple cycle must reproduce the table value exactly.
//
// Two drivers: Layered scans every dual vertex as a source (restricted to
// cycles whose minimum vertex is the source); Separator picks a small balanced
// vertex separator of the dual, scans only those sources, and recurses on the
// face-merged components, which preserves every cycle cost and enclosed weight.

#include <algorithm>
#include <vector>

#include "planecut/cycles.hpp"
#include "planecut/dual.hpp"
#include "planecut/embedding.hpp"
#include "planecut/paths.hpp"
#include "planecut/subgraph.hpp"
#include "planecut/weights.hpp"

namespace planecut {

enum class Objective { Quotient, Sparsity };

enum class ExactMethod { Layered, Separator };

struct CutResult {
  Objective objective = Objective::Quotient;
  Fraction value;
  i64 cost = 0;
  i64 weight_inside = 0;
  i64 weight_outside = 0;
  Cycle dual_cycle;                   // vertex-simple cycle in dualize(g)
  std::vector<char> inside_vertices;  // primal vertices enclosed by the cycle
};

struct SeparatorReport {
  std::size_t scans = 0;                  // separator-source layered scans
  std::size_t base_cases = 0;             // components solved by full scan
  std::size_t degenerate_fallbacks = 0;   // no balanced separator candidate
  std::size_t max_depth = 0;
  std::size_t peak_separator = 0;
};

namespace detail {

inline i64 objective_den(Objective obj, i64 side, i64 w_total) {
  i64 other = w_total - side;
  return obj == Objective::Quotient ? std::min(side, other) : checked_mul(side, other);
}

// Dijkstra over the implicit layered graph: node (v, y), y in [-W, W],
// arc (tail(d), y) -> (head(d), y + weight[d]) of cost(d). Bucket-ring queue
// when the maximum dart cost is small, binary heap otherwise. Buffers are
// stamped so repeated runs avoid O(nodes) reinitialization.
struct LayeredRunner {
  const PlanarEmbedding& g;
  const DartWeights& dw;
  i64 W;
  std::size_t L;  // layers = 2W + 1
  std::vector<i64> dist;
  std::vector<Dart> parent;  // dart used to reach node (recovery runs only)
  std::vector<u64> stamp;
  u64 cur = 0;
  i64 max_cost = 0;

  LayeredRunner(const PlanarEmbedding& graph, const DartWeights& weights, i64 total_w)
      : g(graph), dw(weights), W(total_w), L(static_cast<std::size_t>(2 * total_w + 1)) {
    std::size_t nodes = g.vertex_count() * L;
    dist.assign(nodes, 0);
    stamp.assign(nodes, 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      max_cost = std::max(max_cost, g.edge(e).cost);
  }

  std::size_t node(std::size_t v, i64 y) const {
    return v * L + static_cast<std::size_t>(y + W);
  }

  bool fresh(std::size_t id) const { return stamp[id] == cur; }

  // runs Dijkstra from (src, 0); min_vertex restricts the explored vertices
  template <typename Visit>
  void run(std::size_t src, std::size_t min_vertex, bool keep_parents, Visit&& visit) {
    ++cur;
    if (keep_parents) parent.assign(dist.size(), NONE);
    std::size_t s = node(src, 0);
    dist[s] = 0;
    stamp[s] = cur;

    auto relax_out = [&](std::size_t v, i64 y, i64 base) {
      for (Dart d : g.rotation(v)) {
        if (g.artificial_dart(d)) continue;
        std::size_t h = g.head(d);
        if (h < min_vertex) continue;
        i64 y2 = y + dw.weight[d];
        if (y2 < -W || y2 > W) continue;
        i64 nd = checked_add(base, g.cost(d));
        std::size_t id = node(h, y2);
        if (fresh(id) && dist[id] <= nd) continue;
        dist[id] = nd;
        stamp[id] = cur;
        if (keep_parents) parent[id] = d;
        push(id, nd);
      }
    };

    if (use_buckets()) {
      std::size_t ring = static_cast<std::size_t>(max_cost) + 1;
      buckets.assign(ring, {});
      pending = 0;
      push(s, 0);
      i64 t = 0;
      while (pending > 0) {
        auto& b = buckets[static_cast<std::size_t>(t) % ring];
        if (b.empty()) {
          ++t;
          continue;
        }
        std::size_t id = b.back();
        b.pop_back();
        --pending;
        if (!fresh(id) || dist[id] != t) continue;
        std::size_t v = id / L;
        i64 y = static_cast<i64>(id % L) - W;
        if (!(v == src && y == 0)) visit(v, y, t);
        relax_out(v, y, t);
      }
    } else {
      heap.clear();
      push(s, 0);
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), heap_cmp);
        auto [nd, id] = heap.back();
        heap.pop_back();
        if (!fresh(id) || dist[id] != nd) continue;
        std::size_t v = id / L;
        i64 y = static_cast<i64>(id % L) - W;
        if (!(v == src && y == 0)) visit(v, y, nd);
        relax_out(v, y, nd);
      }
    }
  }

  // closed walk src -> src at layer y, recovered from the last parent run
  Cycle recover(std::size_t src, i64 y) const {
    std::vector<Dart> rev;
    std::size_t v = src;
    i64 layer = y;
    while (!(v == src && layer == 0 && !rev.empty())) {
      Dart d = parent[node(v, layer)];
      require(d != NONE, "layered walk recovery broke");
      rev.push_back(d);
      layer -= dw.weight[d];
      v = g.tail(d);
      require(rev.size() <= dist.size(), "layered walk recovery cycled");
    }
    std::reverse(rev.begin(), rev.end());
    return Cycle{std::move(rev)};
  }

 private:
  bool use_buckets() const { return max_cost <= (1 << 12); }
  std::vector<std::vector<std::size_t>> buckets;
  std::size_t pending = 0;
  std::vector<std::pair<i64, std::size_t>> heap;
  static bool heap_cmp(const std::pair<i64, std::size_t>& a,
                       const std::pair<i64, std::size_t>& b) {
    return a.first > b.first;
  }

  void push(std::size_t id, i64 d) {
    if (use_buckets()) {
      buckets[static_cast<std::size_t>(d) % buckets.size()].push_back(id);
      ++pending;
    } else {
      heap.push_back({d, id});
      std::push_heap(heap.begin(), heap.end(), heap_cmp);
    }
  }
};

struct BestCycle {
  bool found = false;
  Fraction value;
  Cycle cycle;  // vertex-simple, in the dart ids of the graph it was found in
};

// Scan closed walks through the given sources and return the best simple
// cycle for the objective. When restrict_min is set each source only explores
// vertices >= itself; that mode means "sources are all vertices", making the
// scan complete, and then the best decomposed cycle must match the best table
// entry exactly. With a partial source set the decomposition may beat the
// table (a sub-cycle through none of the sources); returning it is still exact.
inline BestCycle layered_best(const PlanarEmbedding& g, Objective obj, i64 W,
                              const std::vector<std::size_t>& sources, bool restrict_min,
                              std::size_t* scan_count = nullptr) {
  require(W >= 2, "layered scan needs total weight >= 2");
  ShortestPathTree tree = shortest_path_tree(g, 0);
  DartWeights dw = pp_dart_weights(g, tree, g.outer_face());
  LayeredRunner runner(g, dw, W);

  bool found = false;
  Fraction best;
  std::size_t best_src = NONE;
  i64 best_layer = 0;
  for (std::size_t src : sources) {
    if (scan_count) ++*scan_count;
    runner.run(src, restrict_min ? src : 0, false, [&](std::size_t v, i64 y, i64 cost) {
      if (v != src || y <= 0 || y >= W) return;
      Fraction f{cost, objective_den(obj, y, W)};
      if (!found || f < best) {
        found = true;
        best = f;
        best_src = src;
        best_layer = y;
      }
    });
  }
  if (!found) return {};

  // re-run the winning source with parents, then decompose the walk: the best
  // constituent simple cycle must reproduce the table value exactly
  runner.run(best_src, restrict_min ? best_src : 0, true,
             [](std::size_t, i64, i64) {});
  Cycle walk = runner.recover(best_src, best_layer);
  BestCycle out;
  for (Cycle& c : decompose_closed_walk(g, walk.darts)) {
    i64 sum = dw.sum(c);
    i64 enc = sum < 0 ? -sum : sum;
    if (enc == 0 || enc >= W) continue;
    Fraction f{cycle_cost(g, c), objective_den(obj, enc, W)};
    if (!out.found || f < out.value) {
      out.found = true;
      out.value = f;
      out.cycle = std::move(c);
    }
  }
  require(out.found, "walk decomposition yielded no usable cycle");
  if (restrict_min)
    require(out.value == best, "walk decomposition lost the optimum");
  else
    require(!(best < out.value), "decomposed cycle worse than its walk bound");
  return out;
}

inline std::vector<std::size_t> all_vertices(const PlanarEmbedding& g) {
  std::vector<std::size_t> v(g.vertex_count());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Balanced vertex separator of g: candidates are breadth-first levels, single
// vertices, and fundamental cycles of the breadth-first tree. Preference:
// every component of g - S has at most 2/3 of the vertices; among those the
// smallest S, then the smallest worst component. Returns empty when no
// candidate is balanced (caller falls back to a full scan).
inline std::vector<std::size_t> balanced_separator(const PlanarEmbedding& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> depth(n, NONE), order;
  std::vector<Dart> par(n, NONE);
  order.reserve(n);
  depth[0] = 0;
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Dart d : g.rotation(order[i]))
      if (std::size_t h = g.head(d); depth[h] == NONE) {
        depth[h] = depth[order[i]] + 1;
        par[h] = d;
        order.push_back(h);
      }
  require(order.size() == n, "separator breadth-first walk incomplete");

  std::vector<std::vector<std::size_t>> candidates;
  std::size_t max_depth = 0;
  for (std::size_t v = 0; v < n; ++v) max_depth = std::max(max_depth, depth[v]);
  for (std::size_t lvl = 0; lvl <= max_depth; ++lvl) {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v)
      if (depth[v] == lvl) s.push_back(v);
    candidates.push_back(std::move(s));
  }
  for (std::size_t v = 0; v < n; ++v) candidates.push_back({v});
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::size_t u = g.edge(e).u, v = g.edge(e).v;
    if (par[u] != NONE && PlanarEmbedding::edge_of(par[u]) == e) continue;
    if (par[v] != NONE && PlanarEmbedding::edge_of(par[v]) == e) continue;
    // vertices of the fundamental cycle: both stalks up to the junction
    std::vector<std::size_t> s;
    std::size_t a = u, b = v;
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      s.push_back(a);
      a = g.tail(par[a]);
    }
    s.push_back(a);
    std::sort(s.begin(), s.end());
    candidates.push_back(std::move(s));
  }

  std::vector<std::size_t> best;
  std::size_t best_worst = 0;
  for (const auto& s : candidates) {
    if (s.size() >= n) continue;
    std::vector<char> in_sep(n, 0);
    for (std::size_t v : s) in_sep[v] = 1;
    UnionFind uf(n);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (!in_sep[g.edge(e).u] && !in_sep[g.edge(e).v]) uf.unite(g.edge(e).u, g.edge(e).v);
    std::vector<std::size_t> size(n, 0);
    std::size_t worst = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (!in_sep[v]) worst = std::max(worst, ++size[uf.find(v)]);
    if (3 * worst > 2 * n) continue;
    if (best.empty() || s.size() < best.size() ||
        (s.size() == best.size() && worst < best_worst)) {
      best = s;
      best_worst = worst;
    }
  }
  return best;
}

inline BestCycle separator_best(const PlanarEmbedding& g, Objective obj, i64 W,
                                SeparatorReport& report, std::size_t depth) {
  report.max_depth = std::max(report.max_depth, depth);
  if (g.vertex_count() <= 32) {
    ++report.base_cases;
    return layered_best(g, obj, W, all_vertices(g), true, &report.scans);
  }
  std::vector<std::size_t> sep = balanced_separator(g);
  if (sep.empty()) {
    ++report.degenerate_fallbacks;
    return layered_best(g, obj, W, all_vertices(g), true, &report.scans);
  }
  report.peak_separator = std::max(report.peak_separator, sep.size());

  BestCycle best = layered_best(g, obj, W, sep, false, &report.scans);

  std::vector<char> keep(g.vertex_count(), 1);
  for (std::size_t v : sep) keep[v] = 0;
  for (const SubgraphComponent& sc : induced_components(g, keep)) {
    require(sc.graph.total_face_weight() == W, "component lost face weight");
    BestCycle sub = separator_best(sc.graph, obj, W, report, depth + 1);
    if (!sub.found) continue;
    for (Dart& d : sub.cycle.darts) d = sc.to_old_dart(d);
    if (!best.found || sub.value < best.value) best = std::move(sub);
  }
  return best;
}

}  // namespace detail

// Full validation pass from a dual cycle back to a primal cut: flood the
// enclosed side, re-derive cost from the primal crossing edges, and recompute
// the objective value from scratch.
inline CutResult make_cut_result(const PlanarEmbedding& g, const DualEmbedding& d,
                                 const Cycle& cycle, Objective obj) {
  validate_cycle(d.graph, cycle);
  check_non_crossing(d.graph, cycle);
  std::size_t f_inf = d.graph.outer_face();
  std::vector<char> inside_faces = enclosed_faces(d.graph, cycle, f_inf);

  CutResult out;
  out.objective = obj;
  out.dual_cycle = cycle;
  out.inside_vertices.assign(g.vertex_count(), 0);
  for (std::size_t f = 0; f < d.graph.face_count(); ++f)
    if (inside_faces[f]) {
      std::size_t v = d.primal_vertex_of_face[f];
      out.inside_vertices[v] = 1;
      out.weight_inside = checked_add(out.weight_inside, g.vertex_weight(v));
    }
  out.weight_outside = g.total_vertex_weight() - out.weight_inside;
  require(out.weight_inside > 0 && out.weight_outside > 0, "cut side without weight");

  out.cost = cycle_cost(d.graph, cycle);
  i64 crossing = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (out.inside_vertices[g.edge(e).u] != out.inside_vertices[g.edge(e).v])
      crossing = checked_add(crossing, g.edge(e).cost);
  require(crossing == out.cost, "dual cycle cost differs from primal crossing cost");

  out.value = Fraction{out.cost, detail::objective_den(obj, out.weight_inside,
                                                       g.total_vertex_weight())};
  return out;
}

inline CutResult exact_min_cut(const PlanarEmbedding& g, Objective obj,
                               ExactMethod method = ExactMethod::Layered,
                               SeparatorReport* report = nullptr) {
  std::size_t positive = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.vertex_weight(v) > 0) ++positive;
  if (positive < 2) throw NoCut("fewer than two positive-weight vertices");

  DualEmbedding d = dualize(g);
  const i64 W = g.total_vertex_weight();
  require(d.graph.total_face_weight() == W, "dual face weight mismatch");

  detail::BestCycle best;
  SeparatorReport local;
  SeparatorReport& rep = report ? *report : local;
  if (method == ExactMethod::Layered) {
    best = detail::layered_best(d.graph, obj, W, detail::all_vertices(d.graph), true);
  } else {
    best = detail::separator_best(d.graph, obj, W, rep, 0);
  }
  if (!best.found) throw NoCut("no cycle separates positive weight");

  CutResult out = make_cut_result(g, d, best.cycle, obj);
  require(out.value == best.value, "reported value differs from scan value");
  return out;
}

}  // namespace planecut
