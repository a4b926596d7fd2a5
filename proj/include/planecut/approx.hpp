#pragma once
// Approximate minimum-quotient cuts. The cut is searched as a cycle in the
// dual: an outer bracket narrows a guess lambda, a geometric grid of cost
// windows tau covers every possible cycle cost, and each window triggers ball
// searches around net points spread along the boundary paths of the cluster
// decomposition. A ball hangs dart weights off its shortest-path tree, takes
// every heavy fundamental cycle as a candidate, and chases a cycle of negative
// reduced cost cost(d) - lambda * w(d), rerouting its tail through the tree
// while it encloses too much weight. Any candidate within target * lambda of
// the guess ends the probe; the returned cut is the best candidate ever seen,
// revalidated from scratch against the primal graph.
//
// Two sweep styles: Strict windows each ball to one distance band inside the
// parent cluster of the path that emitted the net point; Dominating (the
// default) searches the full ball in the whole graph, which contains every
// windowed region, and memoizes outcomes per (source, ball size) since the
// ball is determined by how many vertices the radius captures.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "planecut/base.hpp"
#include "planecut/cluster.hpp"
#include "planecut/cycles.hpp"
#include "planecut/dual.hpp"
#include "planecut/embedding.hpp"
#include "planecut/exact.hpp"
#include "planecut/oracle.hpp"
#include "planecut/paths.hpp"
#include "planecut/subgraph.hpp"
#include "planecut/weights.hpp"

namespace planecut {

// ---------------------------------------------------------------------------
// parameters

struct ApproxParams {
  std::size_t k = 268;                // resolution: nets, bands and the tau grid use 1/k
  Fraction alpha{7655644, 10000000};  // enclosed-weight ceiling as a share of W
  Fraction target{329, 100};          // accepted candidates stay within target * lambda
  Fraction search_ratio{1003, 1000};  // final ratio of the outer lambda bracket

  Fraction eps() const { return Fraction(1, static_cast<i128>(k)); }
  Fraction beta() const { return alpha / Fraction(5, 1); }

  // A candidate accepted by the ball search is bounded by one of three cases:
  //   (1 + eps(1+eps)) / (2 beta),   alpha / (1-alpha),   (1+eps)^2 * 2 / (alpha-beta)
  // times lambda. beta = alpha/5 makes the first and third base values equal
  // exactly; alpha is chosen so the second agrees within 1e-6; and k must be
  // fine enough that the worst case stays under target.
  void validate() const {
    if (k < 2) throw InvalidInput("approx params: resolution k below 2");
    Fraction one{1, 1}, two{2, 1};
    if (!(Fraction(1, 2) < alpha && alpha < one))
      throw InvalidInput("approx params: alpha outside (1/2, 1)");
    if (!(one < search_ratio)) throw InvalidInput("approx params: search ratio not above 1");
    Fraction b = beta();
    Fraction base1 = one / (two * b);
    Fraction base2 = alpha / (one - alpha);
    Fraction base3 = two / (alpha - b);
    require(base1 == base3, "balance identity 1/(2b) == 2/(a-b) broken");
    if (!((base1 - base2).abs() <= Fraction(1, 1000000)))
      throw InvalidInput("approx params: alpha too far from the balance point");
    Fraction e = eps();
    Fraction c1 = (one + e * (one + e)) * base1;
    Fraction c3 = (one + e) * (one + e) * base3;
    Fraction worst = std::max({c1, base2, c3});
    if (!(worst <= target)) throw InvalidInput("approx params: resolution too coarse for target");
  }
};

// ---------------------------------------------------------------------------
// distance bands

// Distances carved into half-open bands of width (1 + 2/k) * tau, the family
// shifted by offset * tau / k. Membership is exact over integers: distance d
// lies in band j of offset i  iff  (i + j(k+2)) * tau <= d*k < (i + (j+1)(k+2)) * tau.
struct AnnuliDecomposition {
  i64 tau = 1;
  std::size_t k = 1;
  std::size_t offset = 0;

  long long band_of(i64 dist) const {
    i128 num = i128(dist) * i128(k) - i128(offset) * i128(tau);
    i128 den = i128(k + 2) * i128(tau);
    i128 q = num / den;
    if (num % den != 0 && num < 0) --q;
    return static_cast<long long>(q);
  }
  bool contains(i64 dist, long long band) const { return band_of(dist) == band; }
};

// ---------------------------------------------------------------------------
// outer-search pivots

namespace detail {

// strictly inside (a/b, c/d) with 0 <= a/b < c/d, smallest denominator first
inline Fraction simplest_rec(i128 a, i128 b, i128 c, i128 d) {
  i128 q = a / b;
  if ((q + 1) * d < c) return Fraction(q + 1, 1);
  if (a % b == 0) {
    // the interval sits just above the integer q: q + 1/t with minimal t
    i128 t = d / (c - q * d) + 1;
    return Fraction(q * t + 1, t);
  }
  Fraction inner = simplest_rec(d, c - q * d, b, a - q * b);
  return Fraction(q * inner.num + inner.den, inner.num);
}

}  // namespace detail

// The fraction with the smallest denominator strictly between lo and hi.
// Small pivots keep the reduced costs q*cost - p*w far from overflow.
inline Fraction simplest_between(const Fraction& lo, const Fraction& hi) {
  if (!(Fraction(0, 1) <= lo && lo < hi))
    throw InvalidInput("simplest_between needs 0 <= lo < hi");
  return detail::simplest_rec(lo.num, lo.den, hi.num, hi.den);
}

// ---------------------------------------------------------------------------
// weight transfer graph

// Dart weights over a rooted shortest-path tree with the heavy darts set
// aside: tree darts carry zero, a non-tree dart carries +/- the face weight
// its fundamental cycle encloses, and darts at or above beta * W are excluded
// from the cycle search (their fundamental cycles are evaluated directly).
struct WeightTransferGraph {
  DartWeights weights;
  std::size_t f_inf = NONE;
  i64 total_weight = 0;
  std::vector<char> usable;  // darts admitted to the negative-cycle search
  std::vector<Dart> heavy;   // positive-side darts with weight >= beta * W
};

inline WeightTransferGraph build_weight_transfer(const PlanarEmbedding& g,
                                                 const ShortestPathTree& t,
                                                 std::size_t t_star_root,
                                                 const ApproxParams& par) {
  const std::size_t m = g.edge_count(), F = g.face_count();
  if (t_star_root >= F) throw InvalidInput("weight transfer: anchor face out of range");

  // the non-tree edges link the faces into a tree; anchor it and pick the
  // deepest face whose subtree still holds more than half the weight
  std::vector<std::vector<std::size_t>> adj(F);
  for (std::size_t e = 0; e < m; ++e)
    if (!t.in_tree_edge[e]) {
      std::size_t fa = g.face_of(PlanarEmbedding::dart_uv(e));
      std::size_t fb = g.face_of(PlanarEmbedding::dart_vu(e));
      require(fa != fb, "non-tree edge with equal side faces");
      adj[fa].push_back(fb);
      adj[fb].push_back(fa);
    }
  std::vector<std::size_t> parent_face(F, NONE), order;
  std::vector<char> seen(F, 0);
  order.reserve(F);
  seen[t_star_root] = 1;
  order.push_back(t_star_root);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t f2 : adj[order[i]])
      if (!seen[f2]) {
        seen[f2] = 1;
        parent_face[f2] = order[i];
        order.push_back(f2);
      }
  require(order.size() == F, "face links do not span all faces");

  const i64 W = g.total_face_weight();
  require(W >= 1, "weight transfer needs positive total weight");
  std::vector<i64> subtree(F, 0);
  for (std::size_t f = 0; f < F; ++f) subtree[f] = g.face_weight(f);
  for (std::size_t i = F; i-- > 1;)
    subtree[parent_face[order[i]]] = checked_add(subtree[parent_face[order[i]]], subtree[order[i]]);

  std::size_t f_inf = t_star_root;
  for (;;) {
    std::size_t next = NONE;
    for (std::size_t f2 : adj[f_inf])
      if (parent_face[f2] == f_inf && i128(2) * subtree[f2] > W && (next == NONE || f2 < next))
        next = f2;
    if (next == NONE) break;
    f_inf = next;
  }

  WeightTransferGraph wt;
  wt.f_inf = f_inf;
  wt.total_weight = W;
  wt.weights = pp_dart_weights(g, t, f_inf);
  wt.usable.assign(2 * m, 0);
  for (Dart d = 0; d < 2 * m; ++d) {
    if (g.artificial_dart(d)) continue;
    i64 w = wt.weights.weight[d];
    // rooting at f_inf leaves every proper subtree at or below half of W
    require(i128(2) * (w < 0 ? -w : w) <= W, "dart weight exceeds half the total");
    if (i128(w) * 5 * par.alpha.den >= i128(par.alpha.num) * W) {
      wt.heavy.push_back(d);  // its reverse stays usable
      continue;
    }
    wt.usable[d] = 1;
  }
  return wt;
}

// ---------------------------------------------------------------------------
// negative-cycle search

// A vertex-simple cycle over the usable darts with cost(C) < lambda * w(C),
// or nothing when every cycle resolves nonnegative. Label-correcting passes
// from an implicit everywhere-zero source; a pass without change certifies
// absence, persistence beyond n passes yields a parent-graph cycle.
inline std::optional<Cycle> negative_cycle(const PlanarEmbedding& g,
                                           const WeightTransferGraph& wt,
                                           const Fraction& lambda) {
  if (!(Fraction(0, 1) < lambda)) throw InvalidInput("negative_cycle: lambda must be positive");
  const std::size_t n = g.vertex_count();
  struct Arc {
    std::size_t tail, head;
    i64 rc_hint;  // sign of the reduced cost, for the quick exit
    i128 rc;
    Dart d;
  };
  std::vector<Arc> arcs;
  arcs.reserve(g.dart_count());
  bool any_negative = false;
  for (Dart d = 0; d < g.dart_count(); ++d) {
    if (!wt.usable[d]) continue;
    i128 rc = i128(lambda.den) * g.cost(d) - i128(lambda.num) * wt.weights.weight[d];
    if (rc < 0) any_negative = true;
    arcs.push_back({g.tail(d), g.head(d), rc < 0 ? i64(-1) : i64(1), rc, d});
  }
  if (!any_negative) return std::nullopt;  // no negative dart, no negative cycle

  std::vector<i128> dist(n, 0);
  std::vector<Dart> par(n, NONE);
  std::vector<std::size_t> mark(n, 0);
  std::size_t token = 0;
  const std::size_t cap = 8 * n + 64;
  for (std::size_t pass = 0; pass <= cap; ++pass) {
    bool changed = false;
    std::size_t hot = NONE;
    for (const Arc& a : arcs) {
      i128 nd = dist[a.tail] + a.rc;
      if (nd < dist[a.head]) {
        dist[a.head] = nd;
        par[a.head] = a.d;
        changed = true;
        hot = a.head;
      }
    }
    if (!changed) return std::nullopt;
    if (pass + 1 < n) continue;
    // walk parents from the last improved vertex; a revisit closes the cycle
    ++token;
    std::size_t u = hot;
    while (u != NONE && mark[u] != token) {
      mark[u] = token;
      Dart pd = par[u];
      u = pd == NONE ? NONE : g.tail(pd);
    }
    if (u == NONE) continue;  // chain left the improving region; keep relaxing
    std::vector<Dart> back;
    std::size_t v = u;
    do {
      back.push_back(par[v]);
      v = g.tail(par[v]);
    } while (v != u);
    Cycle c;
    c.darts.assign(back.rbegin(), back.rend());
    validate_cycle(g, c);
    i128 total = 0;
    for (Dart d : c.darts) {
      require(wt.usable[d], "extracted cycle uses an excluded dart");
      total += i128(lambda.den) * g.cost(d) - i128(lambda.num) * wt.weights.weight[d];
    }
    require(total < 0, "extracted cycle is not negative");
    return c;
  }
  require(false, "negative cycle detected but never extracted");
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// root attachment and weight rerouting

// Close the cycle through s: tree path out to the nearest cycle vertex, the
// cycle from there, and the path reversed. The doubled path cancels in any
// dart-weight sum, so the enclosed weight is unchanged; the path meets the
// cycle only at its endpoint (an earlier hit would be nearer), so the walk is
// near-simple with anchor s.
inline Cycle attach_root(const PlanarEmbedding& g, const ShortestPathTree& t, const Cycle& c,
                         std::size_t s) {
  validate_cycle(g, c);
  std::size_t best = NONE, at = NONE;
  for (std::size_t i = 0; i < c.darts.size(); ++i) {
    std::size_t v = g.tail(c.darts[i]);
    require(t.reached(v), "attach_root: cycle vertex outside the tree");
    if (best == NONE || t.dist[v] < t.dist[best] || (t.dist[v] == t.dist[best] && v < best)) {
      best = v;
      at = i;
    }
  }
  Cycle out;
  if (best != s) {
    std::vector<Dart> down;
    for (std::size_t v = best; v != s; v = t.parent[v]) down.push_back(t.parent_dart[v]);
    out.darts.assign(down.rbegin(), down.rend());
  }
  out.darts.insert(out.darts.end(), c.darts.begin() + at, c.darts.end());
  out.darts.insert(out.darts.end(), c.darts.begin(), c.darts.begin() + at);
  if (best != s)
    for (std::size_t v = best; v != s; v = t.parent[v])
      out.darts.push_back(PlanarEmbedding::reverse(t.parent_dart[v]));
  validate_cycle(g, out);
  return out;
}

namespace detail {

// One rerouting step: find the last positive dart x->y, pick the deepest tree
// ancestor u of x among the vertices after it (the walk's base closes it, so
// one exists), and replace everything from x through u's occurrence with the
// tree path x -> u. Returns the index of the dropped dart, NONE when the walk
// has no positive dart left.
inline std::size_t reduce_step(const PlanarEmbedding& g, const DartWeights& w,
                               const ShortestPathTree& t, Cycle& walk) {
  std::size_t last = NONE;
  for (std::size_t i = 0; i < walk.darts.size(); ++i)
    if (w.weight[walk.darts[i]] > 0) last = i;
  if (last == NONE) return NONE;

  Dart xy = walk.darts[last];
  std::size_t x = g.tail(xy);
  std::vector<char> anc(g.vertex_count(), 0);
  for (std::size_t v = x;; v = t.parent[v]) {
    anc[v] = 1;
    if (v == t.root) break;
  }
  std::size_t u = NONE, at = NONE;
  for (std::size_t j = last; j < walk.darts.size(); ++j) {
    std::size_t v = g.head(walk.darts[j]);
    if (anc[v] && (u == NONE || t.depth[v] > t.depth[u])) {
      u = v;
      at = j;
    }
  }
  require(u != NONE, "no tree ancestor on the walk tail");

  std::vector<Dart> next(walk.darts.begin(), walk.darts.begin() + last);
  {
    std::vector<Dart> up;
    for (std::size_t v = x; v != u; v = t.parent[v])
      up.push_back(PlanarEmbedding::reverse(t.parent_dart[v]));
    next.insert(next.end(), up.begin(), up.end());
  }
  next.insert(next.end(), walk.darts.begin() + at + 1, walk.darts.end());
  walk.darts = std::move(next);
  validate_cycle(g, walk);
  return last;
}

}  // namespace detail

// Reroute until the enclosed weight is at most alpha * W. Each step drops one
// light positive dart and only nonpositive darts besides it, so the loss per
// step stays under beta * W and the result lands in ((4 alpha/5) W, alpha W].
// Every intermediate walk (including the final one) is handed to emit.
template <typename Emit>
inline Cycle weight_reduction(const PlanarEmbedding& g, const WeightTransferGraph& wt,
                              const ShortestPathTree& t, Cycle walk, const ApproxParams& par,
                              Emit&& emit) {
  const i64 W = wt.total_weight;
  auto above = [&](i64 enc) { return i128(enc) * par.alpha.den > i128(par.alpha.num) * W; };
  i64 enc = wt.weights.sum(walk);
  i64 cost = cycle_cost(g, walk);
  std::size_t prev_last = walk.darts.size();
  bool stepped = false;
  while (above(enc)) {
    std::size_t last = detail::reduce_step(g, wt.weights, t, walk);
    if (last == NONE) throw NoPositiveDart("positive enclosed weight without a positive dart");
    require(last < prev_last, "rerouting did not retreat");
    prev_last = last;
    i64 enc2 = wt.weights.sum(walk);
    i64 cost2 = cycle_cost(g, walk);
    require(cost2 <= cost, "rerouting increased the cost");
    require(i128(enc - enc2) * 5 * par.alpha.den < i128(par.alpha.num) * W,
            "reroute dropped a heavy weight");
    enc = enc2;
    cost = cost2;
    stepped = true;
    emit(walk);
  }
  if (stepped)
    require(i128(enc) * 5 * par.alpha.den > i128(4) * par.alpha.num * W,
            "reduction overshot the floor");
  return walk;
}

// ---------------------------------------------------------------------------
// leaf clusters

struct LeafSolution {
  bool found = false;
  bool skipped = false;  // enumeration refused the cluster
  Fraction quotient{0, 1};
  Cycle cycle;  // darts of the cluster graph
};

// Exhaustive best quotient inside one leaf cluster: splice every degree-two
// chain, enumerate the rank-bounded simple cycles, expand the winner back.
inline LeafSolution leaf_cluster_solve(const Cluster& cl) {
  LeafSolution out;
  std::vector<char> all(cl.graph.vertex_count(), 1);
  SplicedGraph sp = splice_degree_two(cl.graph, all);
  const PlanarEmbedding& h = sp.graph;
  std::vector<Cycle> cycles;
  try {
    cycles = enumerate_simple_cycles(h, h.vertex_count(), 16);
  } catch (const BudgetExceeded&) {
    out.skipped = true;
    return out;
  }
  const i64 W = h.total_face_weight();
  for (const Cycle& c : cycles) {
    i64 enc = enclosed_weight(h, c, h.outer_face());
    i64 den = std::min(enc, W - enc);
    if (den <= 0) continue;
    Fraction q(cycle_cost(h, c), den);
    if (out.found && !(q < out.quotient)) continue;
    out.found = true;
    out.quotient = q;
    out.cycle.darts.clear();
    for (Dart d : c.darts) {
      const std::vector<Dart>& ex = sp.edge_expansion[d >> 1];
      if (d & 1)
        for (auto it = ex.rbegin(); it != ex.rend(); ++it)
          out.cycle.darts.push_back(PlanarEmbedding::reverse(*it));
      else
        out.cycle.darts.insert(out.cycle.darts.end(), ex.begin(), ex.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ball search

struct RootedFindOutcome {
  bool ran = false;             // false: source outside the region or no edges around it
  bool success = false;         // some candidate reached target * lambda
  bool found_negative = false;  // the reduced-cost search produced a cycle
  bool clear = false;           // search graph certified free of negative cycles
  std::size_t region_size = 0;  // vertices of the trimmed component
  bool has_best = false;
  Fraction best{0, 1};
  Cycle best_cycle;  // darts of the host graph
  std::size_t candidates = 0;
};

// Search the radius-(1+1/k)tau ball around s inside the allowed region for a
// cycle of quotient at most target * lambda. Every evaluated walk decomposes
// into vertex-simple pieces whose dart-weight sums are their exact enclosed
// weights, so quotients never need a flood fill until final validation.
inline RootedFindOutcome rooted_find(const PlanarEmbedding& host, const std::vector<char>& region,
                                     std::size_t s, const Fraction& lambda, i64 tau,
                                     const ApproxParams& par) {
  RootedFindOutcome out;
  if (s >= host.vertex_count() || !region[s]) return out;
  if (tau <= 0) throw InvalidInput("rooted_find: tau must be positive");

  // the region component around s, then the ball of radius (1+1/k) tau
  bool whole = std::all_of(region.begin(), region.end(), [](char c) { return c != 0; });
  std::vector<SubgraphComponent> stage1;
  const SubgraphComponent* own = nullptr;
  const PlanarEmbedding* g1 = &host;
  std::size_t s1 = s;
  if (!whole) {
    stage1 = induced_components(host, region);
    for (const auto& sc : stage1)
      if (sc.old_vertex_to_new[s] != NONE) {
        own = &sc;
        break;
      }
    if (!own) return out;  // s has no incident edge inside the region
    g1 = &own->graph;
    s1 = own->old_vertex_to_new[s];
  }
  ShortestPathTree t0 = shortest_path_tree(*g1, s1);
  std::vector<char> keep(g1->vertex_count(), 0);
  for (std::size_t v = 0; v < g1->vertex_count(); ++v)
    keep[v] = t0.reached(v) && i128(t0.dist[v]) * par.k <= i128(par.k + 1) * tau;
  std::vector<SubgraphComponent> stage2 = induced_components(*g1, keep);
  const SubgraphComponent* ball = nullptr;
  for (const auto& sc : stage2)
    if (sc.old_vertex_to_new[s1] != NONE) {
      ball = &sc;
      break;
    }
  if (!ball) return out;
  const PlanarEmbedding& R = ball->graph;
  const std::size_t sr = ball->old_vertex_to_new[s1];
  out.ran = true;
  out.region_size = R.vertex_count();

  if (R.face_count() < 2) {  // no cycle can enclose anything
    out.clear = true;
    return out;
  }

  // trimming kept every shortest path, so the ball is spanned by real edges
  ShortestPathTree t = shortest_path_tree(R, sr);
  for (std::size_t v = 0; v < R.vertex_count(); ++v)
    require(t.reached(v), "ball vertex unreachable from its source");

  // anchor the face tree at the face that swallowed the trimmed region
  std::size_t t_star_root = 0, best_card = 0;
  for (std::size_t f = 0; f < R.face_count(); ++f)
    if (ball->face_origins[f].size() > best_card) {
      best_card = ball->face_origins[f].size();
      t_star_root = f;
    }
  WeightTransferGraph wt = build_weight_transfer(R, t, t_star_root, par);
  const i64 W = wt.total_weight;
  const Fraction gate = par.target * lambda;

  auto to_host = [&](const Cycle& c) {
    Cycle h;
    h.darts.reserve(c.darts.size());
    for (Dart d : c.darts) {
      Dart d1 = ball->to_old_dart(d);
      h.darts.push_back(own ? own->to_old_dart(d1) : d1);
    }
    return h;
  };
  // pieces of any closed walk are simple, so their dart-weight sums are exact
  auto consider = [&](const std::vector<Dart>& walk) {
    for (const Cycle& piece : decompose_closed_walk(R, walk)) {
      i64 wsum = wt.weights.sum(piece);
      i64 enc = wsum < 0 ? -wsum : wsum;
      require(enc <= W, "piece encloses more than the total weight");
      i64 den = std::min(enc, W - enc);
      if (den <= 0) continue;
      Fraction q(cycle_cost(R, piece), den);
      ++out.candidates;
      if (!out.has_best || q < out.best) {
        out.has_best = true;
        out.best = q;
        out.best_cycle = piece;
      }
    }
  };

  // heavy darts: their fundamental cycles are candidates unconditionally
  for (Dart d : wt.heavy) consider(fundamental_cycle(R, t, d).darts);

  std::optional<Cycle> neg = negative_cycle(R, wt, lambda);
  if (!neg) {
    out.clear = true;
  } else {
    out.found_negative = true;
    const Cycle& C = *neg;
    i64 wsum = wt.weights.sum(C);
    require(wsum > 0, "negative reduced cost needs positive weight");
    require(enclosed_weight(R, C, wt.f_inf) == wsum, "dart weights disagree with flood fill");
    consider(C.darts);
    if (i128(wsum) * par.alpha.den > i128(par.alpha.num) * W) {
      Cycle closed = attach_root(R, t, C, sr);
      require(wt.weights.sum(closed) == wsum, "closing the walk changed its weight");
      i64 extra = checked_sub(cycle_cost(R, closed), cycle_cost(R, C));
      require(i128(extra) * par.k <= i128(2) * (par.k + 1) * tau, "attachment path too long");
      require(is_near_simple(R, closed, sr), "attached walk is not near-simple");
      consider(closed.darts);
      Cycle reduced = weight_reduction(R, wt, t, std::move(closed), par,
                                       [&](const Cycle& wk) { consider(wk.darts); });
      // keep stepping toward the balance point: better denominators below alpha W
      i64 e2 = wt.weights.sum(reduced);
      while (i128(2) * e2 > W) {
        if (detail::reduce_step(R, wt.weights, t, reduced) == NONE) break;
        e2 = wt.weights.sum(reduced);
        consider(reduced.darts);
      }
      Cycle core = simple_part(R, reduced);
      if (!core.empty()) consider(core.darts);
    }
  }

  if (out.has_best) out.best_cycle = to_host(out.best_cycle);
  out.success = out.has_best && out.best <= gate;
  return out;
}

// ---------------------------------------------------------------------------
// sweep driver

enum class ApproxMode { Dominating, Strict };

struct RootedCallRecord {
  std::size_t source = NONE;
  i64 tau = 0;
  std::size_t region = 0;
  bool negative = false;
  bool success = false;
};

struct ApproxTrace {
  std::size_t clusters = 0, leaf_count = 0, max_depth = 0;
  double size_constant = 0;
  std::size_t leaf_skipped = 0;
  std::size_t lambda_probes = 0, tau_points = 0;
  std::size_t rooted_calls = 0, cached_hits = 0;
  std::size_t negative_cycles = 0, candidates = 0;
  std::size_t sum_region = 0;        // trimmed-region vertices across all calls
  std::size_t max_sweep_region = 0;  // worst single (lambda, tau) sweep
  std::vector<RootedCallRecord> calls;
  std::size_t call_cap = 200;

  void record(std::size_t s, i64 tau, const RootedFindOutcome& o) {
    ++rooted_calls;
    sum_region += o.region_size;
    if (o.found_negative) ++negative_cycles;
    candidates += o.candidates;
    if (calls.size() < call_cap)
      calls.push_back({s, tau, o.region_size, o.found_negative, o.success});
  }
};

// Driver state for one dual graph: the cluster decomposition, its leaf
// solutions, per-source distance tables, and memoized ball outcomes.
class ApproxSearch {
 public:
  ApproxSearch(const PlanarEmbedding& dual, const ApproxParams& par,
               ApproxMode mode = ApproxMode::Dominating, std::size_t root_vertex = 0)
      : g_(&dual), par_(par), mode_(mode), tree_(build_cluster_tree(dual, root_vertex)) {
    trace_.clusters = tree_.nodes.size();
    trace_.leaf_count = tree_.leaf_count;
    trace_.max_depth = tree_.max_depth;
    trace_.size_constant = tree_.size_constant;

    total_cost_ = 0;
    i64 min_cost = 0;
    for (std::size_t e = 0; e < dual.edge_count(); ++e) {
      if (dual.edge(e).artificial) continue;
      total_cost_ = checked_add(total_cost_, dual.edge(e).cost);
      if (min_cost == 0 || dual.edge(e).cost < min_cost) min_cost = dual.edge(e).cost;
    }
    tau_floor_ = std::max<i64>(1, min_cost);
    all_region_.assign(dual.vertex_count(), 1);
    stamp_.assign(dual.vertex_count(), 0);

    // leaf answers are exact and independent of lambda and tau
    for (const Cluster& cl : tree_.nodes) {
      if (!cl.leaf()) continue;
      LeafSolution ls = leaf_cluster_solve(cl);
      if (ls.skipped) {
        ++trace_.leaf_skipped;
        continue;
      }
      if (!ls.found) continue;
      Cycle global = cl.expand(ls.cycle);
      require(cycle_quotient(*g_, global) == ls.quotient, "leaf quotient changed on expansion");
      offer(ls.quotient, std::move(global));
    }
  }

  const ClusterTree& tree() const { return tree_; }
  const ApproxParams& params() const { return par_; }
  ApproxTrace& trace() { return trace_; }
  i64 tau_floor() const { return tau_floor_; }
  i64 cost_ceiling() const { return total_cost_; }
  bool has_best() const { return has_best_; }
  const Fraction& best() const { return best_; }
  const Cycle& best_cycle() const { return best_cycle_; }  // darts of the dual graph

  // One window: true when some candidate reached target * lambda.
  bool find_lambda_tau(const Fraction& lambda, i64 tau) {
    ++trace_.tau_points;
    if (has_best_ && best_ <= par_.target * lambda) return true;
    std::size_t before = trace_.sum_region;
    bool hit = mode_ == ApproxMode::Dominating ? dominating_sweep(lambda, tau)
                                               : strict_sweep(lambda, tau);
    trace_.max_sweep_region = std::max(trace_.max_sweep_region, trace_.sum_region - before);
    return hit;
  }

  // Full tau grid at this guess: floor at the cheapest edge, step by 1/k,
  // stop once the window tops out past the total cost.
  bool find_lambda(const Fraction& lambda) {
    ++trace_.lambda_probes;
    i64 tau = tau_floor_;
    for (;;) {
      if (find_lambda_tau(lambda, tau)) return true;
      if (tau >= total_cost_) return false;
      tau = checked_add(tau, (tau + static_cast<i64>(par_.k) - 1) / static_cast<i64>(par_.k));
    }
  }

 private:
  struct SourceInfo {
    std::vector<i64> sorted;  // real-edge distances, ascending
  };
  struct BallOutcome {
    bool empty = false;
    bool has_clear = false;
    Fraction lambda_clear{0, 1};
    bool has_neg = false;  // candidates from its negative cycle are banked in best
    bool has_best = false;
    Fraction best{0, 1};
    Cycle cycle;  // dual-graph darts
  };

  void offer(const Fraction& q, Cycle c) {
    if (has_best_ && !(q < best_)) return;
    has_best_ = true;
    best_ = q;
    best_cycle_ = std::move(c);
  }

  SourceInfo& source(std::size_t s) {
    auto [it, fresh] = sources_.try_emplace(s);
    if (fresh) {
      ShortestPathTree t = shortest_path_tree(*g_, s);
      for (i64 d : t.dist) require(d != INF64, "dual graph disconnected over real edges");
      it->second.sorted = t.dist;
      std::sort(it->second.sorted.begin(), it->second.sorted.end());
    }
    return it->second;
  }

  std::size_t ball_count(std::size_t s, i64 tau) {
    const std::vector<i64>& v = source(s).sorted;
    auto it = std::partition_point(v.begin(), v.end(), [&](i64 d) {
      return i128(d) * par_.k <= i128(par_.k + 1) * tau;
    });
    return static_cast<std::size_t>(it - v.begin());
  }

  // Memoized ball probe. The vertex set is determined by (s, count), so a
  // banked outcome answers later windows: a cached candidate wins instantly,
  // a negative cycle found at a smaller lambda dominates this one, and a
  // clear certificate rules out every lambda at or below it.
  bool ball_query(std::size_t s, const Fraction& lambda, i64 tau) {
    std::size_t count = ball_count(s, tau);
    u64 key = (static_cast<u64>(s) << 32) | static_cast<u64>(count);
    Fraction gate = par_.target * lambda;
    auto it = outcomes_.find(key);
    if (it != outcomes_.end()) {
      BallOutcome& o = it->second;
      ++trace_.cached_hits;
      if (o.has_best && o.best <= gate) return true;
      if (o.empty || o.has_neg) return false;
      if (o.has_clear && lambda <= o.lambda_clear) return false;
    }
    RootedFindOutcome r = rooted_find(*g_, all_region_, s, lambda, tau, par_);
    trace_.record(s, tau, r);
    BallOutcome& o = outcomes_[key];
    if (!r.ran) o.empty = true;
    if (r.clear && (!o.has_clear || o.lambda_clear < lambda)) {
      o.has_clear = true;
      o.lambda_clear = lambda;
    }
    if (r.found_negative) o.has_neg = true;
    if (r.has_best && (!o.has_best || r.best < o.best)) {
      o.has_best = true;
      o.best = r.best;
      o.cycle = r.best_cycle;
      offer(o.best, o.cycle);
    }
    return o.has_best && o.best <= gate;
  }

  // Net points along a boundary path: both endpoints, plus a vertex whenever
  // the cost since the last point accumulates to tau/k.
  template <typename Visit>
  void emit_net(const IntersectionPath& p, std::size_t from, std::size_t to, i64 tau,
                Visit&& visit) {
    visit(p.vertices[from]);
    std::size_t last = from;
    for (std::size_t i = from + 1; i < to; ++i) {
      if (i128(p.prefix_cost[i] - p.prefix_cost[last]) * par_.k >= tau) {
        visit(p.vertices[i]);
        last = i;
      }
    }
    if (to - 1 != from) visit(p.vertices[to - 1]);
  }

  bool dominating_sweep(const Fraction& lambda, i64 tau) {
    ++stamp_token_;
    for (std::size_t qi = 1; qi < tree_.nodes.size(); ++qi) {
      for (const ScarRecord& scar : tree_.nodes[qi].scars) {
        for (const IntersectionPath* p : {&scar.path_a, &scar.path_b}) {
          if (p->vertices.empty()) continue;
          bool hit = false;
          emit_net(*p, 0, p->vertices.size(), tau, [&](std::size_t s) {
            if (hit || stamp_[s] == stamp_token_) return;
            stamp_[s] = stamp_token_;
            if (ball_query(s, lambda, tau)) hit = true;
          });
          if (hit) return true;
        }
      }
    }
    return false;
  }

  const std::vector<std::size_t>& global_to_local(std::size_t cluster) {
    if (g2l_.empty()) g2l_.resize(tree_.nodes.size());
    std::vector<std::size_t>& map = g2l_[cluster];
    if (map.empty()) {
      map.assign(g_->vertex_count(), NONE);
      const std::vector<std::size_t>& vg = tree_.nodes[cluster].vertex_to_global;
      for (std::size_t v = 0; v < vg.size(); ++v) map[vg[v]] = v;
    }
    return map;
  }

  // Window a ball to one distance band inside the parent of the emitting
  // cluster; runs of a path sharing presence and band carry their own nets.
  bool strict_sweep(const Fraction& lambda, i64 tau) {
    std::set<std::tuple<std::size_t, std::size_t, long long, std::size_t>> done;
    for (std::size_t i = 0; i <= par_.k; ++i) {
      AnnuliDecomposition bands{tau, par_.k, i};
      for (std::size_t qi = 1; qi < tree_.nodes.size(); ++qi) {
        const std::size_t pi = tree_.nodes[qi].parent;
        const Cluster& parent = tree_.nodes[pi];
        const std::vector<std::size_t>& g2l = global_to_local(pi);
        for (const ScarRecord& scar : tree_.nodes[qi].scars) {
          for (const IntersectionPath* p : {&scar.path_a, &scar.path_b}) {
            std::size_t run = 0;
            while (run < p->vertices.size()) {
              std::size_t v = p->vertices[run];
              if (g2l[v] == NONE) {
                ++run;
                continue;
              }
              long long band = bands.band_of(tree_.dist_from_root[v]);
              std::size_t end = run + 1;
              while (end < p->vertices.size() && g2l[p->vertices[end]] != NONE &&
                     bands.band_of(tree_.dist_from_root[p->vertices[end]]) == band)
                ++end;
              bool hit = false;
              emit_net(*p, run, end, tau, [&](std::size_t s) {
                if (hit || !done.insert({pi, i, band, s}).second) return;
                std::vector<char> region(parent.graph.vertex_count(), 0);
                for (std::size_t v2 = 0; v2 < parent.graph.vertex_count(); ++v2)
                  region[v2] =
                      bands.contains(tree_.dist_from_root[parent.vertex_to_global[v2]], band);
                RootedFindOutcome r =
                    rooted_find(parent.graph, region, g2l[s], lambda, tau, par_);
                trace_.record(s, tau, r);
                if (r.has_best) {
                  Cycle global = parent.expand(r.best_cycle);
                  require(cycle_quotient(*g_, global) == r.best,
                          "windowed quotient changed on expansion");
                  offer(r.best, std::move(global));
                }
                if (r.success) hit = true;
              });
              if (hit) return true;
              run = end;
            }
          }
        }
      }
    }
    return false;
  }

  const PlanarEmbedding* g_;
  ApproxParams par_;
  ApproxMode mode_;
  ClusterTree tree_;
  ApproxTrace trace_;
  i64 total_cost_ = 0, tau_floor_ = 1;
  std::vector<char> all_region_;
  std::vector<std::size_t> stamp_;
  std::size_t stamp_token_ = 0;
  std::unordered_map<std::size_t, SourceInfo> sources_;
  std::unordered_map<u64, BallOutcome> outcomes_;
  std::vector<std::vector<std::size_t>> g2l_;
  bool has_best_ = false;
  Fraction best_{0, 1};
  Cycle best_cycle_;
};

// ---------------------------------------------------------------------------
// top-level driver

struct ApproxResult {
  CutResult cut;
  Fraction lambda_low{0, 1}, lambda_high{0, 1};  // final outer bracket
  bool bracketed = false;                        // the high side succeeded
  ApproxTrace trace;
};

// Bracket the optimum: probe the floor 1/W first (success there is within
// target of any answer), certify the ceiling, then shrink by the simplest
// pivot until the bracket ratio drops under search_ratio. The answer is the
// best candidate seen anywhere, revalidated from scratch.
inline ApproxResult approx_min_quotient(const PlanarEmbedding& g, const ApproxParams& par = {},
                                        ApproxMode mode = ApproxMode::Dominating,
                                        std::size_t root_vertex = 0) {
  par.validate();
  std::size_t positive = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.vertex_weight(v) > 0) ++positive;
  if (positive < 2) throw NoCut("fewer than two positive-weight vertices");

  DualEmbedding d = dualize(g);
  ApproxSearch search(d.graph, par, mode, root_vertex);
  const i64 W = g.total_vertex_weight();
  Fraction lo(1, W);
  Fraction hi(checked_add(search.cost_ceiling(), 1), 1);

  bool bracketed = false;
  if (search.find_lambda(lo)) {
    hi = lo;
    bracketed = true;
  } else if (search.find_lambda(hi)) {
    bracketed = true;
    while (lo * par.search_ratio < hi) {
      Fraction mid = simplest_between(lo, hi);
      if (search.find_lambda(mid))
        hi = mid;
      else
        lo = mid;
    }
  }

  if (!search.has_best()) throw NoCut("no cycle separates positive weight");
  CutResult cut = make_cut_result(g, d, search.best_cycle(), Objective::Quotient);
  require(cut.value == search.best(), "reported quotient differs from validation");
  return ApproxResult{std::move(cut), lo, hi, bracketed, search.trace()};
}

}  // namespace planecut
