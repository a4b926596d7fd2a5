#pragma once
// Deterministic generators for the hard-instance gadget families, plus
// verifiers that measure every advertised formula against the brute oracles.
//
//  * min-plus gadget: three parallel u-v chains encode sequences A, B, C.
//    Cutting chain positions (i, j, k) costs 3*beta + T + a_i + b_j - c_k and
//    is weight-balanced exactly when i + j = k, so cheap balanced cuts are
//    witnesses with a_i + b_j < c_k.
//  * diamond gadget: two fans joined at ell/r whose only "far" vertex pairs
//    are (a_i, b_i); the diameter reveals whether some A[i] = B[i] = 1.
//  * set gadgets: fan-fan graphs whose set-to-set distances encode bit-vector
//    interactions (max-distance, sum-distance, and linkage variants).

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "planecut/base.hpp"
#include "planecut/embedding.hpp"
#include "planecut/exact.hpp"
#include "planecut/oracle.hpp"
#include "planecut/subgraph.hpp"

namespace planecut {

// ---------------------------------------------------------------------------
// Min-plus upper-bound gadget
// ---------------------------------------------------------------------------

struct MinPlusInstance {
  std::vector<i64> a, b, c;
  bool unit_weight = false;

  i64 total = 0;  // T, the sum of all sequence entries
  i64 beta = 0;   // 4 * T * n^2, dominating pad on every chain edge
  i64 heavy = 0;  // 1210 n^2 (2 beta + T), guard/pendant edge cost

  Fraction quotient_threshold;   // (3 beta + T) / (12 n)
  Fraction sparsity_threshold;   // (3 beta + T) / (12 n)^2
  i64 bisection_threshold = 0;   // 3 beta + T

  std::size_t u = 0, v = 1;
  std::vector<std::size_t> a_vertex, b_vertex, c_vertex;   // chain interiors
  std::vector<std::size_t> u_pendant, v_pendant;           // unit-weight only

  PlanarEmbedding graph;
};

// True iff some i + j = k has a_i + b_j < c_k; fills the minimizing triple
// (1-based) over balanced positions when out != nullptr.
inline bool minplus_witness(const std::vector<i64>& a, const std::vector<i64>& b,
                            const std::vector<i64>& c, std::size_t* wi = nullptr,
                            std::size_t* wj = nullptr, std::size_t* wk = nullptr) {
  const std::size_t n = a.size();
  require(b.size() == n && c.size() == n, "sequences must have equal length");
  bool found_any = false;
  i64 best = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; i + j <= n; ++j) {
      const std::size_t k = i + j;
      const i64 gap = a[i - 1] + b[j - 1] - c[k - 1];
      if (!found_any || gap < best) {
        best = gap;
        if (wi) *wi = i;
        if (wj) *wj = j;
        if (wk) *wk = k;
        found_any = true;
      }
    }
  }
  return found_any && best < 0;
}

// Three u-v chains: A and B run v -> a_1 -> ... -> a_n -> u with interior
// costs beta + a_i, C runs u -> c_1 -> ... -> c_n -> v with costs
// beta + T - c_i (the terminal edge included, so every position k in [1, n]
// prices the cut formula uniformly). The v-side entry of A/B and the u-side
// entry of C are guard edges of cost `heavy`, never worth cutting. The
// unit-weight variant moves the endpoint weights onto pendant vertices
// attached by cost-`heavy` edges.
inline MinPlusInstance gen_minplus(const std::vector<i64>& a, const std::vector<i64>& b,
                                   const std::vector<i64>& c, bool unit_weight = false) {
  const std::size_t n = a.size();
  if (b.size() != n || c.size() != n) throw LengthMismatch("sequences must have equal length");
  if (n < 2) throw InvalidInput("need sequences of length >= 2");
  MinPlusInstance inst;
  inst.a = a;
  inst.b = b;
  inst.c = c;
  inst.unit_weight = unit_weight;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] <= 0 || b[i] <= 0 || c[i] <= 0) throw InvalidInput("sequence entries must be positive");
    inst.total = checked_add(inst.total, checked_add(checked_add(a[i], b[i]), c[i]));
  }
  const i64 nn = static_cast<i64>(n);
  inst.beta = checked_mul(checked_mul(4, inst.total), checked_mul(nn, nn));
  inst.heavy = checked_mul(checked_mul(1210, checked_mul(nn, nn)),
                           checked_add(checked_mul(2, inst.beta), inst.total));
  const i64 numer = checked_add(checked_mul(3, inst.beta), inst.total);
  inst.quotient_threshold = Fraction{numer, 12 * nn};
  inst.sparsity_threshold = Fraction{numer, 144 * nn * nn};
  inst.bisection_threshold = numer;

  // vertices: u = 0, v = 1, then the chains in order
  std::size_t next = 2;
  for (std::size_t i = 0; i < n; ++i) inst.a_vertex.push_back(next++);
  for (std::size_t i = 0; i < n; ++i) inst.b_vertex.push_back(next++);
  for (std::size_t i = 0; i < n; ++i) inst.c_vertex.push_back(next++);

  std::vector<EdgeRec> edges;
  auto chain = [&](std::size_t from, const std::vector<std::size_t>& mid, std::size_t to,
                   i64 first_cost, const std::vector<i64>& interior) {
    // from -> mid[0] at first_cost, then mid[i] -> mid[i+1] / mid[n-1] -> to
    // at interior[i]
    edges.push_back({from, mid[0], first_cost, false});
    for (std::size_t i = 0; i + 1 < mid.size(); ++i)
      edges.push_back({mid[i], mid[i + 1], interior[i], false});
    edges.push_back({mid.back(), to, interior[mid.size() - 1], false});
  };
  std::vector<i64> a_costs(n), b_costs(n), c_costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    a_costs[i] = checked_add(inst.beta, a[i]);
    b_costs[i] = checked_add(inst.beta, b[i]);
    c_costs[i] = checked_add(inst.beta, inst.total - c[i]);
  }
  chain(inst.v, inst.a_vertex, inst.u, inst.heavy, a_costs);  // edges 0 .. n
  chain(inst.v, inst.b_vertex, inst.u, inst.heavy, b_costs);  // edges n+1 .. 2n+1
  chain(inst.u, inst.c_vertex, inst.v, inst.heavy, c_costs);  // edges 2n+2 .. 3n+2

  const std::size_t ea = 0, eb = n + 1, ec = 2 * n + 2;  // guard edge ids
  std::vector<i64> weights(next, 1);
  if (unit_weight) {
    for (i64 i = 0; i + 1 < 10 * nn; ++i) inst.u_pendant.push_back(next++);
    for (i64 i = 0; i + 1 < 11 * nn; ++i) inst.v_pendant.push_back(next++);
    weights.assign(next, 1);
    for (std::size_t p : inst.u_pendant) edges.push_back({inst.u, p, inst.heavy, false});
    for (std::size_t p : inst.v_pendant) edges.push_back({inst.v, p, inst.heavy, false});
  } else {
    weights[inst.u] = 10 * nn;
    weights[inst.v] = 11 * nn;
  }

  std::vector<std::vector<std::size_t>> rot(next);
  rot[inst.v] = {ea, eb, ec + n};          // chains A, B, C
  rot[inst.u] = {ec, eb + n, ea + n};      // mirrored order keeps the chains parallel
  for (std::size_t i = 0; i < n; ++i) {
    rot[inst.a_vertex[i]] = {ea + i, ea + i + 1};
    rot[inst.b_vertex[i]] = {eb + i, eb + i + 1};
    rot[inst.c_vertex[i]] = {ec + i, ec + i + 1};
  }
  std::size_t pe = 3 * n + 3;
  for (std::size_t p : inst.u_pendant) {
    rot[inst.u].push_back(pe);
    rot[p] = {pe++};
  }
  for (std::size_t p : inst.v_pendant) {
    rot[inst.v].push_back(pe);
    rot[p] = {pe++};
  }

  inst.graph = build_embedding(next, std::move(edges), rot, std::move(weights));
  return inst;
}

struct MinPlusReport {
  bool witness = false;
  std::size_t witness_i = NONE, witness_j = NONE, witness_k = NONE;

  Fraction quotient, quotient_family;  // solver optimum vs three-edge cut family
  Fraction sparsity, sparsity_family;
  i64 bisection = 0, bisection_family = 0;

  bool quotient_iff = false;   // (optimum < threshold) == witness
  bool sparsity_iff = false;
  bool bisection_iff = false;
  bool all_hold() const { return quotient_iff && sparsity_iff && bisection_iff; }
};

namespace detail {

// The side holding v must be {v} + a prefix of A + a prefix of B + a suffix
// of C (pendants follow their hub), and the cut cost must equal the
// three-edge formula at the induced (i, j, k).
inline void check_minplus_structure(const MinPlusInstance& inst, const CutResult& cut,
                                    const char* what) {
  const std::size_t n = inst.a.size();
  const bool v_bit = cut.inside_vertices[inst.v] != 0;
  auto with_v = [&](std::size_t x) { return (cut.inside_vertices[x] != 0) == v_bit; };
  if (with_v(inst.u))
    throw ClaimViolated(std::string(what) + ": optimal cut fails to separate the endpoints");

  auto prefix_len = [&](const std::vector<std::size_t>& chain) {
    std::size_t len = 0;
    while (len < n && with_v(chain[len])) ++len;
    for (std::size_t t = len; t < n; ++t)
      if (with_v(chain[t]))
        throw ClaimViolated(std::string(what) + ": v-side chain vertices are not a prefix");
    return len;
  };
  const std::size_t i = prefix_len(inst.a_vertex);
  const std::size_t j = prefix_len(inst.b_vertex);
  std::size_t suffix = 0;
  while (suffix < n && with_v(inst.c_vertex[n - 1 - suffix])) ++suffix;
  for (std::size_t t = 0; t + suffix < n; ++t)
    if (with_v(inst.c_vertex[t]))
      throw ClaimViolated(std::string(what) + ": v-side C vertices are not a suffix");
  const std::size_t k = n - suffix;
  if (i == 0 || j == 0 || k == 0)
    throw ClaimViolated(std::string(what) + ": optimal cut crosses a guard edge");

  for (std::size_t p : inst.u_pendant)
    if (with_v(p)) throw ClaimViolated(std::string(what) + ": u pendant strayed to the v side");
  for (std::size_t p : inst.v_pendant)
    if (!with_v(p)) throw ClaimViolated(std::string(what) + ": v pendant strayed to the u side");

  const i64 want = checked_add(checked_mul(3, inst.beta),
                               inst.total + inst.a[i - 1] + inst.b[j - 1] - inst.c[k - 1]);
  if (cut.cost != want)
    throw ClaimViolated(std::string(what) + ": cut cost differs from the three-edge formula");
}

}  // namespace detail

// Measures the gadget's advertised threshold claims with the exact solver and
// the exhaustive bisection oracle. Structural failures (an optimum that is
// not a clean three-edge cut, or solver/family disagreement) throw
// ClaimViolated: they signal an implementation bug. The iff outcomes are
// reported as data; callers decide which branches to require.
inline MinPlusReport verify_minplus(const MinPlusInstance& inst) {
  const std::size_t n = inst.a.size();
  require(n >= 2 && n <= 6, "verifier runs at oracle scale (n <= 6)");
  MinPlusReport rep;
  rep.witness = minplus_witness(inst.a, inst.b, inst.c, &rep.witness_i, &rep.witness_j,
                                &rep.witness_k);

  // three-edge cut family: positions (i, j, k), v side weight 12n + (i+j-k)
  const i64 nn = static_cast<i64>(n);
  bool first = true;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t k = 1; k <= n; ++k) {
        const i64 cost = checked_add(checked_mul(3, inst.beta),
                                     inst.total + inst.a[i - 1] + inst.b[j - 1] - inst.c[k - 1]);
        const i64 side = 12 * nn + static_cast<i64>(i) + static_cast<i64>(j) - static_cast<i64>(k);
        const Fraction q{cost, std::min(side, 24 * nn - side)};
        const Fraction s{cost, side * (24 * nn - side)};
        if (first || q < rep.quotient_family) rep.quotient_family = q;
        if (first || s < rep.sparsity_family) rep.sparsity_family = s;
        if (side == 12 * nn && (rep.bisection_family == 0 || cost < rep.bisection_family))
          rep.bisection_family = cost;
        first = false;
      }
    }
  }

  const CutResult q = exact_min_cut(inst.graph, Objective::Quotient);
  const CutResult s = exact_min_cut(inst.graph, Objective::Sparsity);
  rep.quotient = q.value;
  rep.sparsity = s.value;
  detail::check_minplus_structure(inst, q, "quotient");
  detail::check_minplus_structure(inst, s, "sparsity");
  if (!(rep.quotient == rep.quotient_family))
    throw ClaimViolated("quotient optimum differs from the three-edge family minimum");
  if (!(rep.sparsity == rep.sparsity_family))
    throw ClaimViolated("sparsity optimum differs from the three-edge family minimum");

  // Bisection enumerates bipartitions, so work on the weighted twin: pendant
  // edges cost more than any three-edge cut and never get cut, which makes
  // contracting them exact.
  if (inst.unit_weight) {
    const MinPlusInstance twin = gen_minplus(inst.a, inst.b, inst.c, false);
    const CutResult qt = exact_min_cut(twin.graph, Objective::Quotient);
    const CutResult st = exact_min_cut(twin.graph, Objective::Sparsity);
    if (!(qt.value == rep.quotient) || !(st.value == rep.sparsity))
      throw ClaimViolated("unit-weight optima differ from the weighted twin");
    rep.bisection = min_bisection_small(twin.graph).cost;
  } else {
    rep.bisection = min_bisection_small(inst.graph).cost;
  }
  if (rep.bisection != rep.bisection_family)
    throw ClaimViolated("bisection optimum differs from the balanced family minimum");

  rep.quotient_iff = (rep.quotient < inst.quotient_threshold) == rep.witness;
  rep.sparsity_iff = (rep.sparsity < inst.sparsity_threshold) == rep.witness;
  rep.bisection_iff = (rep.bisection < inst.bisection_threshold) == rep.witness;
  return rep;
}

// ---------------------------------------------------------------------------
// Diamond gadget
// ---------------------------------------------------------------------------

struct DiamondInstance {
  std::vector<int> a, b;  // bit strings
  i64 m = 4;
  i64 base = 0;  // (n + 2) m; diameter == base + 2 iff some A[i] = B[i] = 1

  std::size_t left = NONE, right = NONE;      // ell, r (fan hubs of the A side)
  std::size_t left_b = NONE, right_b = NONE;  // ell', r' (hubs of the B side)
  std::vector<std::size_t> a_vertex, b_vertex;

  PlanarEmbedding graph;
};

// Two mirrored fans over ell/r and ell'/r', bridged by the two hub edges. The
// left route a_i -> ell -> ell' -> b_j costs (i - j + n + 2) m + bits and the
// right route costs (j - i + n + 2) m + bits, so only i == j pairs lack a
// cheap side.
inline DiamondInstance gen_diamond(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw LengthMismatch("bit strings must have equal length");
  if (n == 0) throw InvalidInput("need at least one coordinate");
  DiamondInstance inst;
  inst.a = a;
  inst.b = b;
  const i64 nn = static_cast<i64>(n);
  inst.base = (nn + 2) * inst.m;
  for (std::size_t i = 0; i < n; ++i)
    if ((a[i] | b[i]) & ~1) throw InvalidInput("bit strings must be 0/1");

  for (std::size_t i = 0; i < n; ++i) inst.a_vertex.push_back(i);
  for (std::size_t i = 0; i < n; ++i) inst.b_vertex.push_back(n + i);
  inst.left = 2 * n;
  inst.right = 2 * n + 1;
  inst.left_b = 2 * n + 2;
  inst.right_b = 2 * n + 3;

  std::vector<EdgeRec> edges;
  for (std::size_t i = 0; i < n; ++i)  // a_i -- ell, ids 0 .. n-1
    edges.push_back({inst.a_vertex[i], inst.left, (static_cast<i64>(i) + 1) * inst.m + a[i], false});
  for (std::size_t i = 0; i < n; ++i)  // a_i -- r, ids n .. 2n-1
    edges.push_back({inst.a_vertex[i], inst.right, (nn - static_cast<i64>(i)) * inst.m + a[i], false});
  for (std::size_t j = 0; j < n; ++j)  // b_j -- ell', ids 2n .. 3n-1
    edges.push_back({inst.b_vertex[j], inst.left_b, (nn - static_cast<i64>(j)) * inst.m + b[j], false});
  for (std::size_t j = 0; j < n; ++j)  // b_j -- r', ids 3n .. 4n-1
    edges.push_back({inst.b_vertex[j], inst.right_b, (static_cast<i64>(j) + 1) * inst.m + b[j], false});
  edges.push_back({inst.left, inst.left_b, inst.m, false});    // id 4n
  edges.push_back({inst.right, inst.right_b, inst.m, false});  // id 4n+1

  std::vector<std::vector<std::size_t>> rot(2 * n + 4);
  for (std::size_t i = 0; i < n; ++i) rot[inst.a_vertex[i]] = {i, n + i};
  for (std::size_t j = 0; j < n; ++j) rot[inst.b_vertex[j]] = {2 * n + j, 3 * n + j};
  for (std::size_t i = n; i-- > 0;) rot[inst.left].push_back(i);
  rot[inst.left].push_back(4 * n);
  for (std::size_t i = 0; i < n; ++i) rot[inst.right].push_back(n + i);
  rot[inst.right].push_back(4 * n + 1);
  rot[inst.left_b].push_back(4 * n);
  for (std::size_t j = n; j-- > 0;) rot[inst.left_b].push_back(2 * n + j);
  rot[inst.right_b].push_back(4 * n + 1);
  for (std::size_t j = 0; j < n; ++j) rot[inst.right_b].push_back(3 * n + j);

  inst.graph = build_embedding(2 * n + 4, std::move(edges), rot,
                               std::vector<i64>(2 * n + 4, 1));
  return inst;
}

struct DiamondReport {
  bool shared_bit = false;  // some A[i] = B[i] = 1
  i64 diameter = 0;
  std::size_t hop_diameter = 0;
  bool special_pairs_ok = false;  // d(a_i, b_i) == base + A[i] + B[i] for all i
  bool hub_pairs_ok = false;      // the two hub diagonals sit at base + 2 min(min A, min B)
  bool other_pairs_ok = false;    // every remaining pair is strictly below base
  bool diameter_ok = false;       // base + 2 iff shared bit, else <= base + 1
  bool ok() const {
    return special_pairs_ok && hub_pairs_ok && other_pairs_ok && diameter_ok &&
           hop_diameter == 3;
  }
};

namespace detail {

inline std::vector<std::size_t> bfs_hops(const PlanarEmbedding& g, std::size_t src) {
  std::vector<std::size_t> hops(g.vertex_count(), NONE);
  std::vector<std::size_t> queue{src};
  hops[src] = 0;
  for (std::size_t at = 0; at < queue.size(); ++at) {
    const std::size_t x = queue[at];
    for (Dart d : g.rotation(x)) {
      const std::size_t y = g.head(d);
      if (hops[y] == NONE) {
        hops[y] = hops[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return hops;
}

}  // namespace detail

inline DiamondReport verify_diamond(const DiamondInstance& inst) {
  const std::size_t n = inst.a.size();
  require(n <= 512, "verifier runs at oracle scale (n <= 512)");
  DiamondReport rep;
  for (std::size_t i = 0; i < n; ++i) rep.shared_bit |= (inst.a[i] == 1 && inst.b[i] == 1);

  const std::vector<std::vector<i64>> dist = apsp(inst.graph);
  const std::size_t nv = inst.graph.vertex_count();
  rep.special_pairs_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const i64 want = inst.base + inst.a[i] + inst.b[i];
    rep.special_pairs_ok &= dist[inst.a_vertex[i]][inst.b_vertex[i]] == want;
  }
  // Crossing hub to hub costs base + 2 min_i A[i] resp. base + 2 min_j B[j]
  // along the cheapest a- resp. b-row, so both diagonals land exactly at
  // base + 2 min(min A, min B). All-ones strings force a shared bit, hence
  // the diagonals never push the diameter past the claimed value.
  int min_bit = 1;
  for (std::size_t i = 0; i < n; ++i) min_bit = std::min({min_bit, inst.a[i], inst.b[i]});
  const i64 hub_want = inst.base + 2 * min_bit;
  rep.hub_pairs_ok = dist[inst.left][inst.right_b] == hub_want &&
                     dist[inst.left_b][inst.right] == hub_want;
  rep.other_pairs_ok = true;
  for (std::size_t x = 0; x < nv; ++x) {
    for (std::size_t y = x + 1; y < nv; ++y) {
      rep.diameter = std::max(rep.diameter, dist[x][y]);
      const bool special = x < n && y == inst.b_vertex[x];
      const bool hub_diag = (x == inst.left && y == inst.right_b) ||
                            (x == inst.right && y == inst.left_b);
      if (!special && !hub_diag) rep.other_pairs_ok &= dist[x][y] < inst.base;
    }
  }
  rep.diameter_ok = rep.shared_bit ? rep.diameter == inst.base + 2
                                   : rep.diameter <= inst.base + 1;
  for (std::size_t x = 0; x < nv; ++x) {
    const std::vector<std::size_t> hops = detail::bfs_hops(inst.graph, x);
    for (std::size_t y = 0; y < nv; ++y) {
      require(hops[y] != NONE, "gadget must be connected");
      rep.hop_diameter = std::max(rep.hop_diameter, hops[y]);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Set gadgets (closest pair of sets, linkage simulations)
// ---------------------------------------------------------------------------

enum class SetsVariant { MaxDist, SumDist, CompleteLinkage, AverageLinkage };

struct SetsInstance {
  std::vector<std::vector<int>> vectors;  // n bit vectors of dimension d
  SetsVariant variant = SetsVariant::MaxDist;
  bool unit_cost = false;

  i64 m = 4;
  i64 shift = 0;          // added to every fan edge (linkage variants: 11 d)
  i64 scale = 1;          // multiplies every non-copy edge (average linkage)
  std::size_t copies = 1; // node multiplicity (average linkage: d^2 + 1)

  std::size_t left = NONE, right = NONE;
  std::vector<std::vector<std::size_t>> sets;  // per vector, its node ids

  PlanarEmbedding graph;
};

// Replaces each edge by a chain of unit-cost edges of the same total cost.
// Original vertices keep their ids; interior chain vertices are appended with
// weight 1 and face weights are dropped. Distances are preserved exactly.
inline PlanarEmbedding subdivide_unit_costs(const PlanarEmbedding& g) {
  const std::size_t nv = g.vertex_count();
  std::vector<EdgeRec> edges;
  std::vector<std::vector<std::size_t>> rot;
  rot.reserve(nv);
  std::vector<i64> weights;
  for (std::size_t x = 0; x < nv; ++x) {
    rot.push_back({});
    weights.push_back(g.vertex_weight(x));
  }
  std::vector<std::size_t> first_seg(g.edge_count()), last_seg(g.edge_count());
  std::size_t next = nv;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const EdgeRec& er = g.edge(e);
    require(er.u != er.v, "self-loops cannot be subdivided");
    first_seg[e] = edges.size();
    std::size_t prev = er.u;
    for (i64 s = 1; s < er.cost; ++s) {
      const std::size_t z = next++;
      edges.push_back({prev, z, 1, er.artificial});
      rot.push_back({edges.size() - 1, edges.size()});
      weights.push_back(1);
      prev = z;
    }
    edges.push_back({prev, er.v, 1, er.artificial});
    last_seg[e] = edges.size() - 1;
  }
  for (std::size_t x = 0; x < nv; ++x) {
    for (Dart d : g.rotation(x)) {
      const std::size_t e = PlanarEmbedding::edge_of(d);
      rot[x].push_back(d == PlanarEmbedding::dart_uv(e) ? first_seg[e] : last_seg[e]);
    }
  }
  return build_embedding(next, std::move(edges), rot, std::move(weights));
}

// One tall fan-fan: every set node hangs between hubs ell and r. Fan costs
// follow the position rules j*m / (2d+1-j)*m plus the bit (sum-distance
// variants complement the bit on the r side, which turns the tied i == j
// routes into an xor term). Linkage variants add intra-set paths of cost 5
// and shift every fan edge by 11 d; average linkage additionally multiplies
// every non-copy edge by `scale` and strings `copies` copies of each node on
// unit-cost edges.
inline SetsInstance gen_sets(const std::vector<std::vector<int>>& vectors, SetsVariant variant,
                             bool unit_cost = false) {
  const std::size_t n = vectors.size();
  if (n < 2) throw InvalidInput("need at least two vectors");
  const std::size_t d = vectors[0].size();
  if (d == 0) throw InvalidInput("need dimension >= 1");
  for (const std::vector<int>& v : vectors) {
    if (v.size() != d) throw LengthMismatch("vectors must have equal dimension");
    for (int bit : v)
      if (bit & ~1) throw InvalidInput("vectors must be 0/1");
  }
  const bool linkage =
      variant == SetsVariant::CompleteLinkage || variant == SetsVariant::AverageLinkage;
  if (unit_cost && linkage) throw InvalidInput("linkage gadgets stay weighted");

  SetsInstance inst;
  inst.vectors = vectors;
  inst.variant = variant;
  const i64 dd = static_cast<i64>(d);
  if (linkage) inst.shift = 11 * dd;
  if (variant == SetsVariant::AverageLinkage) {
    inst.copies = d * d + 1;
    inst.scale = 100 * dd * static_cast<i64>(inst.copies);
  }
  const bool complement =
      variant == SetsVariant::SumDist || variant == SetsVariant::AverageLinkage;

  // middle nodes in one vertical line: per set, u_1..u_d then u'_d..u'_1,
  // each expanded into `copies` consecutive copies.  The mirrored second half
  // keeps every consecutive fan-weight gap at m, below the intra-set path
  // cost 5, so path edges never shorten a hub distance.
  const std::size_t per_set = 2 * d * inst.copies;
  const std::size_t mid = n * per_set;
  inst.left = mid;
  inst.right = mid + 1;
  std::vector<i64> wl(mid), wr(mid);
  std::vector<std::size_t> set_of(mid);
  inst.sets.assign(n, {});
  std::size_t t = 0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t half = 0; half < 2; ++half) {
      for (std::size_t pos = 1; pos <= d; ++pos) {
        const std::size_t j = half == 0 ? pos : d + 1 - pos;
        const int bit = vectors[k][j - 1];
        const i64 jj = static_cast<i64>(j);
        const i64 low = jj * inst.m + bit;
        const i64 high = (2 * dd + 1 - jj) * inst.m + bit;
        const i64 high_r = (2 * dd + 1 - jj) * inst.m + (complement ? 1 - bit : bit);
        const i64 low_r = jj * inst.m + (complement ? 1 - bit : bit);
        for (std::size_t cp = 0; cp < inst.copies; ++cp, ++t) {
          wl[t] = checked_mul(inst.scale, inst.shift + (half == 0 ? low : high));
          wr[t] = checked_mul(inst.scale, inst.shift + (half == 0 ? high_r : low_r));
          set_of[t] = k;
          inst.sets[k].push_back(t);
        }
      }
    }
  }

  std::vector<EdgeRec> edges;
  for (std::size_t x = 0; x < mid; ++x) {  // fan edges 2x (left), 2x+1 (right)
    edges.push_back({x, inst.left, wl[x], false});
    edges.push_back({x, inst.right, wr[x], false});
  }
  std::vector<std::size_t> path_edge(mid, NONE);  // id of edge x -- x+1
  if (linkage) {
    for (std::size_t x = 0; x + 1 < mid; ++x) {
      if (set_of[x] != set_of[x + 1]) continue;
      const bool same_node = (x % inst.copies) + 1 < inst.copies;
      const i64 cost = same_node ? 1 : checked_mul(5, inst.scale);
      path_edge[x] = edges.size();
      edges.push_back({x, x + 1, cost, false});
    }
  }

  std::vector<std::vector<std::size_t>> rot(mid + 2);
  for (std::size_t x = 0; x < mid; ++x) {
    rot[x].push_back(2 * x + 1);                              // r
    if (x > 0 && path_edge[x - 1] != NONE) rot[x].push_back(path_edge[x - 1]);  // up
    rot[x].push_back(2 * x);                                  // ell
    if (path_edge[x] != NONE) rot[x].push_back(path_edge[x]);  // down
  }
  for (std::size_t x = mid; x-- > 0;) rot[inst.left].push_back(2 * x);
  for (std::size_t x = 0; x < mid; ++x) rot[inst.right].push_back(2 * x + 1);

  inst.graph = build_embedding(mid + 2, std::move(edges), rot, std::vector<i64>(mid + 2, 1));
  if (unit_cost) {
    inst.unit_cost = true;
    inst.graph = subdivide_unit_costs(inst.graph);
  }
  return inst;
}

struct SetsReport {
  bool formula_ok = true;     // per-variant distance formula / constant-offset identity
  bool threshold_iff = true;  // maxdist: closest pair below (2d+1)m+1 iff orthogonal pair
  bool phases_ok = true;      // linkage: sets coalesce, then the hubs are absorbed
  bool merge_ok = true;       // linkage: first cross merge is a closest pair
  i64 sum_dist_offset = 0;    // sumdist: measured constant with Sum-Dist = offset + slope * Ham
  bool ok() const { return formula_ok && threshold_iff && phases_ok && merge_ok; }
};

namespace detail {

inline i64 hamming(const std::vector<int>& x, const std::vector<int>& y) {
  i64 h = 0;
  for (std::size_t i = 0; i < x.size(); ++i) h += x[i] != y[i];
  return h;
}

inline bool orthogonal(const std::vector<int>& x, const std::vector<int>& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == 1 && y[i] == 1) return false;
  return true;
}

}  // namespace detail

inline SetsReport verify_sets(const SetsInstance& inst) {
  const std::size_t n = inst.vectors.size();
  const std::size_t d = inst.vectors[0].size();
  require(n <= 16 && d <= 8, "verifier runs at oracle scale (n <= 16, d <= 8)");
  if (inst.unit_cost) require(n <= 8 && d <= 4, "subdivided instances stay small");
  SetsReport rep;

  const std::vector<std::vector<i64>> dist =
      apsp(inst.graph, std::max<std::size_t>(4096, inst.graph.vertex_count()));
  const i64 dd = static_cast<i64>(d);

  if (inst.variant == SetsVariant::MaxDist || inst.variant == SetsVariant::CompleteLinkage) {
    // Max-Dist(S_a, S_b) = scale * ((2d+1) m + 2 shift + max_i (va[i] + vb[i]))
    i64 closest = 0;
    bool first = true;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        i64 term = 0;
        for (std::size_t i = 0; i < d; ++i)
          term = std::max<i64>(term, inst.vectors[x][i] + inst.vectors[y][i]);
        const i64 want = inst.scale * ((2 * dd + 1) * inst.m + 2 * inst.shift + term);
        const i64 got = set_distance(dist, inst.sets[x], inst.sets[y], SetDistance::Max);
        rep.formula_ok &= got == want;
        if (first || got < closest) closest = got;
        first = false;
      }
    }
    if (inst.variant == SetsVariant::MaxDist) {
      bool have_orth = false;
      for (std::size_t x = 0; x < n && !have_orth; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
          have_orth |= detail::orthogonal(inst.vectors[x], inst.vectors[y]);
      rep.threshold_iff = (closest <= (2 * dd + 1) * inst.m + 1) == have_orth;
    }
  } else {
    // Sum-Dist(S_a, S_b) = offset(d, m) + slope * Ham(va, vb) with
    // slope = 2 * copies^2 * scale
    const i64 slope =
        2 * static_cast<i64>(inst.copies) * static_cast<i64>(inst.copies) * inst.scale;
    bool first = true;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        const i64 got = set_distance(dist, inst.sets[x], inst.sets[y], SetDistance::Sum);
        const i64 offset = got - slope * detail::hamming(inst.vectors[x], inst.vectors[y]);
        if (first) rep.sum_dist_offset = offset;
        rep.formula_ok &= offset == rep.sum_dist_offset;
        first = false;
      }
    }
  }

  const bool linkage = inst.variant == SetsVariant::CompleteLinkage ||
                       inst.variant == SetsVariant::AverageLinkage;
  if (linkage) {
    const Linkage mode =
        inst.variant == SetsVariant::CompleteLinkage ? Linkage::Complete : Linkage::Average;
    const SetDistance sd =
        inst.variant == SetsVariant::CompleteLinkage ? SetDistance::Max : SetDistance::Sum;
    const MergeTrace trace = linkage_simulate(inst.graph, mode);

    std::vector<std::vector<std::size_t>> want = inst.sets;  // target partition + hubs
    want.push_back({inst.left});
    want.push_back({inst.right});
    for (std::vector<std::size_t>& w : want) std::sort(w.begin(), w.end());
    std::sort(want.begin(), want.end());

    const std::size_t nv = inst.graph.vertex_count();
    std::vector<char> active(2 * nv - 1, 0);
    for (std::size_t x = 0; x < nv; ++x) active[x] = 1;
    std::size_t coalesced = NONE;
    for (std::size_t step = 0; step < trace.steps.size() && coalesced == NONE; ++step) {
      active[trace.steps[step].a] = 0;
      active[trace.steps[step].b] = 0;
      active[trace.steps[step].joined] = 1;
      if (nv - 1 - step != want.size()) continue;
      std::vector<std::vector<std::size_t>> got;
      for (std::size_t id = 0; id < active.size(); ++id) {
        if (!active[id]) continue;
        got.push_back(trace.members[id]);
        std::sort(got.back().begin(), got.back().end());
      }
      std::sort(got.begin(), got.end());
      if (got == want) coalesced = step;
    }
    rep.phases_ok = coalesced != NONE;
    if (rep.phases_ok) {
      // the two hub absorptions, in either order: each step merges exactly one
      // lone hub into a set cluster (never hub with hub)
      std::vector<std::size_t> absorbed;
      for (std::size_t step = coalesced + 1; step <= coalesced + 2; ++step) {
        const MergeStep& ms = trace.steps[step];
        std::size_t hubs_here = 0;
        for (std::size_t id : {ms.a, ms.b}) {
          if (trace.members[id].size() == 1 &&
              (trace.members[id][0] == inst.left || trace.members[id][0] == inst.right)) {
            absorbed.push_back(trace.members[id][0]);
            ++hubs_here;
          }
        }
        if (hubs_here != 1) rep.phases_ok = false;
      }
      std::sort(absorbed.begin(), absorbed.end());
      rep.phases_ok &= absorbed == std::vector<std::size_t>{inst.left, inst.right};
    }
    if (rep.phases_ok) {
      // first cross merge joins a closest pair of sets
      const MergeStep& ms = trace.steps[coalesced + 3];
      auto set_index = [&](std::size_t cluster) {
        for (std::size_t x : trace.members[cluster])
          if (x != inst.left && x != inst.right) return x / (2 * d * inst.copies);
        return NONE;
      };
      const std::size_t x = set_index(ms.a);
      const std::size_t y = set_index(ms.b);
      if (x == NONE || y == NONE || x == y) {
        rep.merge_ok = false;
      } else {
        const i64 merged = set_distance(dist, inst.sets[x], inst.sets[y], sd);
        i64 best = merged;
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = p + 1; q < n; ++q)
            best = std::min(best, set_distance(dist, inst.sets[p], inst.sets[q], sd));
        rep.merge_ok = merged == best;
      }
    } else {
      rep.merge_ok = false;
    }
  }
  return rep;
}

}  // namespace planecut
