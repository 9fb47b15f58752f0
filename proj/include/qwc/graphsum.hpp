#pragma once

// Torus-localization graph sums for genus-zero descendant invariants.
//
// A fixed locus of the moduli of stable maps is a decorated tree: vertices
// sit at torus-fixed points, edges are multiple covers of closed orbits, and
// marked points (legs) attach to vertices. The engine sums over vertex-labeled
// trees and divides by v!, which weights every isomorphism class of decorated
// graphs by 1/|Aut| exactly.
//
// Conventions, pinned by the I = J oracle for Fano targets (the suite fails
// loudly if any factor drifts):
//   edge e, cover degree delta of orbit with tangent weight omega at one end:
//     factor 1/(delta * E(e)) where E(e) is the alternating product of the
//     nonzero weights of H^0/H^1 of the pulled-back ray bundles; the 1/delta
//     is the deck transformation of the cover.
//   vertex with E edges and legs, m incidences total:
//     e(T_sigma)^(E-1) times a conventional factor:
//       m >= 3: moduli integral of prod 1/(w_i - psi) over slots
//       m == 2, two edges: node smoothing 1/(w_1 + w_2)
//       m == 2, edge + leg: leg evaluated at psi = -w_edge
//       m == 1, bare end:   w_edge
//     where w_i is the domain tangent weight omega_i / delta_i.

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "novikov.hpp"
#include "orbits.hpp"
#include "psi.hpp"
#include "ratfunc.hpp"

namespace qwc {

namespace detail {

// Deterministic parallel map: results are stored by index and must not
// depend on which thread computes them.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F&& f, int threads)
    -> std::vector<decltype(f(items[std::size_t(0)]))> {
  using R = decltype(f(items[std::size_t(0)]));
  std::vector<R> out(items.size());
  if (threads <= 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        out[i] = f(items[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  int nt = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), items.size()));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

// All trees on v labeled vertices, as sorted edge lists (Prufer decoding).
inline std::vector<std::vector<std::pair<int, int>>> labeled_trees(int v) {
  std::vector<std::vector<std::pair<int, int>>> trees;
  if (v == 1) {
    trees.push_back({});
    return trees;
  }
  if (v == 2) {
    trees.push_back({{0, 1}});
    return trees;
  }
  std::vector<int> code(v - 2, 0);
  for (;;) {
    std::vector<int> deg(v, 1);
    for (int x : code) ++deg[x];
    std::set<int> leaves;
    for (int i = 0; i < v; ++i)
      if (deg[i] == 1) leaves.insert(i);
    std::vector<std::pair<int, int>> edges;
    for (int x : code) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.push_back({std::min(leaf, x), std::max(leaf, x)});
      if (--deg[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin(), b = *std::next(leaves.begin());
    edges.push_back({std::min(a, b), std::max(a, b)});
    trees.push_back(std::move(edges));
    int i = v - 3;
    while (i >= 0 && code[i] == v - 1) code[i--] = 0;
    if (i < 0) break;
    ++code[i];
  }
  return trees;
}

}  // namespace detail

// Marked point carried by a graph sum. The class is given by its restriction
// to each fixed point. A leg contributes cls * psi^a, and when prop is set an
// additional propagator 1/(prop - psi).
struct Leg {
  std::vector<EqRatFunc> cls;
  int a = 0;
  std::optional<MultiPoly> prop;
};

namespace detail {

struct VtxLeg {
  const EqRatFunc* cls = nullptr;
  int a = 0;
  const MultiPoly* prop = nullptr;
};

// Moduli integral over the stable vertex: slots carry 1/(y_i - psi) psi^off_i,
// fixed legs carry psi^a. Total psi degree must reach m - 3.
inline EqRatFunc stable_integral(int nv, const std::vector<const MultiPoly*>& ys,
                                 const std::vector<int>& off,
                                 const std::vector<int>& fixed_a, int m) {
  long need = m - 3;
  for (int x : off) need -= x;
  for (int x : fixed_a) need -= x;
  if (need < 0) return EqRatFunc(MultiPoly(nv));
  mpz_class base = 1;
  for (long k = 2; k <= m - 3; ++k) base *= k;
  Rat fixed_den(1);
  for (int x : fixed_a)
    for (long k = 2; k <= x; ++k) fixed_den *= k;
  if (ys.empty()) {
    if (need != 0) return EqRatFunc(MultiPoly(nv));
    Rat c = Rat(base) / fixed_den;
    c.canonicalize();
    return EqRatFunc::rational(nv, c);
  }
  const int S = static_cast<int>(ys.size());
  std::vector<long> k(S, 0);
  k[0] = need;
  EqRatFunc total{MultiPoly(nv)};
  for (;;) {
    Rat den = fixed_den;
    for (int i = 0; i < S; ++i)
      for (long t = 2; t <= k[i] + off[i]; ++t) den *= t;
    Rat c = Rat(base) / den;
    c.canonicalize();
    std::vector<std::pair<MultiPoly, int>> fs;
    fs.reserve(S);
    for (int i = 0; i < S; ++i)
      fs.push_back({*ys[i], static_cast<int>(k[i]) + 1});
    total += EqRatFunc::from_factors(MultiPoly::constant(nv, c), fs);
    // next composition of `need` into S parts
    if (S == 1) break;
    int i = 0;
    while (i < S - 1 && k[i] == 0) ++i;
    if (i == S - 1) break;
    long rest = k[i] - 1;
    k[i] = 0;
    ++k[i + 1];
    for (int t = 0; t < i; ++t) {
      rest += k[t];
      k[t] = 0;
    }
    k[0] = rest;
  }
  return total;
}

// Conventional vertex factor, excluding the e(T_sigma)^(E-1) flag packaging.
// omegas are the domain tangent weights omega_edge / delta of incident edges.
inline EqRatFunc vertex_conventional(int nv, const std::vector<MultiPoly>& omegas,
                                     const std::vector<VtxLeg>& legs) {
  const int E = static_cast<int>(omegas.size());
  const int m = E + static_cast<int>(legs.size());
  for (const auto& w : omegas)
    if (w.is_zero()) throw std::runtime_error("non-isolated orbit");
  if (m == 0) throw std::invalid_argument("empty vertex");
  if (m == 1) {
    if (E != 1) throw std::invalid_argument("unstable vertex: lone marked point");
    return EqRatFunc(omegas[0]);
  }
  if (m == 2) {
    if (E == 2) {
      MultiPoly s = omegas[0] + omegas[1];
      if (s.is_zero()) throw std::runtime_error("non-isolated orbit");
      return EqRatFunc::from_factors(MultiPoly::constant(nv, Rat(1)), {{s, 1}});
    }
    if (E == 0)
      throw std::invalid_argument("unstable vertex: two marked points, no edge");
    // one edge, one leg: evaluate the leg at psi = -omega
    const VtxLeg& lg = legs[0];
    MultiPoly mw = omegas[0] * Rat(-1);
    MultiPoly pw = MultiPoly::constant(nv, Rat(1));
    for (int i = 0; i < lg.a; ++i) pw *= mw;
    EqRatFunc val = lg.cls->mul_poly(pw);
    if (lg.prop) {
      MultiPoly d = *lg.prop + omegas[0];
      if (d.is_zero()) throw std::runtime_error("non-isolated orbit");
      val = val * EqRatFunc::from_factors(MultiPoly::constant(nv, Rat(1)), {{d, 1}});
    }
    return val;
  }
  // stable vertex
  std::vector<const MultiPoly*> ys;
  std::vector<int> off;
  std::vector<int> fixed_a;
  EqRatFunc clsmul = EqRatFunc::rational(nv, Rat(1));
  for (const auto& w : omegas) {
    ys.push_back(&w);
    off.push_back(0);
  }
  for (const auto& lg : legs) {
    clsmul = clsmul * (*lg.cls);
    if (clsmul.is_zero()) return clsmul;
    if (lg.prop) {
      ys.push_back(lg.prop);
      off.push_back(lg.a);
    } else {
      fixed_a.push_back(lg.a);
    }
  }
  return clsmul * stable_integral(nv, ys, off, fixed_a, m);
}

}  // namespace detail

// Vertex factor in the normalized packaging: 1/e(T_sigma) times the
// conventional factor, with every incident flag contributing e(T_sigma)
// separately. tangent_weights are the weights of T_sigma X; incident pairs
// are (orbit tangent weight omega_i, cover degree delta_i); legs are
// (class restriction at sigma, psi exponent).
inline EqRatFunc vertex_factor(
    const std::vector<MultiPoly>& tangent_weights,
    const std::vector<std::pair<MultiPoly, long>>& incident,
    const std::vector<std::pair<EqRatFunc, int>>& legs) {
  if (tangent_weights.empty())
    throw std::invalid_argument("vertex factor needs the tangent weights");
  const int nv = tangent_weights[0].nvars();
  std::vector<MultiPoly> omegas;
  omegas.reserve(incident.size());
  for (const auto& [w, delta] : incident) {
    if (delta < 1) throw std::invalid_argument("cover degree must be >= 1");
    if (w.is_zero()) throw std::runtime_error("non-isolated orbit");
    omegas.push_back(w * Rat(1, delta));
  }
  std::vector<detail::VtxLeg> vlegs;
  vlegs.reserve(legs.size());
  for (const auto& [cls, a] : legs) {
    if (a < 0) throw std::invalid_argument("psi exponent must be nonnegative");
    vlegs.push_back({&cls, a, nullptr});
  }
  std::vector<std::pair<MultiPoly, int>> efs;
  efs.reserve(tangent_weights.size());
  for (const auto& w : tangent_weights) efs.push_back({w, 1});
  EqRatFunc inv_e =
      EqRatFunc::from_factors(MultiPoly::constant(nv, Rat(1)), efs);
  return inv_e * detail::vertex_conventional(nv, omegas, vlegs);
}

// Precomputed localization data for one target.
struct Geometry {
  GitPresentation P;
  FixedPointSet fps;
  std::vector<Orbit> orbits;
  std::shared_ptr<const NovCtx> ctx;
  std::vector<std::vector<int>> orb_at;  // [s][s'] -> orbit index or -1
  std::vector<MultiPoly> euler;          // e(T_sigma)
  std::vector<EqRatFunc> euler_inv;      // 1/e(T_sigma), factored

  struct EdgeCache {
    std::map<std::pair<int, long>, EqRatFunc> map;
    std::mutex mu;
  };
  std::shared_ptr<EdgeCache> cache = std::make_shared<EdgeCache>();

  int nv() const { return P.nvars(); }
  int npts() const { return static_cast<int>(fps.pts.size()); }
};

inline Geometry make_geometry(const GitPresentation& P, long degree_bound) {
  Geometry G;
  G.P = P;
  G.fps = fixed_points(P);
  G.orbits = closed_orbits(P, G.fps);
  G.ctx = effective_classes(P, G.orbits, degree_bound);
  const int S = G.npts();
  G.orb_at.assign(S, std::vector<int>(S, -1));
  for (std::size_t i = 0; i < G.orbits.size(); ++i) {
    const Orbit& o = G.orbits[i];
    if (G.orb_at[o.s0][o.s1] != -1)
      throw std::logic_error("two closed orbits share the same endpoints");
    G.orb_at[o.s0][o.s1] = static_cast<int>(i);
    G.orb_at[o.s1][o.s0] = static_cast<int>(i);
  }
  const int nv = P.nvars();
  G.euler.reserve(S);
  G.euler_inv.reserve(S);
  for (const auto& fp : G.fps.pts) {
    G.euler.push_back(fp.euler(nv));
    std::vector<std::pair<MultiPoly, int>> fs;
    for (int rho : fp.sigma) fs.push_back({fp.w[rho], 1});
    G.euler_inv.push_back(
        EqRatFunc::from_factors(MultiPoly::constant(nv, Rat(1)), fs));
  }
  return G;
}

// Edge factor 1/(delta * E(e)): E(e) is the alternating product of nonzero
// weights of H^0 and H^1 of the pulled-back ray bundles on the degree-delta
// cover; zero weights are the trivial Euler-sequence directions and drop out.
inline EqRatFunc edge_factor(const Geometry& G, int orbit_idx, long delta) {
  if (delta < 1) throw std::invalid_argument("cover degree must be >= 1");
  {
    std::lock_guard<std::mutex> lk(G.cache->mu);
    auto it = G.cache->map.find({orbit_idx, delta});
    if (it != G.cache->map.end()) return it->second;
  }
  const Orbit& o = G.orbits.at(orbit_idx);
  const int nv = G.nv();
  const MultiPoly& omega = o.omega_at(G.fps, 0, true);
  if (omega.is_zero()) throw std::runtime_error("non-isolated orbit");
  MultiPoly varpi = omega * Rat(1, delta);
  MultiPoly num = MultiPoly::constant(nv, Rat(1, delta));
  std::vector<std::pair<MultiPoly, int>> den;
  const FixedPoint& A = G.fps.pts[o.s0];
  for (int rho = 0; rho < G.P.rays(); ++rho) {
    long D = delta * o.dray[rho];
    const MultiPoly& u = A.w[rho];
    if (D >= 0) {
      for (long k = 0; k <= D; ++k) {
        MultiPoly wt = u - varpi * Rat(k);
        if (!wt.is_zero()) den.push_back({std::move(wt), 1});
      }
    } else if (D <= -2) {
      for (long k = 1; k <= -D - 1; ++k) {
        MultiPoly wt = u + varpi * Rat(k);
        if (!wt.is_zero()) num *= wt;
      }
    }
  }
  EqRatFunc val = EqRatFunc::from_factors(std::move(num), den);
  {
    std::lock_guard<std::mutex> lk(G.cache->mu);
    G.cache->map.emplace(std::make_pair(orbit_idx, delta), val);
  }
  return val;
}

namespace detail {

struct GraphConfig {
  std::vector<int> sig;                   // vertex -> fixed point
  std::vector<std::pair<int, int>> edges; // tree edges
  std::vector<int> orb;                   // per-edge orbit index
  std::vector<long> del;                  // per-edge cover degree
  std::vector<int> legv;                  // leg -> vertex
  Rat wt;                                 // 1/v!
};

inline EqRatFunc eval_config(const Geometry& G, const GraphConfig& cfg,
                             const std::vector<Leg>& legs) {
  const int nv = G.nv();
  const int v = static_cast<int>(cfg.sig.size());
  EqRatFunc val = EqRatFunc::rational(nv, cfg.wt);
  for (std::size_t e = 0; e < cfg.edges.size(); ++e)
    val = val * edge_factor(G, cfg.orb[e], cfg.del[e]);
  for (int u = 0; u < v; ++u) {
    const int s = cfg.sig[u];
    std::vector<MultiPoly> omegas;
    for (std::size_t e = 0; e < cfg.edges.size(); ++e) {
      if (cfg.edges[e].first != u && cfg.edges[e].second != u) continue;
      const Orbit& o = G.orbits[cfg.orb[e]];
      int end = (o.s0 == s) ? 0 : 1;
      omegas.push_back(o.omega_at(G.fps, end, true) * Rat(1, cfg.del[e]));
    }
    std::vector<VtxLeg> vlegs;
    for (std::size_t j = 0; j < legs.size(); ++j)
      if (cfg.legv[j] == u)
        vlegs.push_back({&legs[j].cls[s], legs[j].a,
                         legs[j].prop ? &*legs[j].prop : nullptr});
    val = val * vertex_conventional(nv, omegas, vlegs);
    if (val.is_zero()) return val;
    const int E = static_cast<int>(omegas.size());
    if (E == 0)
      val = val * G.euler_inv[s];
    else
      for (int t = 0; t < E - 1; ++t) val = val.mul_poly(G.euler[s]);
  }
  return val;
}

}  // namespace detail

// Sum over all fixed-locus graphs of the given curve class, with the given
// marked points. For the zero class this is the single-vertex moduli sum and
// needs at least three markings.
inline EqRatFunc descendant_sum(const Geometry& G, int class_idx,
                                const std::vector<Leg>& legs, int threads = 1) {
  const int nv = G.nv();
  const int S = G.npts();
  const int L = static_cast<int>(legs.size());
  for (const auto& lg : legs) {
    if (static_cast<int>(lg.cls.size()) != S)
      throw std::invalid_argument("leg restriction list does not match the fixed points");
    if (lg.a < 0) throw std::invalid_argument("psi exponent must be nonnegative");
  }
  const CurveClass& cl = G.ctx->classes.at(class_idx);
  if (class_idx == 0) {
    if (L < 3)
      throw std::invalid_argument(
          "unstable: the degree-zero moduli needs at least 3 marked points");
    EqRatFunc total{MultiPoly(nv)};
    for (int s = 0; s < S; ++s) {
      std::vector<detail::VtxLeg> vlegs;
      vlegs.reserve(L);
      bool dead = false;
      for (const auto& lg : legs) {
        if (lg.cls[s].is_zero()) {
          dead = true;
          break;
        }
        vlegs.push_back({&lg.cls[s], lg.a, lg.prop ? &*lg.prop : nullptr});
      }
      if (dead) continue;
      total += G.euler_inv[s] * detail::vertex_conventional(nv, {}, vlegs);
    }
    return total;
  }

  std::vector<detail::GraphConfig> cfgs;
  const long d = cl.d;
  for (int v = 2; v <= d + 1; ++v) {
    Rat wt(1);
    for (long k = 2; k <= v; ++k) wt /= k;
    auto trees = detail::labeled_trees(v);
    std::vector<int> sig(v, 0);
    for (const auto& edges : trees) {
      const int ne = static_cast<int>(edges.size());
      // enumerate fixed-point assignments
      std::fill(sig.begin(), sig.end(), 0);
      for (;;) {
        std::vector<int> orb(ne);
        bool ok = true;
        for (int e = 0; e < ne && ok; ++e) {
          orb[e] = G.orb_at[sig[edges[e].first]][sig[edges[e].second]];
          if (orb[e] < 0) ok = false;
        }
        if (ok) {
          // enumerate cover degrees with exact class matching
          std::vector<long> del(ne, 1);
          auto rec = [&](auto&& self, int e, long rem) -> void {
            if (e == ne) {
              if (rem != 0) return;
              std::vector<long> bsum(G.P.r, 0);
              for (int t = 0; t < ne; ++t)
                for (int i = 0; i < G.P.r; ++i)
                  bsum[i] += del[t] * G.orbits[orb[t]].b[i];
              if (bsum != cl.b) return;
              // distribute legs over vertices, pruning dead restrictions
              std::vector<int> legv(L, 0);
              auto lrec = [&](auto&& lself, int j) -> void {
                if (j == L) {
                  cfgs.push_back({sig, edges, orb, del, legv, wt});
                  return;
                }
                for (int u = 0; u < v; ++u) {
                  if (legs[j].cls[sig[u]].is_zero()) continue;
                  legv[j] = u;
                  lself(lself, j + 1);
                }
              };
              lrec(lrec, 0);
              return;
            }
            long de = G.orbits[orb[e]].d;
            long tail = 0;
            for (int t = e + 1; t < ne; ++t) tail += G.orbits[orb[t]].d;
            for (long k = 1; k * de + tail <= rem; ++k) {
              del[e] = k;
              self(self, e + 1, rem - k * de);
            }
          };
          rec(rec, 0, d);
        }
        int i = v - 1;
        while (i >= 0 && sig[i] == S - 1) sig[i--] = 0;
        if (i < 0) break;
        ++sig[i];
      }
    }
  }
  auto vals = detail::parallel_map(
      cfgs,
      [&](const detail::GraphConfig& c) { return detail::eval_config(G, c, legs); },
      threads);
  EqRatFunc total{MultiPoly(nv)};
  for (const auto& t : vals) total += t;
  return total;
}

// Class restriction helpers.
inline std::vector<EqRatFunc> unit_class(const Geometry& G) {
  return std::vector<EqRatFunc>(G.npts(), EqRatFunc::rational(G.nv(), Rat(1)));
}

// Fixed-point class: restricts to e(T_sigma) at sigma and 0 elsewhere; its
// integral over the target is 1.
inline std::vector<EqRatFunc> point_class(const Geometry& G, int s) {
  std::vector<EqRatFunc> c(G.npts(), EqRatFunc(MultiPoly(G.nv())));
  c[s] = EqRatFunc(G.euler[s]);
  return c;
}

// Equivariant ray divisor: restriction is the canonical weight lift.
inline std::vector<EqRatFunc> ray_divisor_class(const Geometry& G, int rho) {
  std::vector<EqRatFunc> c;
  c.reserve(G.npts());
  for (const auto& fp : G.fps.pts) c.push_back(EqRatFunc(fp.w[rho]));
  return c;
}

// Descendant Gromov-Witten invariant < cls_1 psi^{a_1}, ..., cls_k psi^{a_k} >
// in the given curve class.
inline EqRatFunc descendant_invariant(
    const Geometry& G,
    const std::vector<std::pair<std::vector<EqRatFunc>, int>>& insertions,
    int class_idx, int threads = 1) {
  std::vector<Leg> legs;
  legs.reserve(insertions.size());
  for (const auto& [cls, a] : insertions) legs.push_back({cls, a, std::nullopt});
  return descendant_sum(G, class_idx, legs, threads);
}

// Restriction to one fixed point of the small J-function coefficient:
// the one-point series with the distinguished leg carrying 1/(z(z-psi)).
// The zero class contributes 1.
inline EqRatFunc small_j_restricted(const Geometry& G, int s, int class_idx,
                                    int threads = 1) {
  if (class_idx == 0) return EqRatFunc::rational(G.nv(), Rat(1));
  Leg leg{point_class(G, s), 0, G.P.zpoly()};
  EqRatFunc sum = descendant_sum(G, class_idx, {leg}, threads);
  return sum.div_poly(G.P.zpoly());
}

// Full J-function table: one Novikov series per fixed point.
inline std::vector<NovikovSeries> small_j(const Geometry& G, int threads = 1) {
  std::vector<NovikovSeries> out;
  out.reserve(G.npts());
  for (int s = 0; s < G.npts(); ++s) {
    NovikovSeries J(G.ctx, G.nv());
    for (int m = 0; m < static_cast<int>(G.ctx->classes.size()); ++m) {
      EqRatFunc c = small_j_restricted(G, s, m, threads);
      if (!c.is_zero()) J.set(m, c);
    }
    out.push_back(std::move(J));
  }
  return out;
}

// Column of the S-operator for the class gamma: per fixed point, the series
// of two-point invariants < phi_sigma / (z - psi), gamma >. The unstable
// degree-zero term is the pairing, which restricts to gamma|_sigma.
inline std::vector<NovikovSeries> s_operator_column(
    const Geometry& G, const std::vector<EqRatFunc>& gamma, int threads = 1) {
  if (static_cast<int>(gamma.size()) != G.npts())
    throw std::invalid_argument("class restriction list does not match the fixed points");
  std::vector<NovikovSeries> out;
  out.reserve(G.npts());
  for (int s = 0; s < G.npts(); ++s) {
    NovikovSeries col(G.ctx, G.nv());
    if (!gamma[s].is_zero()) col.set(0, gamma[s]);
    Leg prop{point_class(G, s), 0, G.P.zpoly()};
    Leg ins{gamma, 0, std::nullopt};
    for (int m = 1; m < static_cast<int>(G.ctx->classes.size()); ++m) {
      EqRatFunc c = descendant_sum(G, m, {prop, ins}, threads);
      if (!c.is_zero()) col.set(m, c);
    }
    out.push_back(std::move(col));
  }
  return out;
}

// Two-propagator table V_{sigma sigma'}: the series of
// < phi_sigma / (z - psi), phi_sigma' / (w - psi) > / (e_sigma e_sigma').
// The unstable degree-zero term is delta_{sigma sigma'} / (e_sigma (z + w)).
inline std::vector<std::vector<NovikovSeries>> v_table(const Geometry& G,
                                                       int threads = 1) {
  const int S = G.npts();
  const int nv = G.nv();
  MultiPoly zw = G.P.zpoly() + MultiPoly::variable(nv, G.P.wvar());
  std::vector<std::vector<NovikovSeries>> out(
      S, std::vector<NovikovSeries>(S, NovikovSeries(G.ctx, nv)));
  for (int s = 0; s < S; ++s)
    for (int t = 0; t < S; ++t) {
      NovikovSeries& V = out[s][t];
      if (s == t) {
        std::vector<std::pair<MultiPoly, int>> fs;
        for (int rho : G.fps.pts[s].sigma) fs.push_back({G.fps.pts[s].w[rho], 1});
        fs.push_back({zw, 1});
        V.set(0, EqRatFunc::from_factors(MultiPoly::constant(nv, Rat(1)), fs));
      }
      Leg pz{point_class(G, s), 0, G.P.zpoly()};
      Leg pw{point_class(G, t), 0, MultiPoly::variable(nv, G.P.wvar())};
      for (int m = 1; m < static_cast<int>(G.ctx->classes.size()); ++m) {
        EqRatFunc c = descendant_sum(G, m, {pz, pw}, threads);
        if (c.is_zero()) continue;
        V.set(m, c * G.euler_inv[s] * G.euler_inv[t]);
      }
    }
  return out;
}

}  // namespace qwc
