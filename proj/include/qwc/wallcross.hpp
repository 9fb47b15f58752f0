#pragma once

// Wall-crossing identity verification. Every check is exact: a cell passes
// if and only if the witness difference normalizes to the zero rational
// function. Failed preconditions yield explicit "unsupported" cells.

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphsum.hpp"
#include "ifunction.hpp"

namespace qwc {

struct VerifyCell {
  std::string sigma;        // fixed point index, pair "s,t", or "-" for global
  std::vector<long> beta;   // curve class; empty for global cells
  std::string status;       // pass | fail | unsupported
  std::string witness;      // normalized difference or reason, empty on pass
};

struct VerificationReport {
  std::string identity;
  std::string presentation;
  long degree_bound = 0;
  std::vector<VerifyCell> cells;
  long runtime_ms = 0;

  int count(const std::string& st) const {
    int n = 0;
    for (const auto& c : cells)
      if (c.status == st) ++n;
    return n;
  }
  bool all_pass() const { return count("fail") == 0 && count("unsupported") == 0; }
  bool any_fail() const { return count("fail") > 0; }
  bool any_unsupported() const { return count("unsupported") > 0; }

  nlohmann::ordered_json to_json(bool include_runtime = false) const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["preset"] = presentation;
    j["degree_bound"] = degree_bound;
    j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
      nlohmann::ordered_json cj;
      cj["sigma"] = c.sigma;
      cj["beta"] = c.beta;
      cj["status"] = c.status;
      if (!c.witness.empty()) cj["witness"] = c.witness;
      j["cells"].push_back(cj);
    }
    j["pass"] = count("pass");
    j["fail"] = count("fail");
    j["unsupported"] = count("unsupported");
    j["runtime_ms"] = include_runtime ? runtime_ms : 0;
    return j;
  }
};

namespace detail {

class StopWatch {
 public:
  StopWatch() : t0_(std::chrono::steady_clock::now()) {}
  long ms() const {
    auto dt = std::chrono::steady_clock::now() - t0_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline std::string rf_str(const EqRatFunc& f, const std::vector<std::string>& names) {
  return f.str(names);
}

inline void push_diff_cell(VerificationReport& rep, const std::string& sigma,
                           const std::vector<long>& beta, const EqRatFunc& diff,
                           const std::vector<std::string>& names) {
  if (diff.is_zero())
    rep.cells.push_back({sigma, beta, "pass", ""});
  else
    rep.cells.push_back({sigma, beta, "fail", rf_str(diff, names)});
}

// Flags classes outside the semigroup generated by the closed-orbit classes.
// No stable map carries such a "ghost" class, so identities about
// Gromov-Witten invariants are not decided there and their cells are
// reported unsupported rather than interpreted. A target with no
// one-dimensional orbits (a point) is exempt: the marked-point moduli
// themselves define every class.
inline std::vector<bool> ghost_classes(const Geometry& G) {
  const auto& cls = G.ctx->classes;
  std::vector<bool> ghost(cls.size(), false);
  if (G.orbits.empty()) return ghost;
  std::vector<std::vector<long>> gen;
  for (const auto& o : G.orbits)
    if (std::find(gen.begin(), gen.end(), o.b) == gen.end())
      gen.push_back(o.b);
  // Memoized descent: a class is reachable when subtracting some orbit class
  // lands on a reachable class. Orbit classes have positive theta-degree, so
  // the recursion strictly decreases degree and cannot cycle.
  std::vector<int> state(cls.size(), -1);
  std::function<bool(int)> reach = [&](int m) -> bool {
    if (state[m] >= 0) return state[m] == 1;
    bool ok = cls[m].d == 0;
    for (size_t gi = 0; !ok && gi < gen.size(); ++gi) {
      std::vector<long> rem(G.P.r);
      for (int k = 0; k < G.P.r; ++k) rem[k] = cls[m].b[k] - gen[gi][k];
      int i = G.ctx->find(rem);
      ok = i >= 0 && reach(i);
    }
    state[m] = ok ? 1 : 0;
    return ok;
  };
  for (size_t m = 0; m < cls.size(); ++m)
    ghost[m] = !reach(static_cast<int>(m));
  return ghost;
}

inline void push_ghost_cell(VerificationReport& rep, const std::string& sigma,
                            const std::vector<long>& beta) {
  rep.cells.push_back(
      {sigma, beta, "unsupported",
       "ghost Novikov direction: the class is not generated by closed-orbit "
       "classes, so no stable maps realize it"});
}

}  // namespace detail

// Named insertion classes available to the property checks: the unit, the
// fixed-point classes, and the ray divisors.
struct InsertionPool {
  std::vector<std::string> names;
  std::vector<std::vector<EqRatFunc>> cls;

  static InsertionPool make(const Geometry& G) {
    InsertionPool p;
    p.names.push_back("1");
    p.cls.push_back(unit_class(G));
    for (int s = 0; s < G.npts(); ++s) {
      p.names.push_back("phi" + std::to_string(s));
      p.cls.push_back(point_class(G, s));
    }
    for (int rho = 0; rho < G.P.rays(); ++rho) {
      p.names.push_back("D" + std::to_string(rho));
      p.cls.push_back(ray_divisor_class(G, rho));
    }
    return p;
  }
};

namespace detail {

// Insertion indices for a property instance: the canonical choice for seed 0,
// a seeded uniform draw otherwise. Identical seeds give identical instances.
inline std::vector<int> pick_insertions(const InsertionPool& pool, int count,
                                        unsigned seed,
                                        const std::vector<int>& canonical) {
  if (seed == 0) return canonical;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.cls.size()) - 1);
  std::vector<int> out(count);
  for (int& i : out) i = pick(rng);
  return out;
}

inline std::string instance_label(const InsertionPool& pool,
                                  const std::vector<int>& idx) {
  std::string s;
  for (size_t i = 0; i < idx.size(); ++i)
    s += (i ? "," : "") + pool.names[idx[i]];
  return s;
}

}  // namespace detail

// Export of engine invariants as JSON rows {beta, insertions, value}: one
// row per effective class for the given insertion tuple. Each insertion is
// a pool index with a psi power; unstable zero-class rows (fewer than three
// marked points) are omitted rather than given a conventional value.
inline nlohmann::ordered_json invariant_table_json(
    const Geometry& G, const InsertionPool& pool,
    const std::vector<std::pair<int, int>>& insertions, int threads = 1) {
  std::vector<std::pair<std::vector<EqRatFunc>, int>> ins;
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (const auto& [idx, a] : insertions) {
    ins.emplace_back(pool.cls.at(idx), a);
    std::string lab = pool.names.at(idx);
    if (a > 0) lab += " psi^" + std::to_string(a);
    labels.push_back(lab);
  }
  auto names = G.P.var_names();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t m = 0; m < G.ctx->classes.size(); ++m) {
    if (G.ctx->classes[m].d == 0 && ins.size() < 3) continue;
    EqRatFunc v = descendant_invariant(G, ins, static_cast<int>(m), threads);
    nlohmann::ordered_json row;
    row["beta"] = G.ctx->classes[m].b;
    row["insertions"] = labels;
    row["value"] = v.str(names);
    rows.push_back(std::move(row));
  }
  return rows;
}

// The mirror-transformed J-function: per fixed point, the series
//   1 + shift/z + sum over stable one-pointed graph sums whose extra legs
//   each carry a graded coefficient of the shift.
// The shift must have zero constant term, so the leg count is bounded by the
// degree and the sum is finite.
inline std::vector<NovikovSeries> mirror_transform_j(
    const Geometry& G, const std::vector<NovikovSeries>& shift, int threads = 1) {
  const int S = G.npts();
  const int nv = G.nv();
  const int nc = static_cast<int>(G.ctx->classes.size());
  if (static_cast<int>(shift.size()) != S)
    throw std::invalid_argument("shift list does not match the fixed points");
  for (const auto& s : shift)
    if (!s.coeff(0).is_zero())
      throw std::invalid_argument("mirror shift must have zero constant term");

  std::vector<NovikovSeries> out;
  out.reserve(S);
  for (int s = 0; s < S; ++s) {
    NovikovSeries J(G.ctx, nv);
    J.set(0, EqRatFunc::rational(nv, Rat(1)));
    Leg dist{point_class(G, s), 0, G.P.zpoly()};
    for (int t = 1; t < nc; ++t) {
      const CurveClass& target = G.ctx->classes[t];
      EqRatFunc acc = shift[s].coeff(t);  // the unstable two-point term
      // ordered tuples of nonzero shift classes, weighted by 1/m!
      std::vector<int> tuple;
      Rat mfact(1);
      std::vector<Leg> legs = {dist};
      auto rec = [&](auto&& self) -> void {
        long dsum = 0;
        std::vector<long> bsum(G.P.r, 0);
        for (int i : tuple) {
          dsum += G.ctx->classes[i].d;
          for (int k = 0; k < G.P.r; ++k) bsum[k] += G.ctx->classes[i].b[k];
        }
        std::vector<long> rem(G.P.r);
        for (int k = 0; k < G.P.r; ++k) rem[k] = target.b[k] - bsum[k];
        int i0 = G.ctx->find(rem);
        const int m = static_cast<int>(tuple.size());
        if (i0 >= 0 && (i0 != 0 || m + 1 >= 3)) {
          EqRatFunc v = descendant_sum(G, i0, legs, threads);
          if (!v.is_zero()) acc += v * (Rat(1) / mfact);
        }
        // extend the tuple
        for (int j = 1; j < nc; ++j) {
          if (dsum + G.ctx->classes[j].d > target.d) continue;
          std::vector<EqRatFunc> cls;
          cls.reserve(S);
          bool dead = true;
          for (int u = 0; u < S; ++u) {
            cls.push_back(shift[u].coeff(j));
            if (!cls.back().is_zero()) dead = false;
          }
          if (dead) continue;
          tuple.push_back(j);
          legs.push_back({std::move(cls), 0, std::nullopt});
          mfact *= static_cast<long>(tuple.size());
          self(self);
          mfact /= static_cast<long>(tuple.size());
          legs.pop_back();
          tuple.pop_back();
        }
      };
      rec(rec);
      if (!acc.is_zero()) J.set(t, acc.div_poly(G.P.zpoly()));
    }
    out.push_back(std::move(J));
  }
  return out;
}

// Mirror theorem: the mirror-transformed J-function equals the small
// I-function, coefficient by coefficient, as exact rational functions.
// Needs the semi-positive I0 = 1 normalization; anything else is reported
// as unsupported, never guessed at.
inline VerificationReport verify_i_equals_j(const GitPresentation& P, long D,
                                            int threads = 1) {
  detail::StopWatch sw;
  VerificationReport rep{"i-equals-j", P.name, D, {}, 0};
  auto names = P.var_names();
  try {
    Geometry G = make_geometry(P, D);
    auto ghost = detail::ghost_classes(G);
    SmallIFunction I = small_i(P, G.fps, G.ctx);
    IParts parts = extract_i0_i1(I);
    auto J = mirror_transform_j(G, parts.I1, threads);
    for (int s = 0; s < G.npts(); ++s)
      for (int t = 0; t < static_cast<int>(G.ctx->classes.size()); ++t) {
        if (ghost[t]) {
          detail::push_ghost_cell(rep, std::to_string(s), G.ctx->classes[t].b);
          continue;
        }
        detail::push_diff_cell(rep, std::to_string(s), G.ctx->classes[t].b,
                               J[s].coeff(t) - I.at[s].coeff(t), names);
      }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Truncation consistency: the epsilon-truncated theory predicted by
//   J0 * J(q, mirror-map of the truncation, z)
// agrees with the small I-function in every degree d(beta) <= 1/epsilon.
inline VerificationReport verify_truncation_consistency(const GitPresentation& P,
                                                        const Epsilon& eps, long D,
                                                        int threads = 1) {
  detail::StopWatch sw;
  VerificationReport rep{"truncation", P.name, D, {}, 0};
  auto names = P.var_names();
  try {
    Geometry G = make_geometry(P, D);
    auto ghost = detail::ghost_classes(G);
    SmallIFunction I = small_i(P, G.fps, G.ctx);
    IParts parts = extract_i0_i1(I);
    TruncationPair tr = truncate_i(parts, eps);
    auto tau = mirror_map(tr);
    auto J = mirror_transform_j(G, tau, threads);
    for (int s = 0; s < G.npts(); ++s) {
      NovikovSeries pred = tr.J0 * J[s];
      for (int t = 0; t < static_cast<int>(G.ctx->classes.size()); ++t) {
        const CurveClass& cl = G.ctx->classes[t];
        if (!eps.keeps(cl.d)) continue;  // outside the validity range
        if (ghost[t]) {
          detail::push_ghost_cell(rep, std::to_string(s), cl.b);
          continue;
        }
        detail::push_diff_cell(rep, std::to_string(s), cl.b,
                               pred.coeff(t) - I.at[s].coeff(t), names);
      }
    }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Two-pointed factorization: for every pair of fixed points,
//   e_s e_t (z + w) V_{s t} = sum_mu S_z(phi_mu)|_s S_w(phi_mu)|_t / e_mu.
inline VerificationReport verify_v_s(const GitPresentation& P, long D,
                                     int threads = 1) {
  detail::StopWatch sw;
  VerificationReport rep{"v-s", P.name, D, {}, 0};
  auto names = P.var_names();
  try {
    Geometry G = make_geometry(P, D);
    const int S = G.npts();
    const int nv = G.nv();
    const int nc = static_cast<int>(G.ctx->classes.size());
    auto V = v_table(G, threads);

    std::vector<int> perm(nv);
    for (int i = 0; i < nv; ++i) perm[i] = i;
    perm[P.zvar()] = P.wvar();
    perm[P.wvar()] = P.zvar();

    std::vector<std::vector<NovikovSeries>> Sz, Sw;
    for (int mu = 0; mu < S; ++mu) {
      auto col = s_operator_column(G, point_class(G, mu), threads);
      std::vector<NovikovSeries> colw;
      for (const auto& series : col) {
        NovikovSeries sw_series(G.ctx, nv);
        for (int t = 0; t < nc; ++t) {
          EqRatFunc c = series.coeff(t);
          if (!c.is_zero()) sw_series.set(t, c.permute_vars(perm));
        }
        colw.push_back(std::move(sw_series));
      }
      Sz.push_back(std::move(col));
      Sw.push_back(std::move(colw));
    }

    MultiPoly zw = P.zpoly() + MultiPoly::variable(nv, P.wvar());
    auto ghost = detail::ghost_classes(G);
    for (int s = 0; s < S; ++s)
      for (int t = 0; t < S; ++t) {
        NovikovSeries lhs =
            V[s][t] * EqRatFunc(G.euler[s] * G.euler[t] * zw);
        NovikovSeries rhs(G.ctx, nv);
        for (int mu = 0; mu < S; ++mu)
          rhs = rhs + Sz[mu][s] * Sw[mu][t] * G.euler_inv[mu];
        for (int m = 0; m < nc; ++m) {
          std::string key = std::to_string(s) + "," + std::to_string(t);
          if (ghost[m]) {
            detail::push_ghost_cell(rep, key, G.ctx->classes[m].b);
            continue;
          }
          detail::push_diff_cell(rep, key, G.ctx->classes[m].b,
                                 lhs.coeff(m) - rhs.coeff(m), names);
        }
      }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Point-target wall-crossing in closed form. The quasimap side reduces along
// the Hassett contraction to a multinomial psi-integral divided by d!; the
// stable-map side is the engine's moduli sum with d extra unit legs. The
// left side is evaluated by the independent string-equation recursion.
inline VerificationReport point_wallcross_check(int k, const std::vector<int>& a,
                                                long d) {
  detail::StopWatch sw;
  VerificationReport rep{"point-wallcross", "point", d, {}, 0};
  if (static_cast<int>(a.size()) != k)
    throw std::invalid_argument("exponent list does not match the marking count");
  for (int x : a)
    if (x < 0) throw std::invalid_argument("psi exponent must be nonnegative");
  if (d < 0) throw std::invalid_argument("degree must be nonnegative");
  std::string key;
  for (int i = 0; i < k; ++i) key += (i ? "," : "") + std::to_string(a[i]);
  if (k < 3) {
    rep.cells.push_back({key, {d}, "unsupported",
                         "fewer than three markings: unstable on the map side"});
    rep.runtime_ms = sw.ms();
    return rep;
  }
  Rat dfact(1);
  for (long t = 2; t <= d; ++t) dfact *= t;

  std::vector<int> ext = a;
  ext.resize(k + d, 0);
  Rat lhs = psi_integral_recursive(ext) / dfact;

  GitPresentation P = GitPresentation::preset("point");
  Geometry G = make_geometry(P, d >= 1 ? d : 1);
  std::vector<std::pair<std::vector<EqRatFunc>, int>> ins;
  for (int x : a) ins.push_back({unit_class(G), x});
  for (long t = 0; t < d; ++t) ins.push_back({unit_class(G), 0});
  EqRatFunc rhs = descendant_invariant(G, ins, 0) * (Rat(1) / dfact);
  EqRatFunc diff = rhs - EqRatFunc::rational(G.nv(), lhs);
  detail::push_diff_cell(rep, key, {d}, diff, P.var_names());
  rep.runtime_ms = sw.ms();
  return rep;
}

// Sweep every admissible exponent vector for all k <= kmax, d <= dmax.
inline VerificationReport point_wallcross_sweep(int kmax, long dmax) {
  detail::StopWatch sw;
  VerificationReport rep{"point-wallcross", "point", dmax, {}, 0};
  for (int k = 3; k <= kmax; ++k)
    for (long d = 0; d <= dmax; ++d) {
      long need = k + d - 3;
      std::vector<int> a(k, 0);
      a[0] = static_cast<int>(need);
      for (;;) {
        VerificationReport one = point_wallcross_check(k, a, d);
        for (auto& c : one.cells) rep.cells.push_back(std::move(c));
        // next composition of `need` into k parts
        int i = 0;
        while (i < k - 1 && a[i] == 0) ++i;
        if (i == k - 1) break;
        int rest = a[i] - 1;
        a[i] = 0;
        ++a[i + 1];
        for (int t = 0; t < i; ++t) {
          rest += a[t];
          a[t] = 0;
        }
        a[0] = rest;
      }
    }
  rep.runtime_ms = sw.ms();
  return rep;
}

// String equation per curve class: < g1 psi, g2, 1 > = < g1, g2 >.
// Seed 0 takes the canonical fixed-point insertions; a nonzero seed draws the
// insertions uniformly from the pool, deterministically per seed.
inline VerificationReport verify_string(const GitPresentation& P, long D,
                                        int threads = 1, unsigned seed = 0) {
  detail::StopWatch sw;
  VerificationReport rep{"string", P.name, D, {}, 0};
  auto names = P.var_names();
  try {
    Geometry G = make_geometry(P, D);
    InsertionPool pool = InsertionPool::make(G);
    int x = G.npts() > 1 ? 2 : 1;  // phi_0, phi_x in the pool ordering
    auto idx = detail::pick_insertions(pool, 2, seed, {1, x});
    std::string label = detail::instance_label(pool, idx);
    const auto& g1 = pool.cls[idx[0]];
    const auto& g2 = pool.cls[idx[1]];
    auto ghost = detail::ghost_classes(G);
    for (int t = 1; t < static_cast<int>(G.ctx->classes.size()); ++t) {
      if (ghost[t]) {
        detail::push_ghost_cell(rep, label, G.ctx->classes[t].b);
        continue;
      }
      EqRatFunc lhs = descendant_invariant(
          G, {{g1, 1}, {g2, 0}, {unit_class(G), 0}}, t, threads);
      EqRatFunc rhs = descendant_invariant(G, {{g1, 0}, {g2, 0}}, t, threads);
      detail::push_diff_cell(rep, label, G.ctx->classes[t].b, lhs - rhs, names);
    }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Dilaton equation per curve class, three markings present:
// < g1, g2, g3, psi > = (3 - 2) < g1, g2, g3 >.
inline VerificationReport verify_dilaton(const GitPresentation& P, long D,
                                         int threads = 1, unsigned seed = 0) {
  detail::StopWatch sw;
  VerificationReport rep{"dilaton", P.name, D, {}, 0};
  auto names = P.var_names();
  try {
    Geometry G = make_geometry(P, D);
    InsertionPool pool = InsertionPool::make(G);
    int x = G.npts() > 1 ? 2 : 1;
    auto idx = detail::pick_insertions(pool, 3, seed, {1, x, 0});
    std::string label = detail::instance_label(pool, idx);
    const auto& g1 = pool.cls[idx[0]];
    const auto& g2 = pool.cls[idx[1]];
    const auto& g3 = pool.cls[idx[2]];
    auto ghost = detail::ghost_classes(G);
    for (int t = 0; t < static_cast<int>(G.ctx->classes.size()); ++t) {
      if (ghost[t]) {
        detail::push_ghost_cell(rep, label, G.ctx->classes[t].b);
        continue;
      }
      EqRatFunc lhs = descendant_invariant(
          G, {{g1, 0}, {g2, 0}, {g3, 0}, {unit_class(G), 1}}, t, threads);
      EqRatFunc rhs = descendant_invariant(
          G, {{g1, 0}, {g2, 0}, {g3, 0}}, t, threads);
      detail::push_diff_cell(rep, label, G.ctx->classes[t].b, lhs - rhs, names);
    }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Divisor equation per nonzero curve class, no descendants:
// < D_rho, g1, g2 > = (D_rho . beta) < g1, g2 >.
inline VerificationReport verify_divisor(const GitPresentation& P, long D,
                                         int threads = 1, unsigned seed = 0) {
  detail::StopWatch sw;
  VerificationReport rep{"divisor", P.name, D, {}, 0};
  auto names = P.var_names();
  try {
    Geometry G = make_geometry(P, D);
    InsertionPool pool = InsertionPool::make(G);
    int x = G.npts() > 1 ? 2 : 1;
    auto idx = detail::pick_insertions(pool, 2, seed, {1, x});
    int rho = 0;
    if (seed != 0) {
      std::mt19937 rng(seed + 1);
      rho = std::uniform_int_distribution<int>(0, G.P.rays() - 1)(rng);
    }
    std::string label =
        "D" + std::to_string(rho) + ";" + detail::instance_label(pool, idx);
    const auto& g1 = pool.cls[idx[0]];
    const auto& g2 = pool.cls[idx[1]];
    auto ghost = detail::ghost_classes(G);
    for (int t = 1; t < static_cast<int>(G.ctx->classes.size()); ++t) {
      if (ghost[t]) {
        detail::push_ghost_cell(rep, label, G.ctx->classes[t].b);
        continue;
      }
      EqRatFunc lhs = descendant_invariant(
          G, {{ray_divisor_class(G, rho), 0}, {g1, 0}, {g2, 0}}, t, threads);
      EqRatFunc rhs = descendant_invariant(G, {{g1, 0}, {g2, 0}}, t, threads) *
                      Rat(G.ctx->classes[t].dray[rho]);
      detail::push_diff_cell(rep, label, G.ctx->classes[t].b, lhs - rhs, names);
    }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Topological recursion per nonzero class:
// < g1 psi, g2, g3 > = sum over splittings with a nonzero first part of
// < g1, phi_mu > (1/e_mu) < phi_mu, g2, g3 >.
inline VerificationReport verify_trr(const GitPresentation& P, long D,
                                     int threads = 1, unsigned seed = 0) {
  detail::StopWatch sw;
  VerificationReport rep{"trr", P.name, D, {}, 0};
  auto names = P.var_names();
  try {
    Geometry G = make_geometry(P, D);
    const int nv = G.nv();
    InsertionPool pool = InsertionPool::make(G);
    int x = G.npts() > 1 ? 2 : 1;
    auto idx = detail::pick_insertions(pool, 3, seed, {1, x, x});
    std::string label = detail::instance_label(pool, idx);
    const auto& g1 = pool.cls[idx[0]];
    const auto& g2 = pool.cls[idx[1]];
    const auto& g3 = pool.cls[idx[2]];
    auto ghost = detail::ghost_classes(G);
    for (int t = 1; t < static_cast<int>(G.ctx->classes.size()); ++t) {
      const CurveClass& cl = G.ctx->classes[t];
      if (ghost[t]) {
        detail::push_ghost_cell(rep, label, cl.b);
        continue;
      }
      EqRatFunc lhs = descendant_invariant(
          G, {{g1, 1}, {g2, 0}, {g3, 0}}, t, threads);
      EqRatFunc rhs{MultiPoly(nv)};
      for (int t1 = 1; t1 < static_cast<int>(G.ctx->classes.size()); ++t1) {
        const CurveClass& c1 = G.ctx->classes[t1];
        std::vector<long> rem(G.P.r);
        for (int i = 0; i < G.P.r; ++i) rem[i] = cl.b[i] - c1.b[i];
        int t2 = G.ctx->find(rem);
        if (t2 < 0) continue;
        for (int mu = 0; mu < G.npts(); ++mu) {
          EqRatFunc first = descendant_invariant(
              G, {{g1, 0}, {point_class(G, mu), 0}}, t1, threads);
          if (first.is_zero()) continue;
          EqRatFunc second = descendant_invariant(
              G, {{point_class(G, mu), 0}, {g2, 0}, {g3, 0}}, t2, threads);
          rhs += first * G.euler_inv[mu] * second;
        }
      }
      detail::push_diff_cell(rep, label, cl.b, lhs - rhs, names);
    }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Semi-positive normalization: the z^0 part of the small I-function is the
// constant 1.
inline VerificationReport verify_i0_lemma(const GitPresentation& P, long D) {
  detail::StopWatch sw;
  VerificationReport rep{"i0-lemma", P.name, D, {}, 0};
  try {
    SmallIFunction I = small_i(P, D);
    IParts parts = extract_i0_i1(I);
    for (int t = 0; t < static_cast<int>(I.ctx->classes.size()); ++t) {
      EqRatFunc c = parts.I0.coeff(t);
      EqRatFunc want = t == 0 ? EqRatFunc::rational(P.nvars(), Rat(1))
                              : EqRatFunc{MultiPoly(P.nvars())};
      detail::push_diff_cell(rep, "-", I.ctx->classes[t].b, c - want,
                             P.var_names());
    }
  } catch (const UnsupportedError& e) {
    rep.cells.push_back({"-", {}, "unsupported", e.what()});
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

// Genus-one constant shift (chi_top / 24) log J0. Computed, not verified:
// there is no independent genus-one engine here.
inline NovikovSeries genus1_shift(const GitPresentation& P, const Epsilon& eps,
                                  long D) {
  SmallIFunction I = small_i(P, D);
  IParts parts = extract_i0_i1(I);
  TruncationPair tr = truncate_i(parts, eps);
  long chi = static_cast<long>(I.fps.pts.size());
  return tr.J0.log() * Rat(chi, 24);
}

}  // namespace qwc
