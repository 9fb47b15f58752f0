#pragma once

/* Quasimap-side closed formulas: the small I-function of a presentation,
   restricted to each fixed point, as exact rational functions of (lambda, z);
   its z-expansion parts I0/I1; epsilon-truncations and the mirror map; and
   the independent local-Grassmannian product formula used as a cross-oracle.

   Per ray the coefficient of q^beta is a telescoped two-sided product:
   positive ray degree d contributes 1/prod_{j=1..d}(w + jz), negative d
   contributes prod_{j=d+1..0}(w + jz) -- the j=0 factor w included -- and
   degree 0 contributes 1. */

#include "orbits.hpp"
#include "zseries.hpp"

namespace qwc {

namespace detail {

/* Solve A x = b exactly, any shape; nullopt when inconsistent. */
inline std::optional<std::vector<Rat>> solve_consistent(RMat A,
                                                        std::vector<Rat> b) {
  size_t m = A.size(), nc = m ? A[0].size() : 0;
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < nc && row < m; ++col) {
    size_t piv = row;
    while (piv < m && A[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(A[piv], A[row]);
    std::swap(b[piv], b[row]);
    for (size_t rr = 0; rr < m; ++rr) {
      if (rr == row || A[rr][col] == 0) continue;
      Rat f = A[rr][col] / A[row][col];
      for (size_t cc = col; cc < nc; ++cc) A[rr][cc] -= f * A[row][cc];
      b[rr] -= f * b[row];
    }
    pivot_col.push_back((int)col);
    ++row;
  }
  for (size_t rr = row; rr < m; ++rr)
    if (b[rr] != 0) return std::nullopt;
  std::vector<Rat> x(nc, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i)
    x[pivot_col[i]] = b[i] / A[i][pivot_col[i]];
  return x;
}

}  // namespace detail

inline EqRatFunc small_i_restricted(const GitPresentation& P,
                                    const FixedPoint& fp,
                                    const CurveClass& cls) {
  const int nv = P.nvars();
  MultiPoly z = P.zpoly();
  MultiPoly num = MultiPoly::constant(nv, Rat(1));
  std::vector<std::pair<MultiPoly, int>> den;
  for (int rho = 0; rho < P.rays(); ++rho) {
    long d = cls.dray[rho];
    const MultiPoly& w = fp.w[rho];
    if (d > 0) {
      for (long j = 1; j <= d; ++j) den.push_back({w + z * Rat(j), 1});
    } else if (d < 0) {
      for (long j = d + 1; j <= 0; ++j) num = num * (w + z * Rat(j));
    }
    if (num.is_zero()) return EqRatFunc(MultiPoly(nv));
  }
  return EqRatFunc::from_factors(num, den);
}

struct SmallIFunction {
  GitPresentation P;
  FixedPointSet fps;
  std::shared_ptr<const NovCtx> ctx;
  long D = 0;
  std::vector<NovikovSeries> at; /* per fixed point; coefficients in (lambda, z) */
};

inline SmallIFunction small_i(const GitPresentation& P,
                              const FixedPointSet& fps,
                              std::shared_ptr<const NovCtx> ctx) {
  SmallIFunction I;
  I.P = P;
  I.fps = fps;
  I.ctx = ctx;
  I.D = ctx->D;
  for (const auto& fp : fps.pts) {
    NovikovSeries s(ctx, P.nvars());
    for (size_t m = 0; m < ctx->classes.size(); ++m)
      s.set((int)m, small_i_restricted(P, fp, ctx->classes[m]));
    I.at.push_back(std::move(s));
  }
  return I;
}

inline SmallIFunction small_i(const GitPresentation& P, long D) {
  auto fps = fixed_points(P);
  auto orbs = closed_orbits(P, fps);
  return small_i(P, fps, effective_classes(P, orbs, D));
}

/* z-expansion parts: I0 the sigma-independent z^0 series, I1 the per-sigma
   z^{-1} series with lambda-linear coefficients. */
struct IParts {
  NovikovSeries I0;
  std::vector<NovikovSeries> I1;
};

inline IParts extract_i0_i1(const SmallIFunction& I) {
  const int nv = I.P.nvars();
  const int zv = I.P.zvar();
  for (size_t m = 0; m < I.ctx->classes.size(); ++m) {
    long c1 = 0;
    for (long d : I.ctx->classes[m].dray) c1 += d;
    if (c1 < 0)
      throw UnsupportedError(
          "not semi-positive: curve class index " + std::to_string(m) +
          " pairs negatively with the anticanonical class");
  }
  IParts out;
  out.I0 = NovikovSeries(I.ctx, nv);
  bool have0 = false;
  std::map<int, EqRatFunc> i0_seen;
  for (size_t s = 0; s < I.at.size(); ++s) {
    NovikovSeries one_sigma(I.ctx, nv);
    for (const auto& [m, c] : I.at[s].coeffs()) {
      ZSeries zc = laurent_expand(c, zv, 1);
      if (zc.lowest() < 0)
        throw UnsupportedError(
            "not semi-positive: the I-function has positive powers of z at "
            "curve class index " + std::to_string(m));
      EqRatFunc c0 = zc.coeff(0, nv);
      EqRatFunc c1 = zc.coeff(1, nv);
      auto it = i0_seen.find(m);
      if (it == i0_seen.end()) {
        i0_seen[m] = c0;
      } else if (!(it->second == c0)) {
        throw std::logic_error(
            "z^0 part of the I-function differs between fixed points");
      }
      if (!c1.is_zero()) {
        if (!c1.is_poly() || c1.num().total_degree() > 1)
          throw UnsupportedError(
              "z^{-1} part of the I-function is not a linear form; the "
              "degree bound on I1 fails for this presentation");
        one_sigma.set(m, c1);
      }
    }
    out.I1.push_back(std::move(one_sigma));
    have0 = true;
  }
  if (!have0) throw std::logic_error("no fixed points in I-function table");
  for (const auto& [m, c0] : i0_seen) out.I0.set(m, c0);
  if (!(out.I0.coeff(0) == EqRatFunc::rational(nv, Rat(1))))
    throw std::logic_error("I0 must have constant term 1");
  return out;
}

/* Expression of I1 as one global combination of the ray divisor classes:
   coefficients x_rho with sum_rho x_rho * w_rho^sigma matching I1|_sigma at
   every fixed point simultaneously. Reported per curve class; failure is a
   finding, not an error. */
struct GlobalLift {
  bool ok = true;
  std::map<int, std::optional<std::vector<Rat>>> per_class;
};

inline GlobalLift i1_global_lift(const SmallIFunction& I, const IParts& parts) {
  GlobalLift lift;
  const int N = I.P.rays();
  const int nv = I.P.nvars();
  std::set<int> classes;
  for (const auto& s : parts.I1)
    for (const auto& [m, c] : s.coeffs()) classes.insert(m);
  for (int m : classes) {
    detail::RMat A;
    std::vector<Rat> b;
    for (size_t s = 0; s < I.fps.pts.size(); ++s) {
      EqRatFunc v = parts.I1[s].coeff(m);
      if (!v.is_poly()) {
        lift.per_class[m] = std::nullopt;
        lift.ok = false;
        break;
      }
      /* one equation per lambda coefficient and one for the constant */
      for (int var = 0; var <= nv; ++var) {
        std::vector<Rat> row(N, Rat(0));
        Rat rhs(0);
        for (int rho = 0; rho < N; ++rho) {
          const MultiPoly& w = I.fps.pts[s].w[rho];
          for (const auto& [e, cf] : w.terms()) {
            int which = nv; /* constant slot */
            for (int i = 0; i < nv; ++i)
              if (e[i] == 1) which = i;
            if (which == var) row[rho] += cf;
          }
        }
        for (const auto& [e, cf] : v.num().terms()) {
          int which = nv;
          for (int i = 0; i < nv; ++i)
            if (e[i] == 1) which = i;
          if (which == var) rhs += cf;
        }
        A.push_back(row);
        b.push_back(rhs);
      }
    }
    if (lift.per_class.count(m)) continue;
    auto x = detail::solve_consistent(A, b);
    if (!x) lift.ok = false;
    lift.per_class[m] = x;
  }
  return lift;
}

/* Epsilon stability parameter: 0+, a positive rational, or infinity. */
struct Epsilon {
  enum Kind { ZeroPlus, Finite, Infinite };
  Kind kind = ZeroPlus;
  Rat value = Rat(0);

  static Epsilon zero_plus() { return {ZeroPlus, Rat(0)}; }
  static Epsilon finite(const Rat& v) {
    if (v <= 0) throw std::invalid_argument("epsilon must be positive");
    return {Finite, v};
  }
  static Epsilon infinite() { return {Infinite, Rat(0)}; }

  static Epsilon parse(const std::string& s) {
    if (s == "0+" || s == "0") return zero_plus();
    if (s == "inf" || s == "infinity" || s == "gw") return infinite();
    return finite(rat_parse(s));
  }

  /* whether classes of this theta-degree survive the truncation */
  bool keeps(long d) const {
    if (d == 0) return true;
    switch (kind) {
      case ZeroPlus: return true;
      case Infinite: return false;
      case Finite: return Rat(d) * value <= 1;
    }
    return false;
  }

  std::string str() const {
    switch (kind) {
      case ZeroPlus: return "0+";
      case Infinite: return "inf";
      case Finite: return rat_str(value);
    }
    return "?";
  }
};

struct TruncationPair {
  Epsilon eps;
  NovikovSeries J0;
  std::vector<NovikovSeries> J1;
};

inline TruncationPair truncate_i(const IParts& parts, const Epsilon& eps) {
  TruncationPair t;
  t.eps = eps;
  t.J0 = parts.I0.filter_classes([&](long d) { return eps.keeps(d); });
  for (const auto& s : parts.I1)
    t.J1.push_back(s.filter_classes([&](long d) { return eps.keeps(d); }));
  return t;
}

inline std::vector<NovikovSeries> mirror_map(const TruncationPair& pair) {
  NovikovSeries inv = pair.J0.inverse();
  std::vector<NovikovSeries> tau;
  for (const auto& s : pair.J1) tau.push_back(s * inv);
  return tau;
}

/* Independent oracle: the equivariant small I-function of the total space of
   the canonical bundle over Gr(r,n), evaluated at a fixed point given by a
   choice of r of the n torus parameters (H_i specialized to -lambda_{j_i};
   lambda0 scales the fiber). Variable universe supplied by the caller. */
struct LocalFlagI {
  int r = 0, n = 0;
  std::vector<std::vector<int>> points; /* r-subsets of {0..n-1} */
  std::shared_ptr<const NovCtx> ctx;
  std::vector<NovikovSeries> at;
};

inline LocalFlagI local_flag_i(int r, int n, long d_max, int nvars,
                               int lambda0_var,
                               const std::vector<int>& lambda_vars, int zvar) {
  if (r < 1 || r > n)
    throw std::invalid_argument("need 1 <= r <= n for the Grassmannian");
  if ((int)lambda_vars.size() != n)
    throw std::invalid_argument("need one torus parameter per column");
  LocalFlagI out;
  out.r = r;
  out.n = n;
  out.ctx = NovCtx::build(1, d_max, {CurveClass{{1}, 1, {}}});

  auto lam = [&](int j) { return MultiPoly::variable(nvars, lambda_vars[j]); };
  MultiPoly lam0 = MultiPoly::variable(nvars, lambda0_var);
  MultiPoly z = MultiPoly::variable(nvars, zvar);

  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  auto advance = [&]() {
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int k = i + 1; k < r; ++k) idx[k] = idx[k - 1] + 1;
    return true;
  };

  do {
    std::vector<MultiPoly> H(r);
    for (int i = 0; i < r; ++i) H[i] = -lam(idx[i]);
    MultiPoly sumH(nvars);
    for (int i = 0; i < r; ++i) sumH += H[i];

    NovikovSeries series = NovikovSeries::one(out.ctx, nvars);
    for (long d = 1; d <= d_max; ++d) {
      MultiPoly common = MultiPoly::constant(nvars, Rat(1));
      for (long k = 0; k < n * d; ++k)
        common = common * (sumH * Rat(-n) + lam0 - z * Rat(k));

      EqRatFunc total{MultiPoly(nvars)};
      std::vector<long> parts(r, 0);
      parts[0] = d;
      bool more = true;
      while (more) {
        MultiPoly num = MultiPoly::constant(nvars, Rat(1));
        if ((r - 1) * d % 2 == 1) num = -num;
        std::vector<std::pair<MultiPoly, int>> den;
        for (int i = 0; i < r; ++i)
          for (int j = i + 1; j < r; ++j) {
            num = num * (H[i] - H[j] + z * Rat(parts[i] - parts[j]));
            den.push_back({H[i] - H[j], 1});
          }
        for (int i = 0; i < r; ++i)
          for (long l = 1; l <= parts[i]; ++l)
            for (int j = 0; j < n; ++j)
              den.push_back({H[i] + lam(j) + z * Rat(l), 1});
        total += EqRatFunc::from_factors(num, den);

        /* next composition of d into r parts */
        more = false;
        for (int i = 0; i + 1 < r; ++i) {
          if (parts[i] > 0) {
            long rest = parts[i] - 1;
            parts[i] = 0;
            ++parts[i + 1];
            for (int k = 0; k < i; ++k) {
              rest += parts[k];
              parts[k] = 0;
            }
            parts[0] = rest;
            more = true;
            break;
          }
        }
      }
      series.set(out.ctx->find({d}), total.mul_poly(common));
    }
    out.points.push_back(idx);
    out.at.push_back(std::move(series));
  } while (advance());
  return out;
}

}  // namespace qwc
