#pragma once

/* Torus-fixed points of the quotient. A fixed point is a size-r coordinate
   subset whose weight columns form a basis writing theta with strictly
   positive coefficients; smoothness requires that basis to be unimodular.
   Each fixed point carries one global linear lift of every ray weight: the
   lift vanishes on the basis ("complement") rays, so tangent weights are the
   lifts of the remaining rays and weight differences between fixed points
   are honest orbit data. */

#include "presentation.hpp"

namespace qwc {

namespace detail {

/* Exact dense linear algebra over Q, at the tiny sizes that show up here. */
using RMat = std::vector<std::vector<Rat>>;

inline Rat rat_det(RMat m) {
  int n = (int)m.size();
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int rr = c; rr < n; ++rr)
      if (m[rr][c] != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int rr = c + 1; rr < n; ++rr) {
      Rat f = m[rr][c] / m[c][c];
      for (int cc = c; cc < n; ++cc) m[rr][cc] -= f * m[c][cc];
    }
  }
  return det;
}

/* Solve m x = b; m must be square nonsingular. */
inline std::vector<Rat> rat_solve(RMat m, std::vector<Rat> b) {
  int n = (int)m.size();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int rr = c; rr < n; ++rr)
      if (m[rr][c] != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) throw std::logic_error("singular system");
    if (piv != c) {
      std::swap(m[piv], m[c]);
      std::swap(b[piv], b[c]);
    }
    for (int rr = 0; rr < n; ++rr) {
      if (rr == c) continue;
      Rat f = m[rr][c] / m[c][c];
      if (f == 0) continue;
      for (int cc = c; cc < n; ++cc) m[rr][cc] -= f * m[c][cc];
      b[rr] -= f * b[c];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

inline std::vector<long> to_longs(const std::vector<Rat>& v, const char* what) {
  std::vector<long> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!is_integerq(v[i]))
      throw std::logic_error(std::string(what) + ": expected an integer");
    out[i] = to_long(v[i]);
  }
  return out;
}

}  // namespace detail

struct FixedPoint {
  std::vector<int> sigma;          /* tangent rays, sorted */
  std::vector<int> comp;           /* basis rays, sorted, size r */
  std::vector<long> theta_coords;  /* positive coordinates of theta in the basis */
  std::vector<MultiPoly> w;        /* per-ray weight lift, lambda shift applied */
  std::vector<MultiPoly> w_geom;   /* per-ray weight lift, unshifted */

  MultiPoly euler(int nvars) const {
    MultiPoly e = MultiPoly::constant(nvars, Rat(1));
    for (int rho : sigma) e = e * w[rho];
    return e;
  }
};

struct FixedPointSet {
  std::vector<FixedPoint> pts;

  int index_of_sigma(const std::vector<int>& sigma) const {
    for (size_t i = 0; i < pts.size(); ++i)
      if (pts[i].sigma == sigma) return (int)i;
    return -1;
  }
};

inline FixedPointSet fixed_points(const GitPresentation& P) {
  P.validate();
  const int N = P.rays(), r = P.r;
  FixedPointSet out;
  std::vector<Rat> shift = P.full_shift();

  std::vector<int> comb(r);
  for (int i = 0; i < r; ++i) comb[i] = i;
  auto advance = [&]() {
    int i = r - 1;
    while (i >= 0 && comb[i] == N - r + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };

  do {
    detail::RMat M(r, std::vector<Rat>(r));
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k) M[i][k] = Rat(P.weights[i][comb[k]]);
    Rat det = detail::rat_det(M);
    if (det == 0) continue;

    std::vector<Rat> th(r);
    for (int i = 0; i < r; ++i) th[i] = Rat(P.theta[i]);
    std::vector<Rat> c = detail::rat_solve(M, th);
    bool inside = true, on_wall = false;
    for (const Rat& ci : c) {
      if (ci < 0) inside = false;
      if (ci == 0) on_wall = true;
    }
    if (!inside) continue;
    /* Both conditions contradict the presentation's own invariants
       (semistable = stable; nonsingular quotient), so the input is
       rejected as invalid rather than deferred as unsupported. */
    if (on_wall)
      throw std::invalid_argument(
          "stability character lies on a wall of the GIT fan");
    if (det != 1 && det != -1)
      throw std::invalid_argument(
          "quotient has an orbifold fixed point (non-unimodular basis at "
          "coordinates of positive stability weight)");

    FixedPoint fp;
    fp.comp.assign(comb.begin(), comb.end());
    fp.theta_coords = detail::to_longs(c, "theta coordinates");
    for (int rho = 0; rho < N; ++rho)
      if (!std::binary_search(fp.comp.begin(), fp.comp.end(), rho))
        fp.sigma.push_back(rho);

    fp.w_geom.assign(N, MultiPoly(P.nvars()));
    for (int rho : fp.sigma) {
      std::vector<Rat> col(r);
      for (int i = 0; i < r; ++i) col[i] = Rat(P.weights[i][rho]);
      std::vector<long> a =
          detail::to_longs(detail::rat_solve(M, col), "weight lift");
      MultiPoly wf = P.lambda(rho);
      for (int k = 0; k < r; ++k)
        if (a[k] != 0) wf -= P.lambda(fp.comp[k]) * Rat(a[k]);
      fp.w_geom[rho] = wf;
    }
    fp.w = fp.w_geom;
    if (P.has_shift())
      for (auto& wf : fp.w) wf = wf.shift_vars(shift);
    out.pts.push_back(std::move(fp));
  } while (advance());

  if (out.pts.empty())
    throw std::invalid_argument(
        "no torus-fixed points: the semistable locus is empty for this "
        "stability character");
  return out;
}

}  // namespace qwc
