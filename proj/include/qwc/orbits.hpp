#pragma once

/* Closed one-dimensional orbits connect fixed points whose tangent-ray sets
   differ in exactly one ray. Ray-bundle degrees on an orbit come from the
   difference of the two weight lifts divided by the tangent weight; they are
   integers, and they pin down the curve class through any unimodular basis.
   All combinatorial extraction runs on the unshifted lifts. */

#include "fixed_points.hpp"
#include "novikov.hpp"

namespace qwc {

struct Orbit {
  int s0 = 0, s1 = 0;   /* fixed point indices, s0 < s1 */
  int ray0 = 0, ray1 = 0; /* tangent ray at each end */
  std::vector<long> dray; /* ray-bundle degrees */
  std::vector<long> b;    /* curve class in Z^r */
  long d = 0;             /* theta-degree */

  /* Tangent weight of the orbit at the given end. */
  const MultiPoly& omega_at(const FixedPointSet& fps, int end, bool shifted) const {
    int s = end == 0 ? s0 : s1;
    int ray = end == 0 ? ray0 : ray1;
    return shifted ? fps.pts[s].w[ray] : fps.pts[s].w_geom[ray];
  }
};

namespace detail {

/* f = q*g for linear forms; recover the rational q. */
inline Rat linear_ratio(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return Rat(0);
  auto q = f.divide_exact(g);
  if (!q || !q->is_constant())
    throw std::logic_error("weight difference is not proportional to the "
                           "orbit tangent weight");
  return q->constant_value();
}

}  // namespace detail

inline std::vector<Orbit> closed_orbits(const GitPresentation& P,
                                        const FixedPointSet& fps) {
  const int N = P.rays(), n = P.dim();
  std::vector<Orbit> out;
  for (size_t i = 0; i < fps.pts.size(); ++i) {
    for (size_t j = i + 1; j < fps.pts.size(); ++j) {
      const FixedPoint& A = fps.pts[i];
      const FixedPoint& B = fps.pts[j];
      std::vector<int> common;
      std::set_intersection(A.sigma.begin(), A.sigma.end(), B.sigma.begin(),
                            B.sigma.end(), std::back_inserter(common));
      if ((int)common.size() != n - 1) continue;

      Orbit e;
      e.s0 = (int)i;
      e.s1 = (int)j;
      for (int rho : A.sigma)
        if (!std::binary_search(B.sigma.begin(), B.sigma.end(), rho))
          e.ray0 = rho;
      for (int rho : B.sigma)
        if (!std::binary_search(A.sigma.begin(), A.sigma.end(), rho))
          e.ray1 = rho;

      const MultiPoly& omega = A.w_geom[e.ray0];
      if (!(B.w_geom[e.ray1] == -omega))
        throw std::logic_error("orbit tangent weights at the two ends do not "
                               "cancel; weight lifts are inconsistent");

      e.dray.resize(N);
      for (int rho = 0; rho < N; ++rho) {
        Rat q = detail::linear_ratio(A.w_geom[rho] - B.w_geom[rho], omega);
        if (!is_integerq(q))
          throw std::logic_error("non-integral ray degree on a closed orbit");
        e.dray[rho] = to_long(q);
      }

      /* Solve the class from the basis rays at the first end, then check the
         remaining rays for consistency. */
      detail::RMat Mt(P.r, std::vector<Rat>(P.r));
      std::vector<Rat> rhs(P.r);
      for (int k = 0; k < P.r; ++k) {
        for (int ii = 0; ii < P.r; ++ii)
          Mt[k][ii] = Rat(P.weights[ii][A.comp[k]]);
        rhs[k] = Rat(e.dray[A.comp[k]]);
      }
      e.b = detail::to_longs(detail::rat_solve(Mt, rhs), "curve class");
      std::vector<long> check = P.ray_degrees(e.b);
      if (check != e.dray)
        throw std::logic_error("orbit ray degrees are inconsistent with any "
                               "curve class");
      e.d = P.theta_degree(e.b);
      if (e.d < 1)
        throw std::logic_error("closed orbit with non-positive theta-degree");
      out.push_back(std::move(e));
    }
  }
  return out;
}

/* Generators of the cone of curve classes the engine sums over. Explicit
   generators in the presentation win; otherwise the orbit classes serve.
   Targets with no closed orbits (a point, for instance) must say explicitly
   which classes grade the series. */
inline std::vector<CurveClass> effective_generators(
    const GitPresentation& P, const std::vector<Orbit>& orbits) {
  std::vector<CurveClass> gens;
  std::set<std::vector<long>> seen;
  auto push = [&](const std::vector<long>& b) {
    if (!seen.insert(b).second) return;
    CurveClass g;
    g.b = b;
    g.d = P.theta_degree(b);
    g.dray = P.ray_degrees(b);
    if (g.d < 1)
      throw std::invalid_argument(
          "effective generator must have positive theta-degree");
    gens.push_back(std::move(g));
  };
  if (!P.effective_generators.empty()) {
    for (const auto& b : P.effective_generators) push(b);
  } else {
    for (const auto& e : orbits) push(e.b);
  }
  if (gens.empty())
    throw std::invalid_argument(
        "no closed orbits and no effective_generators given; cannot grade "
        "the series (add \"effective_generators\" to the input)");
  return gens;
}

inline std::shared_ptr<const NovCtx> effective_classes(
    const GitPresentation& P, const std::vector<Orbit>& orbits, long D) {
  return NovCtx::build(P.r, D, effective_generators(P, orbits));
}

struct Classification {
  std::string name;
  int dim = 0;
  int torus_rank = 0;
  int n_rays = 0;
  int n_fixed = 0;
  int n_orbits = 0;
  int n_generators = 0;
  bool semi_positive = false;
  bool fano = false;
  bool orbit_classes_span = false; /* orbit classes span Z^r over Q */
};

inline Classification classify(const GitPresentation& P,
                               const FixedPointSet& fps,
                               const std::vector<Orbit>& orbits) {
  Classification c;
  c.name = P.name;
  c.dim = P.dim();
  c.torus_rank = P.r;
  c.n_rays = P.rays();
  c.n_fixed = (int)fps.pts.size();
  c.n_orbits = (int)orbits.size();
  std::vector<CurveClass> gens = effective_generators(P, orbits);
  c.n_generators = (int)gens.size();
  c.semi_positive = true;
  c.fano = true;
  for (const auto& g : gens) {
    long acdeg = 0;
    for (long dr : g.dray) acdeg += dr;
    if (acdeg < 0) c.semi_positive = false;
    if (acdeg < 1) c.fano = false;
  }
  /* rank of the orbit-class span */
  detail::RMat span;
  for (const auto& e : orbits) {
    std::vector<Rat> row(P.r);
    for (int i = 0; i < P.r; ++i) row[i] = Rat(e.b[i]);
    span.push_back(row);
  }
  int rank = 0;
  for (int col = 0; col < P.r && rank < (int)span.size(); ++col) {
    int piv = -1;
    for (int rr = rank; rr < (int)span.size(); ++rr)
      if (span[rr][col] != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) continue;
    std::swap(span[piv], span[rank]);
    for (int rr = 0; rr < (int)span.size(); ++rr) {
      if (rr == rank) continue;
      Rat f = span[rr][col] / span[rank][col];
      for (int cc = 0; cc < P.r; ++cc) span[rr][cc] -= f * span[rank][cc];
    }
    ++rank;
  }
  c.orbit_classes_span = (rank == P.r);
  return c;
}

}  // namespace qwc
