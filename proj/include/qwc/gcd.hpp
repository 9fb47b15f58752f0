#pragma once

/* Multivariate polynomial gcd over Q via recursive content extraction and a
   primitive pseudo-remainder sequence in the chosen main variable. Chosen for
   correctness at desk-scale degrees, not asymptotics. Results are primitive
   with positive leading coefficient; gcd of anything with a nonzero constant
   is 1. */

#include <vector>

#include "multipoly.hpp"

namespace qwc {

namespace detail {

/* Dense-by-degree view in one main variable; coefficients keep the full
   indeterminate count with the main exponent zeroed. */
using UPoly = std::vector<MultiPoly>;

inline UPoly to_upoly(const MultiPoly& p, int v) {
  UPoly u(static_cast<size_t>(std::max(p.degree_in(v), 0)) + 1,
          MultiPoly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    Expo e2 = e;
    int d = e2[v];
    e2[v] = 0;
    u[d].add_term(e2, c);
  }
  while (u.size() > 1 && u.back().is_zero()) u.pop_back();
  return u;
}

inline MultiPoly from_upoly(const UPoly& u, int v, int nvars) {
  MultiPoly p(nvars);
  for (size_t d = 0; d < u.size(); ++d) {
    if (u[d].is_zero()) continue;
    MultiPoly xv = MultiPoly::constant(nvars, Rat(1));
    if (d > 0) {
      Expo e(nvars, 0);
      e[v] = static_cast<int32_t>(d);
      xv = MultiPoly(nvars);
      xv.add_term(e, Rat(1));
    }
    p += u[d] * xv;
  }
  return p;
}

inline bool upoly_zero(const UPoly& u) {
  for (const auto& c : u)
    if (!c.is_zero()) return false;
  return true;
}

inline int upoly_deg(const UPoly& u) {
  for (int d = static_cast<int>(u.size()) - 1; d >= 0; --d)
    if (!u[d].is_zero()) return d;
  return -1;
}

}  // namespace detail

MultiPoly poly_gcd(const MultiPoly& A, const MultiPoly& B);

namespace detail {

inline MultiPoly upoly_content(const UPoly& u) {
  MultiPoly g(u.empty() ? 0 : u[0].nvars());
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

inline UPoly upoly_divide(const UPoly& u, const MultiPoly& d) {
  UPoly r = u;
  for (auto& c : r) {
    if (c.is_zero()) continue;
    auto q = c.divide_exact(d);
    if (!q) throw std::logic_error("upoly content division failed");
    c = *q;
  }
  return r;
}

/* Pseudo-remainder of a by b in the main variable; multiplies through by the
   leading coefficient of b, so only exactness up to content is kept. */
inline UPoly pseudo_rem(UPoly a, const UPoly& b, int nvars) {
  int db = upoly_deg(b);
  const MultiPoly& lb = b[db];
  int da = upoly_deg(a);
  while (da >= db && da >= 0) {
    MultiPoly t = a[da];
    for (int i = 0; i <= da; ++i) a[i] = a[i] * lb;
    for (int i = 0; i <= db; ++i) {
      a[da - db + i] -= t * b[i];
    }
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    if (a.empty()) a.push_back(MultiPoly(nvars));
    da = upoly_deg(a);
  }
  return a;
}

}  // namespace detail

inline MultiPoly poly_gcd(const MultiPoly& A, const MultiPoly& B) {
  using namespace detail;
  int nv = std::max(A.nvars(), B.nvars());
  if (A.is_zero() && B.is_zero()) return MultiPoly(nv);
  if (A.is_zero()) {
    MultiPoly g = B;
    g.make_primitive();
    return g;
  }
  if (B.is_zero()) {
    MultiPoly g = A;
    g.make_primitive();
    return g;
  }
  MultiPoly a = A, b = B;
  a.make_primitive();
  b.make_primitive();
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(nv, Rat(1));
  if (a == b) return a;
  if (a.divide_exact(b)) return b;
  if (b.divide_exact(a)) return a;

  int v = -1;
  for (int i = nv - 1; i >= 0; --i) {
    if (a.uses_var(i) && b.uses_var(i)) {
      v = i;
      break;
    }
  }
  if (v < 0) return MultiPoly::constant(nv, Rat(1));

  UPoly ua = to_upoly(a, v), ub = to_upoly(b, v);
  MultiPoly ca = upoly_content(ua), cb = upoly_content(ub);
  MultiPoly cg = poly_gcd(ca, cb);
  ua = upoly_divide(ua, ca);
  ub = upoly_divide(ub, cb);
  if (upoly_deg(ua) < upoly_deg(ub)) std::swap(ua, ub);
  while (!upoly_zero(ub)) {
    UPoly rem = pseudo_rem(ua, ub, nv);
    ua = std::move(ub);
    if (upoly_zero(rem)) {
      ub = rem;
      break;
    }
    MultiPoly cr = upoly_content(rem);
    ub = upoly_divide(rem, cr);
  }
  MultiPoly g = from_upoly(ua, v, nv);
  if (g.degree_in(v) <= 0) {
    g = cg;
  } else {
    g.make_primitive();
    g = g * cg;
    g.make_primitive();
  }
  if (g.is_zero() || g.is_constant()) return MultiPoly::constant(nv, Rat(1));
  if (!A.divide_exact(g) || !B.divide_exact(g))
    throw std::logic_error("gcd verification failed");
  return g;
}

}  // namespace qwc
