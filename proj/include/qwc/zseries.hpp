#pragma once

/* Truncated Laurent expansions around z = infinity: finitely many coefficients
   of z^{-k}, k up to an inclusive truncation order, with finitely many k < 0
   entries allowed (positive powers of z). Coefficients are z-free rational
   functions in the remaining indeterminates. */

#include <map>

#include "ratfunc.hpp"

namespace qwc {

class ZSeries {
 public:
  ZSeries() : zvar_(0), order_(0) {}
  ZSeries(int zvar, int order) : zvar_(zvar), order_(order) {}

  int order() const { return order_; }
  int zvar() const { return zvar_; }
  const std::map<int, EqRatFunc>& coeffs() const { return c_; }

  void set(int k, const EqRatFunc& v) {
    if (k > order_) return;
    if (v.is_zero())
      c_.erase(k);
    else
      c_[k] = v;
  }

  EqRatFunc coeff(int k, int nvars) const {
    auto it = c_.find(k);
    if (it != c_.end()) return it->second;
    return EqRatFunc(MultiPoly(nvars));
  }

  bool is_zero() const { return c_.empty(); }

  /* Smallest k with nonzero coefficient; order+1 when empty. */
  int lowest() const { return c_.empty() ? order_ + 1 : c_.begin()->first; }

  ZSeries operator+(const ZSeries& o) const {
    ZSeries r(zvar_, std::min(order_, o.order_));
    for (const auto& [k, v] : c_) r.set(k, v);
    for (const auto& [k, v] : o.c_) {
      auto cur = r.c_.find(k);
      if (cur == r.c_.end())
        r.set(k, v);
      else {
        EqRatFunc s = cur->second + v;
        r.set(k, s);
        if (s.is_zero()) r.c_.erase(k);
      }
    }
    return r;
  }

  ZSeries operator-(const ZSeries& o) const {
    ZSeries neg = o;
    for (auto& [k, v] : neg.c_) v = -v;
    return *this + neg;
  }

  /* Truncated product. A factor with negative-k entries (positive z powers)
     shortens the reliable order accordingly, matching the series contract. */
  ZSeries operator*(const ZSeries& o) const {
    int lo_a = std::min(lowest(), 0), lo_b = std::min(o.lowest(), 0);
    ZSeries r(zvar_, std::min(order_ + lo_b, o.order_ + lo_a));
    for (const auto& [ka, va] : c_)
      for (const auto& [kb, vb] : o.c_) {
        if (ka + kb > r.order_) continue;
        EqRatFunc prod = va * vb;
        auto it = r.c_.find(ka + kb);
        if (it == r.c_.end()) {
          if (!prod.is_zero()) r.c_[ka + kb] = prod;
        } else {
          it->second += prod;
          if (it->second.is_zero()) r.c_.erase(it);
        }
      }
    return r;
  }

  bool operator==(const ZSeries& o) const {
    int ord = std::min(order_, o.order_);
    for (const auto& [k, v] : c_) {
      if (k > ord) continue;
      auto it = o.c_.find(k);
      if (it == o.c_.end() || !(it->second == v)) return false;
    }
    for (const auto& [k, v] : o.c_) {
      if (k > ord) continue;
      if (c_.find(k) == c_.end()) return false;
    }
    return true;
  }
  bool operator!=(const ZSeries& o) const { return !(*this == o); }

  std::string str(const std::vector<std::string>& names) const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : c_) {
      if (!s.empty()) s += " + ";
      s += "[" + v.str(names) + "]";
      if (k > 0) s += "*zinv^" + std::to_string(k);
      if (k < 0) s += "*z^" + std::to_string(-k);
    }
    return s + " + O(zinv^" + std::to_string(order_ + 1) + ")";
  }

 private:
  int zvar_;
  int order_;
  std::map<int, EqRatFunc> c_;
};

/* Expand num/den in powers of 1/z up to the inclusive order. Requires a
   denominator whose leading z-coefficient is nonzero, which always holds for
   a nonzero denominator; that coefficient is inverted in the z-free field. */
inline ZSeries laurent_expand(const EqRatFunc& f, int zvar, int order) {
  ZSeries out(zvar, order);
  if (f.is_zero()) return out;
  const int nv = f.num().nvars();
  auto nc = f.num().coeffs_in(zvar);
  auto dc = f.den().coeffs_in(zvar);
  const int a = nc.rbegin()->first;
  const int b = dc.rbegin()->first;
  /* P, Q in zeta = 1/z, ascending */
  const int T = order + a - b;
  if (T < 0) return out;
  std::vector<MultiPoly> P(static_cast<size_t>(a) + 1, MultiPoly(nv));
  std::vector<MultiPoly> Q(static_cast<size_t>(b) + 1, MultiPoly(nv));
  for (const auto& [d, c] : nc) P[a - d] = c;
  for (const auto& [d, c] : dc) Q[b - d] = c;
  std::vector<EqRatFunc> cs(static_cast<size_t>(T) + 1);
  for (int t = 0; t <= T; ++t) {
    EqRatFunc acc(t <= a ? P[t] : MultiPoly(nv));
    for (int s = 0; s < t; ++s) {
      int j = t - s;
      if (j <= b && !Q[j].is_zero()) acc -= cs[s].mul_poly(Q[j]);
    }
    cs[t] = acc.div_poly(Q[0]);
    out.set(t + b - a, cs[t]);
  }
  return out;
}

}  // namespace qwc
