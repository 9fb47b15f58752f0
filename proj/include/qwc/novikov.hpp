#pragma once

/* Novikov-graded truncated series: finitely many effective curve classes
   beta with theta-degree d(beta) <= D key the coefficients. The class table
   is closed under addition up to the degree bound, so convolution drops
   exactly the truncated tail. Every nonzero effective class must have
   d >= 1, which makes exp and log finite sums. */

#include <functional>
#include <memory>
#include <set>

#include "ratfunc.hpp"

namespace qwc {

struct CurveClass {
  std::vector<long> b;     /* class in Z^r, dual coordinates to the characters */
  long d = 0;              /* theta-degree */
  std::vector<long> dray;  /* pairing with each ray bundle */
};

inline bool operator==(const CurveClass& x, const CurveClass& y) {
  return x.b == y.b && x.d == y.d && x.dray == y.dray;
}

struct NovCtx {
  int r = 0;
  long D = 0;
  std::vector<CurveClass> classes;           /* sorted by (d, lex b); [0] is zero */
  std::map<std::vector<long>, int> index;

  int find(const std::vector<long>& b) const {
    auto it = index.find(b);
    return it == index.end() ? -1 : it->second;
  }

  /* Index of classes[i] + classes[j], or -1 when truncated away. */
  int add(int i, int j) const {
    std::vector<long> s = classes[i].b;
    for (size_t k = 0; k < s.size(); ++k) s[k] += classes[j].b[k];
    return find(s);
  }

  bool same(const NovCtx& o) const {
    return r == o.r && D == o.D && classes == o.classes;
  }

  /* All nonnegative integer combinations of the generators with degree at
     most D. Generators carry their own d and dray; both are additive. */
  static std::shared_ptr<const NovCtx> build(int r, long D,
                                             const std::vector<CurveClass>& gens) {
    for (const auto& g : gens) {
      if (g.d < 1)
        throw std::invalid_argument(
            "effective generator with non-positive theta-degree");
      if (static_cast<int>(g.b.size()) != r)
        throw std::invalid_argument("generator rank mismatch");
    }
    auto ctx = std::make_shared<NovCtx>();
    ctx->r = r;
    ctx->D = D;
    std::map<std::vector<long>, CurveClass> seen;
    CurveClass zero;
    zero.b.assign(r, 0);
    zero.d = 0;
    if (!gens.empty()) zero.dray.assign(gens[0].dray.size(), 0);
    seen[zero.b] = zero;
    std::vector<CurveClass> frontier{zero};
    while (!frontier.empty()) {
      std::vector<CurveClass> next;
      for (const auto& c : frontier) {
        for (const auto& g : gens) {
          CurveClass s;
          s.b = c.b;
          for (int k = 0; k < r; ++k) s.b[k] += g.b[k];
          s.d = c.d + g.d;
          if (s.d > D) continue;
          s.dray = c.dray;
          if (s.dray.empty()) s.dray = g.dray;
          else
            for (size_t k = 0; k < s.dray.size(); ++k) s.dray[k] += g.dray[k];
          if (seen.emplace(s.b, s).second) next.push_back(s);
        }
      }
      frontier = std::move(next);
    }
    for (const auto& [b, c] : seen) ctx->classes.push_back(c);
    std::sort(ctx->classes.begin(), ctx->classes.end(),
              [](const CurveClass& x, const CurveClass& y) {
                if (x.d != y.d) return x.d < y.d;
                return x.b < y.b;
              });
    for (size_t i = 0; i < ctx->classes.size(); ++i)
      ctx->index[ctx->classes[i].b] = static_cast<int>(i);
    return ctx;
  }
};

class NovikovSeries {
 public:
  NovikovSeries() : nvars_(0) {}
  NovikovSeries(std::shared_ptr<const NovCtx> ctx, int nvars)
      : ctx_(std::move(ctx)), nvars_(nvars) {}

  static NovikovSeries one(std::shared_ptr<const NovCtx> ctx, int nvars) {
    NovikovSeries s(std::move(ctx), nvars);
    s.set(0, EqRatFunc::rational(nvars, Rat(1)));
    return s;
  }

  const std::shared_ptr<const NovCtx>& ctx() const { return ctx_; }
  int nvars() const { return nvars_; }
  const std::map<int, EqRatFunc>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void set(int idx, const EqRatFunc& v) {
    if (idx < 0 || idx >= static_cast<int>(ctx_->classes.size()))
      throw std::out_of_range("curve class index");
    if (v.is_zero())
      c_.erase(idx);
    else
      c_[idx] = v;
  }

  EqRatFunc coeff(int idx) const {
    auto it = c_.find(idx);
    if (it != c_.end()) return it->second;
    return EqRatFunc(MultiPoly(nvars_));
  }

  EqRatFunc coeff(const std::vector<long>& b) const {
    int i = ctx_->find(b);
    if (i < 0) throw std::out_of_range("curve class not in context");
    return coeff(i);
  }

  NovikovSeries operator+(const NovikovSeries& o) const {
    check_ctx(o);
    NovikovSeries r = *this;
    for (const auto& [i, v] : o.c_) {
      auto it = r.c_.find(i);
      if (it == r.c_.end()) {
        r.c_[i] = v;
      } else {
        it->second += v;
        if (it->second.is_zero()) r.c_.erase(it);
      }
    }
    return r;
  }

  NovikovSeries operator-() const {
    NovikovSeries r = *this;
    for (auto& [i, v] : r.c_) v = -v;
    return r;
  }
  NovikovSeries operator-(const NovikovSeries& o) const { return *this + (-o); }

  NovikovSeries operator*(const NovikovSeries& o) const {
    check_ctx(o);
    NovikovSeries r(ctx_, nvars_);
    for (const auto& [i, vi] : c_)
      for (const auto& [j, vj] : o.c_) {
        int k = ctx_->add(i, j);
        if (k < 0) continue;
        EqRatFunc p = vi * vj;
        auto it = r.c_.find(k);
        if (it == r.c_.end()) {
          if (!p.is_zero()) r.c_[k] = p;
        } else {
          it->second += p;
          if (it->second.is_zero()) r.c_.erase(it);
        }
      }
    return r;
  }

  NovikovSeries operator*(const EqRatFunc& s) const {
    NovikovSeries r(ctx_, nvars_);
    for (const auto& [i, v] : c_) {
      EqRatFunc p = v * s;
      if (!p.is_zero()) r.c_[i] = p;
    }
    return r;
  }
  NovikovSeries operator*(const Rat& s) const {
    return *this * EqRatFunc::rational(nvars_, s);
  }

  /* Multiplicative inverse; the constant term must be nonzero. */
  NovikovSeries inverse() const {
    EqRatFunc u = coeff(0);
    if (u.is_zero())
      throw std::invalid_argument("series inverse needs a unit constant term");
    EqRatFunc uinv = u.inverse();
    NovikovSeries x = *this;
    x.c_.erase(0);
    x = x * uinv; /* now (1 + x)^{-1} shape */
    NovikovSeries r = one(ctx_, nvars_);
    NovikovSeries pw = one(ctx_, nvars_);
    for (long k = 1; k <= ctx_->D; ++k) {
      pw = pw * x;
      if (pw.is_zero()) break;
      r = (k % 2 == 1) ? r - pw : r + pw;
    }
    return r * uinv;
  }

  /* log of a series with constant term 1. */
  NovikovSeries log() const {
    if (!coeff(0).is_one())
      throw std::invalid_argument("series log needs constant term 1");
    NovikovSeries x = *this;
    x.c_.erase(0);
    NovikovSeries r(ctx_, nvars_);
    NovikovSeries pw = one(ctx_, nvars_);
    for (long k = 1; k <= ctx_->D; ++k) {
      pw = pw * x;
      if (pw.is_zero()) break;
      Rat c = rat(k % 2 == 1 ? 1 : -1, k);
      r = r + pw * c;
    }
    return r;
  }

  /* exp of a series with zero constant term. */
  NovikovSeries exp() const {
    if (!coeff(0).is_zero())
      throw std::invalid_argument("series exp needs zero constant term");
    NovikovSeries r = one(ctx_, nvars_);
    NovikovSeries pw = one(ctx_, nvars_);
    Rat kfact(1);
    for (long k = 1; k <= ctx_->D; ++k) {
      pw = pw * (*this);
      if (pw.is_zero()) break;
      kfact *= k;
      r = r + pw * (Rat(1) / kfact);
    }
    return r;
  }

  /* Drop coefficients with d(beta)*eps > 1. */
  NovikovSeries truncate_deg(const Rat& eps) const {
    return filter_classes([&](long d) { return Rat(d) * eps <= 1; });
  }

  /* Keep only coefficients whose theta-degree the predicate accepts. */
  template <class F>
  NovikovSeries filter_classes(F&& keep) const {
    NovikovSeries r(ctx_, nvars_);
    for (const auto& [i, v] : c_)
      if (keep(ctx_->classes[i].d)) r.c_[i] = v;
    return r;
  }

  bool operator==(const NovikovSeries& o) const {
    if (!ctx_->same(*o.ctx_)) return false;
    if (c_.size() != o.c_.size()) return false;
    for (const auto& [i, v] : c_) {
      auto it = o.c_.find(i);
      if (it == o.c_.end() || !(it->second == v)) return false;
    }
    return true;
  }
  bool operator!=(const NovikovSeries& o) const { return !(*this == o); }

 private:
  void check_ctx(const NovikovSeries& o) const {
    if (ctx_ != o.ctx_ && !ctx_->same(*o.ctx_))
      throw std::invalid_argument("mismatched effective-cone context");
  }

  std::shared_ptr<const NovCtx> ctx_;
  int nvars_;
  std::map<int, EqRatFunc> c_;
};

}  // namespace qwc
