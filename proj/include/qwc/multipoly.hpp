#pragma once

/* Sparse multivariate polynomials over Q with a fixed indeterminate count.
   Terms live in a map ordered by descending graded-lex, so begin() is the
   leading term. Invariant: no zero coefficients are stored; all exponent
   vectors have length nvars. */

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace qwc {

using Expo = std::vector<int32_t>;

inline int expo_total(const Expo& e) {
  int t = 0;
  for (int32_t x : e) t += x;
  return t;
}

/* Strict "a comes before b" with descending graded-lex: higher total degree
   first, ties broken by lexicographic comparison (earlier variable more
   significant, larger exponent first). */
struct GrlexDesc {
  bool operator()(const Expo& a, const Expo& b) const {
    int ta = expo_total(a), tb = expo_total(b);
    if (ta != tb) return ta > tb;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

class MultiPoly {
 public:
  using TermMap = std::map<Expo, Rat, GrlexDesc>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rat& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[Expo(nvars, 0)] = c;
    return p;
  }

  static MultiPoly variable(int nvars, int i, const Rat& coeff = Rat(1)) {
    if (i < 0 || i >= nvars) throw std::out_of_range("variable index");
    MultiPoly p(nvars);
    if (coeff != 0) {
      Expo e(nvars, 0);
      e[i] = 1;
      p.terms_[e] = coeff;
    }
    return p;
  }

  /* sum_i coeffs[i] x_i + cst */
  static MultiPoly linear_form(const std::vector<Rat>& coeffs, const Rat& cst) {
    MultiPoly p(static_cast<int>(coeffs.size()));
    for (int i = 0; i < p.nvars_; ++i) {
      if (coeffs[i] != 0) {
        Expo e(p.nvars_, 0);
        e[i] = 1;
        p.terms_[e] = coeffs[i];
      }
    }
    if (cst != 0) p.terms_[Expo(p.nvars_, 0)] = cst;
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && expo_total(terms_.begin()->first) == 0);
  }

  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("not a constant polynomial");
    return terms_.begin()->second;
  }

  int total_degree() const {
    return terms_.empty() ? -1 : expo_total(terms_.begin()->first);
  }

  int degree_in(int v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[v]));
    return terms_.empty() ? -1 : d;
  }

  bool uses_var(int v) const {
    for (const auto& [e, c] : terms_)
      if (e[v] != 0) return true;
    return false;
  }

  const Expo& leading_expo() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.begin()->first;
  }
  const Rat& leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.begin()->second;
  }

  void add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_vars(b);
    MultiPoly r(a.nvars_);
    Expo e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly operator*(const Rat& s) const {
    MultiPoly r(nvars_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
    return r;
  }
  MultiPoly& operator*=(const Rat& s) { return *this = *this * s; }

  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  /* Deterministic total order, used when polynomials key maps. */
  bool operator<(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    GrlexDesc less;
    for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
      if (less(it->first, jt->first)) return true;
      if (less(jt->first, it->first)) return false;
      int c = cmp(it->second, jt->second);
      if (c != 0) return c < 0;
    }
    return it == terms_.end() && jt != o.terms_.end();
  }

  /* Exact division; nullopt when the divisor does not divide exactly. */
  std::optional<MultiPoly> divide_exact(const MultiPoly& g) const {
    check_vars(g);
    if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
    MultiPoly q(nvars_), r = *this;
    const Expo& ge = g.leading_expo();
    const Rat& gc = g.leading_coeff();
    Expo t(nvars_);
    while (!r.is_zero()) {
      const Expo& re = r.leading_expo();
      for (int i = 0; i < nvars_; ++i) {
        t[i] = re[i] - ge[i];
        if (t[i] < 0) return std::nullopt;
      }
      Rat tc = r.leading_coeff() / gc;
      q.add_term(t, tc);
      MultiPoly m(nvars_);
      m.terms_[t] = tc;
      r -= m * g;
    }
    return q;
  }

  /* x_i -> x_i + c_i. Used on the low-degree weight forms, so the binomial
     expansion never sees large exponents. */
  MultiPoly shift_vars(const std::vector<Rat>& c) const {
    if (static_cast<int>(c.size()) != nvars_)
      throw std::invalid_argument("shift vector size mismatch");
    MultiPoly r(nvars_);
    for (const auto& [e, coeff] : terms_) {
      MultiPoly term = MultiPoly::constant(nvars_, coeff);
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        MultiPoly base = MultiPoly::variable(nvars_, i);
        base.add_term(Expo(nvars_, 0), c[i]);
        for (int k = 0; k < e[i]; ++k) term *= base;
      }
      r += term;
    }
    return r;
  }

  /* x_i -> s x_i for the flagged variables. */
  MultiPoly scale_vars(const std::vector<bool>& mask, const Rat& s) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Rat f = c;
      for (int i = 0; i < nvars_; ++i)
        if (mask[i])
          for (int k = 0; k < e[i]; ++k) f *= s;
      r.add_term(e, f);
    }
    return r;
  }

  /* x_i -> x_{perm[i]}; perm must be a permutation of 0..nvars-1. */
  MultiPoly permute_vars(const std::vector<int>& perm) const {
    MultiPoly r(nvars_);
    Expo e2(nvars_);
    for (const auto& [e, c] : terms_) {
      std::fill(e2.begin(), e2.end(), 0);
      for (int i = 0; i < nvars_; ++i) e2[perm[i]] = e[i];
      r.add_term(e2, c);
    }
    return r;
  }

  /* Decompose as a polynomial in variable v: degree -> coefficient, with the
     v-exponent zeroed inside each coefficient. */
  std::map<int, MultiPoly> coeffs_in(int v) const {
    std::map<int, MultiPoly> out;
    for (const auto& [e, c] : terms_) {
      Expo e2 = e;
      int d = e2[v];
      e2[v] = 0;
      auto [it, fresh] = out.try_emplace(d, nvars_);
      it->second.add_term(e2, c);
    }
    return out;
  }

  /* Positive rational c with (*this)/c primitive: integer coefficients with
     gcd 1. Zero polynomial has content 1 by convention. */
  Rat content() const {
    if (terms_.empty()) return Rat(1);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
              c.get_num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
              c.get_den().get_mpz_t());
    }
    Rat r(num_gcd, den_lcm);
    r.canonicalize();
    if (r < 0) r = -r;
    return r;
  }

  /* Divide by +-content so coefficients are coprime integers and the leading
     coefficient is positive; returns the scalar removed. */
  Rat make_primitive() {
    if (terms_.empty()) return Rat(1);
    Rat c = content();
    if (leading_coeff() < 0) c = -c;
    for (auto& [e, v] : terms_) v /= c;
    return c;
  }

  bool is_homogeneous(const std::vector<bool>& mask, int* deg_out = nullptr) const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (int i = 0; i < nvars_; ++i)
        if (mask[i]) d += e[i];
      if (deg < 0)
        deg = d;
      else if (deg != d)
        return false;
    }
    if (deg_out) *deg_out = std::max(deg, 0);
    return true;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rat a = c;
      if (first) {
        if (a < 0) {
          s += "-";
          a = -a;
        }
      } else {
        s += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      }
      first = false;
      std::string mono;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        s += rat_str(a);
      } else if (a == 1) {
        s += mono;
      } else {
        s += rat_str(a) + "*" + mono;
      }
    }
    return s;
  }

 private:
  void check_vars(const MultiPoly& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("indeterminate count mismatch");
  }

  int nvars_;
  TermMap terms_;
};

/* Wire format for polynomials: one (exponent-vector, "num/den") pair per
   term, in the polynomial's own term order. Coefficients are exact decimal
   strings; consumers that need JSON map each pair to a two-element array. */
using SerializedTerms = std::vector<std::pair<Expo, std::string>>;

inline SerializedTerms serialize_terms(const MultiPoly& p) {
  SerializedTerms out;
  out.reserve(p.terms().size());
  for (const auto& [e, c] : p.terms()) out.emplace_back(e, rat_str(c));
  return out;
}

}  // namespace qwc
