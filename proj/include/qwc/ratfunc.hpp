#pragma once

/* Rational functions in the equivariant parameters (and z, w) over Q.
   Canonical form: numerator and denominator coprime, denominator primitive
   with positive leading coefficient under graded-lex. Internally the
   denominator stays factored; localization only ever produces products of
   linear weight forms there, so cancellation is exact division by linear
   factors, with the general gcd as fallback for composite factors. Equality
   of two values is tested by subtraction, which agrees with the
   cross-multiplication test. */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gcd.hpp"
#include "multipoly.hpp"

namespace qwc {

class EqRatFunc {
 public:
  using FactorMap = std::map<MultiPoly, int>;

  EqRatFunc() : nvars_(0), num_(0) {}
  explicit EqRatFunc(MultiPoly num) : nvars_(num.nvars()), num_(std::move(num)) {}
  EqRatFunc(MultiPoly num, const MultiPoly& den)
      : nvars_(num.nvars()), num_(std::move(num)) {
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
    insert_factor(den, 1);
    normalize();
  }

  static EqRatFunc rational(int nvars, const Rat& c) {
    return EqRatFunc(MultiPoly::constant(nvars, c));
  }

  static EqRatFunc from_factors(MultiPoly num,
                                const std::vector<std::pair<MultiPoly, int>>& den) {
    EqRatFunc f(std::move(num));
    for (const auto& [p, m] : den) {
      if (p.is_zero()) throw std::invalid_argument("zero denominator factor");
      f.insert_factor(p, m);
    }
    f.normalize();
    return f;
  }

  int nvars() const { return nvars_; }
  const MultiPoly& num() const { return num_; }
  const FactorMap& den_factors() const { return den_; }

  MultiPoly den() const {
    MultiPoly d = MultiPoly::constant(nvars_, Rat(1));
    for (const auto& [f, m] : den_)
      for (int i = 0; i < m; ++i) d *= f;
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  Rat constant_value() const {
    if (!is_constant()) throw std::logic_error("not a constant value");
    return num_.constant_value();
  }
  bool is_one() const { return is_constant() && !num_.is_zero() && num_.constant_value() == 1; }

  EqRatFunc operator-() const {
    EqRatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend EqRatFunc operator*(const EqRatFunc& a, const EqRatFunc& b) {
    a.check_vars(b);
    if (a.is_zero() || b.is_zero()) return EqRatFunc(MultiPoly(a.nvars_));
    EqRatFunc r;
    r.nvars_ = a.nvars_;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    for (const auto& [f, m] : b.den_) r.den_[f] += m;
    r.normalize();
    return r;
  }

  friend EqRatFunc operator+(const EqRatFunc& a, const EqRatFunc& b) {
    a.check_vars(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    EqRatFunc r;
    r.nvars_ = a.nvars_;
    MultiPoly pa = MultiPoly::constant(a.nvars_, Rat(1));
    MultiPoly pb = pa;
    for (const auto& [f, m] : a.den_) r.den_[f] = m;
    for (const auto& [f, m] : b.den_) {
      auto it = r.den_.find(f);
      if (it == r.den_.end() || it->second < m) r.den_[f] = m;
    }
    for (const auto& [f, m] : r.den_) {
      int ma = 0, mb = 0;
      if (auto it = a.den_.find(f); it != a.den_.end()) ma = it->second;
      if (auto it = b.den_.find(f); it != b.den_.end()) mb = it->second;
      for (int i = 0; i < m - ma; ++i) pa *= f;
      for (int i = 0; i < m - mb; ++i) pb *= f;
    }
    r.num_ = a.num_ * pa + b.num_ * pb;
    r.normalize();
    return r;
  }

  friend EqRatFunc operator-(const EqRatFunc& a, const EqRatFunc& b) {
    return a + (-b);
  }

  EqRatFunc inverse() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero");
    EqRatFunc r;
    r.nvars_ = nvars_;
    r.num_ = MultiPoly::constant(nvars_, Rat(1));
    for (const auto& [f, m] : den_)
      for (int i = 0; i < m; ++i) r.num_ *= f;
    r.insert_factor(num_, 1);
    r.normalize();
    return r;
  }

  friend EqRatFunc operator/(const EqRatFunc& a, const EqRatFunc& b) {
    return a * b.inverse();
  }

  EqRatFunc& operator+=(const EqRatFunc& o) { return *this = *this + o; }
  EqRatFunc& operator-=(const EqRatFunc& o) { return *this = *this - o; }
  EqRatFunc& operator*=(const EqRatFunc& o) { return *this = *this * o; }
  EqRatFunc& operator/=(const EqRatFunc& o) { return *this = *this / o; }

  EqRatFunc operator*(const Rat& s) const {
    if (s == 0) return EqRatFunc(MultiPoly(nvars_));
    EqRatFunc r = *this;
    r.num_ *= s;
    return r;
  }
  EqRatFunc& operator*=(const Rat& s) { return *this = *this * s; }

  /* Multiply by a bare polynomial or divide by one, keeping factors. */
  EqRatFunc mul_poly(const MultiPoly& p) const {
    EqRatFunc r = *this;
    r.num_ *= p;
    r.normalize();
    return r;
  }
  EqRatFunc div_poly(const MultiPoly& p) const {
    if (p.is_zero()) throw std::invalid_argument("division by zero polynomial");
    EqRatFunc r = *this;
    r.insert_factor(p, 1);
    r.normalize();
    return r;
  }

  bool operator==(const EqRatFunc& o) const {
    if (nvars_ != o.nvars_) return false;
    if (num_ == o.num_ && den_ == o.den_) return true;
    return (*this - o).is_zero();
  }
  bool operator!=(const EqRatFunc& o) const { return !(*this == o); }

  /* Cross-multiplication equality, exposed so tests can compare it with the
     canonical-form comparison. */
  bool equal_cross(const EqRatFunc& o) const {
    return num_ * o.den() == o.num_ * den();
  }

  EqRatFunc shift_vars(const std::vector<Rat>& c) const {
    std::vector<std::pair<MultiPoly, int>> fs;
    fs.reserve(den_.size());
    for (const auto& [f, m] : den_) fs.emplace_back(f.shift_vars(c), m);
    return from_factors(num_.shift_vars(c), fs);
  }

  EqRatFunc scale_vars(const std::vector<bool>& mask, const Rat& s) const {
    std::vector<std::pair<MultiPoly, int>> fs;
    for (const auto& [f, m] : den_) fs.emplace_back(f.scale_vars(mask, s), m);
    return from_factors(num_.scale_vars(mask, s), fs);
  }

  EqRatFunc permute_vars(const std::vector<int>& perm) const {
    std::vector<std::pair<MultiPoly, int>> fs;
    for (const auto& [f, m] : den_) fs.emplace_back(f.permute_vars(perm), m);
    return from_factors(num_.permute_vars(perm), fs);
  }

  std::string str(const std::vector<std::string>& names) const {
    if (den_.empty()) return num_.str(names);
    std::string d;
    for (const auto& [f, m] : den_) {
      if (!d.empty()) d += "*";
      d += "(" + f.str(names) + ")";
      if (m > 1) d += "^" + std::to_string(m);
    }
    return "(" + num_.str(names) + ") / (" + d + ")";
  }

 private:
  void check_vars(const EqRatFunc& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("indeterminate count mismatch");
  }

  /* Factors are stored primitive with positive leading coefficient; scalar
     parts move into the numerator. Constant factors dissolve entirely. */
  void insert_factor(MultiPoly f, int mult) {
    if (mult <= 0) return;
    if (f.is_constant()) {
      Rat c = f.constant_value();
      for (int i = 0; i < mult; ++i) num_ *= Rat(1) / c;
      return;
    }
    Rat s = f.make_primitive();
    for (int i = 0; i < mult; ++i) num_ *= Rat(1) / s;
    den_[f] += mult;
  }

  void normalize() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    /* Composite factors: cancel through the general gcd, splitting the factor
       when only part of it divides the numerator. */
    for (auto it = den_.begin(); it != den_.end();) {
      if (it->first.total_degree() <= 1) {
        ++it;
        continue;
      }
      MultiPoly f = it->first;
      int m = it->second;
      bool changed = false;
      while (m > 0) {
        MultiPoly g = poly_gcd(num_, f);
        if (g.is_constant()) break;
        num_ = *num_.divide_exact(g);
        auto rest = f.divide_exact(g);
        if (!rest) throw std::logic_error("factor split failed");
        if (rest->is_constant()) {
          Rat c = rest->constant_value();
          num_ *= Rat(1) / c;
          --m;
        } else {
          /* one copy of f becomes f/g; requeue it */
          --m;
          MultiPoly nf = *rest;
          Rat s = nf.make_primitive();
          num_ *= Rat(1) / s;
          den_[nf] += 1;
        }
        changed = true;
      }
      if (m == 0) {
        it = den_.erase(it);
      } else {
        if (changed) {
          it->second = m;
        }
        ++it;
      }
    }
    /* Linear factors are irreducible, so trial division fully reduces. */
    for (auto it = den_.begin(); it != den_.end();) {
      if (it->first.total_degree() > 1) {
        ++it;
        continue;
      }
      int m = it->second;
      while (m > 0) {
        auto q = num_.divide_exact(it->first);
        if (!q) break;
        num_ = std::move(*q);
        --m;
      }
      if (m == 0)
        it = den_.erase(it);
      else {
        it->second = m;
        ++it;
      }
    }
  }

  int nvars_;
  MultiPoly num_;
  FactorMap den_;
};

/* Wire format for rational functions: numerator and (expanded) denominator
   as serialized term lists. The denominator is primitive with positive
   leading coefficient, so the pair is canonical for equal functions. */
struct SerializedRatFunc {
  SerializedTerms numerator;
  SerializedTerms denominator;
};

inline SerializedRatFunc serialize_terms(const EqRatFunc& f) {
  return {serialize_terms(f.num()), serialize_terms(f.den())};
}

}  // namespace qwc
