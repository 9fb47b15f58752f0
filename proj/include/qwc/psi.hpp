#pragma once

// Descendant integrals on the genus-zero moduli of stable marked curves.
//
// psi_integral_recursive evaluates by the string-equation recursion alone
// (base case: three markings). psi_integral is the closed multinomial form.
// The two are independent derivations and the test suite pins them against
// each other over an exhaustive range.

#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace qwc {

// String-equation evaluator: recursion on the number of markings.
// Integral of psi_1^{a_1} ... psi_n^{a_n} over the moduli of genus-zero
// n-pointed stable curves. Requires n >= 3.
inline Rat psi_integral_recursive(std::vector<int> a) {
  const int n = static_cast<int>(a.size());
  if (n < 3) throw std::invalid_argument("psi integral needs at least 3 markings");
  long total = 0;
  for (int x : a) {
    if (x < 0) throw std::invalid_argument("psi exponent must be nonnegative");
    total += x;
  }
  if (total != n - 3) return Rat(0);  // dimension mismatch
  if (n == 3) return Rat(1);          // moduli is a point
  // total = n-3 < n, so a zero exponent exists; remove that marking.
  int j = 0;
  while (a[j] != 0) ++j;
  a.erase(a.begin() + j);
  Rat sum(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    std::vector<int> b = a;
    --b[i];
    sum += psi_integral_recursive(std::move(b));
  }
  return sum;
}

// Closed form: (n-3)! / (a_1! ... a_n!) when the exponents sum to n-3,
// zero otherwise. Requires n >= 3.
inline Rat psi_integral(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 3) throw std::invalid_argument("psi integral needs at least 3 markings");
  long total = 0;
  for (int x : a) {
    if (x < 0) throw std::invalid_argument("psi exponent must be nonnegative");
    total += x;
  }
  if (total != n - 3) return Rat(0);
  mpz_class num = 1;
  for (long k = 2; k <= n - 3; ++k) num *= k;
  mpz_class den = 1;
  for (int x : a)
    for (long k = 2; k <= x; ++k) den *= k;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace qwc
