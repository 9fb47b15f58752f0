#pragma once

/* Exact rational scalars backed by GMP. mpq_class arithmetic keeps results
   canonical (reduced, positive denominator); explicit num/den construction
   must call canonicalize, which rat() does. */

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qwc {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  Rat q;
  if (slash == std::string::npos) {
    q = Rat(s);
  } else {
    q = Rat(s);  // gmp accepts "p/q" directly
  }
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_integerq(const Rat& q) { return q.get_den() == 1; }

inline long to_long(const Rat& q) {
  if (!is_integerq(q) || !q.get_num().fits_slong_p())
    throw std::overflow_error("rational does not fit a long integer");
  return q.get_num().get_si();
}

inline Rat factorial(long n) {
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return Rat(f);
}

}  // namespace qwc
