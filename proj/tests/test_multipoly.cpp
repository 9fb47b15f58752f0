#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qwc/gcd.hpp"
#include "qwc/multipoly.hpp"

using namespace qwc;

namespace {

MultiPoly var(int n, int i) { return MultiPoly::variable(n, i); }

MultiPoly random_poly(std::mt19937& rng, int nvars, int nterms, int maxdeg) {
  std::uniform_int_distribution<int> cd(-5, 5), ed(0, maxdeg);
  MultiPoly p(nvars);
  for (int t = 0; t < nterms; ++t) {
    Expo e(nvars, 0);
    for (int v = 0; v < nvars; ++v) e[v] = ed(rng);
    int c = cd(rng);
    if (c != 0) p.add_term(e, Rat(c));
  }
  return p;
}

}  // namespace

TEST_CASE("graded-lex term order puts highest total degree first") {
  MultiPoly p(2);
  p.add_term({2, 0}, Rat(1));   /* x^2 */
  p.add_term({0, 3}, Rat(1));   /* y^3 */
  p.add_term({1, 1}, Rat(1));   /* xy */
  REQUIRE(p.leading_expo() == Expo{0, 3});

  MultiPoly q(2);
  q.add_term({2, 1}, Rat(1));
  q.add_term({1, 2}, Rat(1));
  REQUIRE(q.leading_expo() == Expo{2, 1}); /* earlier variable wins ties */
}

TEST_CASE("ring arithmetic identities") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly a = random_poly(rng, 3, 4, 3);
    MultiPoly b = random_poly(rng, 3, 4, 3);
    MultiPoly c = random_poly(rng, 3, 4, 3);
    REQUIRE(a + b == b + a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * b == b * a);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a - a).is_zero());
    REQUIRE(a * MultiPoly::constant(3, Rat(1)) == a);
  }
}

TEST_CASE("exact division recovers cofactors and rejects non-divisors") {
  auto x = var(2, 0), y = var(2, 1);
  MultiPoly diff_sq = x * x - y * y;
  auto q = diff_sq.divide_exact(x - y);
  REQUIRE(q.has_value());
  REQUIRE(*q == x + y);

  REQUIRE_FALSE((x * x + y).divide_exact(x - y).has_value());
  REQUIRE_FALSE(x.divide_exact(x * x).has_value());

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly a = random_poly(rng, 2, 3, 2);
    MultiPoly b = random_poly(rng, 2, 3, 2);
    if (b.is_zero()) continue;
    auto r = (a * b).divide_exact(b);
    REQUIRE(r.has_value());
    REQUIRE(*r == a);
  }
}

TEST_CASE("variable shift is a ring homomorphism") {
  auto x = var(2, 0), y = var(2, 1);
  MultiPoly p = x * x;
  std::vector<Rat> c{Rat(3), Rat(0)};
  REQUIRE(p.shift_vars(c) == x * x + x * Rat(6) + MultiPoly::constant(2, Rat(9)));

  MultiPoly q = x * y + y;
  std::vector<Rat> c2{rat(1, 2), Rat(-1)};
  REQUIRE((p * q).shift_vars(c2) == p.shift_vars(c2) * q.shift_vars(c2));
  REQUIRE((p + q).shift_vars(c2) == p.shift_vars(c2) + q.shift_vars(c2));

  /* shifting back is the inverse */
  std::vector<Rat> neg{rat(-1, 2), Rat(1)};
  REQUIRE(q.shift_vars(c2).shift_vars(neg) == q);
}

TEST_CASE("content and primitive part") {
  auto x = var(2, 0), y = var(2, 1);
  MultiPoly p = x * Rat(4) + y * Rat(6);
  REQUIRE(p.content() == Rat(2));
  MultiPoly pp = p;
  Rat s = pp.make_primitive();
  REQUIRE(s == Rat(2));
  REQUIRE(pp == x * Rat(2) + y * Rat(3));

  /* primitive part has a positive leading coefficient */
  MultiPoly n = x * Rat(-2) - y * Rat(4);
  Rat sn = n.make_primitive();
  REQUIRE(sn == Rat(-2));
  REQUIRE(n == x + y * Rat(2));

  MultiPoly h = x * rat(1, 2) + y * rat(1, 3);
  Rat sh = h.make_primitive();
  REQUIRE(h == x * Rat(3) + y * Rat(2));
  REQUIRE(sh == rat(1, 6));
}

TEST_CASE("coefficient extraction in one variable") {
  auto x = var(2, 0), y = var(2, 1);
  MultiPoly p = x * x * y + x * Rat(2) + MultiPoly::constant(2, Rat(5));
  auto cs = p.coeffs_in(0);
  REQUIRE(cs.size() == 3);
  REQUIRE(cs[2] == y);
  REQUIRE(cs[1] == MultiPoly::constant(2, Rat(2)));
  REQUIRE(cs[0] == MultiPoly::constant(2, Rat(5)));
}

TEST_CASE("homogeneity detection") {
  auto x = var(3, 0), y = var(3, 1), z = var(3, 2);
  std::vector<bool> mask{true, true, false};
  int deg = -1;
  MultiPoly p = x * x + x * y; /* degree 2 in x,y throughout */
  REQUIRE(p.is_homogeneous(mask, &deg));
  REQUIRE(deg == 2);
  MultiPoly q = x * x * z + x * y; /* z ignored by the mask */
  REQUIRE(q.is_homogeneous(mask, &deg));
  REQUIRE(deg == 2);
  REQUIRE_FALSE((x + y * y).is_homogeneous(mask, &deg));
}

TEST_CASE("gcd of structured polynomials") {
  auto x = var(3, 0), y = var(3, 1), z = var(3, 2);
  MultiPoly g = x - y;
  MultiPoly a = g * (x + y);
  MultiPoly b = g * (x + y * Rat(2) + z);
  REQUIRE(poly_gcd(a, b) == g);

  /* scalar multiples of the same factor normalize to one primitive rep */
  REQUIRE(poly_gcd(g * Rat(4), g * Rat(-6)) == g);

  /* coprime pairs */
  MultiPoly one = MultiPoly::constant(3, Rat(1));
  REQUIRE(poly_gcd(x + y, x - y) == one);
  REQUIRE(poly_gcd(x * y, z) == one);
}

TEST_CASE("gcd on random products divides both inputs") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    MultiPoly g = random_poly(rng, 3, 3, 2);
    MultiPoly a = random_poly(rng, 3, 2, 2);
    MultiPoly b = random_poly(rng, 3, 2, 2);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    MultiPoly d = poly_gcd(g * a, g * b);
    REQUIRE((g * a).divide_exact(d).has_value());
    REQUIRE((g * b).divide_exact(d).has_value());
    /* the common factor g must divide the gcd */
    MultiPoly gp = g;
    gp.make_primitive();
    REQUIRE(d.divide_exact(gp).has_value());
  }
}

TEST_CASE("string rendering is readable") {
  auto x = var(2, 0), y = var(2, 1);
  MultiPoly p = x * x * Rat(3) - y * rat(1, 2) + MultiPoly::constant(2, Rat(4));
  REQUIRE(p.str({"a", "b"}) == "3*a^2 - 1/2*b + 4");
  REQUIRE(MultiPoly(2).str({"a", "b"}) == "0");
}
