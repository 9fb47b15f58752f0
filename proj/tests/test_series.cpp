#include <catch2/catch_amalgamated.hpp>

#include "qwc/novikov.hpp"
#include "qwc/zseries.hpp"

using namespace qwc;

namespace {

MultiPoly var(int n, int i) { return MultiPoly::variable(n, i); }
EqRatFunc rf1(int n, const Rat& c) { return EqRatFunc::rational(n, c); }

}  // namespace

/* Two variables: index 0 plays lambda, index 1 plays z. */
TEST_CASE("laurent expansion of a simple pole") {
  auto l = var(2, 0), z = var(2, 1);
  EqRatFunc f = rf1(2, Rat(1)) / EqRatFunc(z - l);
  ZSeries s = laurent_expand(f, 1, 3);
  REQUIRE(s.coeff(0, 2).is_zero());
  REQUIRE(s.coeff(1, 2) == rf1(2, Rat(1)));
  REQUIRE(s.coeff(2, 2) == EqRatFunc(l));
  REQUIRE(s.coeff(3, 2) == EqRatFunc(l * l));
}

TEST_CASE("laurent expansion keeps polynomial z powers") {
  auto l = var(2, 0), z = var(2, 1);
  EqRatFunc f(z * z + l);
  ZSeries s = laurent_expand(f, 1, 2);
  REQUIRE(s.coeff(-2, 2) == rf1(2, Rat(1)));
  REQUIRE(s.coeff(-1, 2).is_zero());
  REQUIRE(s.coeff(0, 2) == EqRatFunc(l));
}

TEST_CASE("laurent expansion of a double pole") {
  auto l = var(2, 0), z = var(2, 1);
  /* 1/(z(z+l)) = z^{-2} - l z^{-3} + l^2 z^{-4} - ... */
  EqRatFunc f = rf1(2, Rat(1)) / EqRatFunc(z * (z + l));
  ZSeries s = laurent_expand(f, 1, 4);
  REQUIRE(s.coeff(1, 2).is_zero());
  REQUIRE(s.coeff(2, 2) == rf1(2, Rat(1)));
  REQUIRE(s.coeff(3, 2) == -EqRatFunc(l));
  REQUIRE(s.coeff(4, 2) == EqRatFunc(l * l));
}

TEST_CASE("series multiplication tracks reliable truncation order") {
  auto l = var(2, 0), z = var(2, 1);
  EqRatFunc a = rf1(2, Rat(1)) / EqRatFunc(z - l);
  EqRatFunc b = rf1(2, Rat(1)) / EqRatFunc(z + l);
  ZSeries sa = laurent_expand(a, 1, 5);
  ZSeries sb = laurent_expand(b, 1, 5);
  ZSeries prod = sa * sb;
  ZSeries direct = laurent_expand(a * b, 1, prod.order());
  REQUIRE(prod == direct);
  /* both inputs start at 1/z, so the product is reliable past order 5 */
  REQUIRE(prod.order() >= 5);
}

TEST_CASE("series with positive z powers shorten the reliable order") {
  ZSeries s(1, 3);
  s.set(-1, rf1(2, Rat(1))); /* the z^{+1} term */
  s.set(0, rf1(2, Rat(1)));
  ZSeries t(1, 3);
  t.set(2, rf1(2, Rat(1)));
  ZSeries p = s * t;
  /* (z + 1) * z^{-2}: entries at k=1 and k=2, order shrinks to 3-1=2 */
  REQUIRE(p.order() == 2);
  REQUIRE(p.coeff(1, 2) == rf1(2, Rat(1)));
  REQUIRE(p.coeff(2, 2) == rf1(2, Rat(1)));
}

TEST_CASE("effective classes enumerate below the degree bound") {
  CurveClass g1{{1, 0}, 1, {1, 0}};
  CurveClass g2{{0, 1}, 2, {0, 1}};
  auto ctx = NovCtx::build(2, 4, {g1, g2});
  /* d = a + 2b <= 4: (0,0),(1,0),(2,0),(0,1),(3,0),(1,1),(4,0),(2,1),(0,2) */
  REQUIRE(ctx->classes.size() == 9);
  REQUIRE(ctx->classes[0].b == std::vector<long>{0, 0});
  REQUIRE(ctx->classes[0].d == 0);
  for (size_t i = 1; i < ctx->classes.size(); ++i) {
    REQUIRE(ctx->classes[i].d >= ctx->classes[i - 1].d);
    REQUIRE(ctx->classes[i].d <= 4);
  }
  int i10 = ctx->find({1, 0}), i01 = ctx->find({0, 1});
  REQUIRE(ctx->add(i10, i01) == ctx->find({1, 1}));
  REQUIRE(ctx->add(ctx->find({4, 0}), i10) == -1); /* degree 5 trimmed */
  REQUIRE_THROWS_AS(NovCtx::build(1, 3, {CurveClass{{1}, 0, {}}}),
                    std::invalid_argument);
}

TEST_CASE("novikov exponential of a single class matches factorials") {
  auto ctx = NovCtx::build(1, 6, {CurveClass{{1}, 1, {1}}});
  NovikovSeries x(ctx, 1);
  x.set(ctx->find({1}), rf1(1, Rat(1)));
  NovikovSeries e = x.exp();
  for (long k = 0; k <= 6; ++k) {
    Rat expect = Rat(1) / factorial(k);
    REQUIRE(e.coeff(std::vector<long>{k}) == rf1(1, expect));
  }
}

TEST_CASE("novikov log and exp invert each other") {
  auto ctx = NovCtx::build(2, 3, {CurveClass{{1, 0}, 1, {}},
                                  CurveClass{{0, 1}, 1, {}}});
  auto l = var(2, 0);
  NovikovSeries x(ctx, 2);
  x.set(ctx->find({1, 0}), EqRatFunc(l));
  x.set(ctx->find({0, 1}), rf1(2, rat(-1, 2)));
  x.set(ctx->find({1, 1}), rf1(2, Rat(1)) / EqRatFunc(l + MultiPoly::constant(2, Rat(1))));
  REQUIRE(x.exp().log() == x);

  NovikovSeries u = NovikovSeries::one(ctx, 2) + x;
  REQUIRE(u.log().exp() == u);
}

TEST_CASE("novikov inverse multiplies back to one") {
  auto ctx = NovCtx::build(1, 5, {CurveClass{{1}, 1, {}}});
  auto l = var(1, 0);
  NovikovSeries s = NovikovSeries::one(ctx, 1);
  s.set(ctx->find({1}), EqRatFunc(l));
  s.set(ctx->find({3}), rf1(1, Rat(7)));
  REQUIRE(s * s.inverse() == NovikovSeries::one(ctx, 1));

  NovikovSeries z(ctx, 1);
  REQUIRE_THROWS_AS(z.inverse(), std::invalid_argument);
}

TEST_CASE("degree truncation keeps only low classes") {
  auto ctx = NovCtx::build(1, 4, {CurveClass{{1}, 1, {}}});
  NovikovSeries s(ctx, 1);
  for (long k = 0; k <= 4; ++k) s.set(ctx->find({k}), rf1(1, Rat(1)));
  NovikovSeries t = s.truncate_deg(rat(1, 2)); /* keep d <= 2 */
  for (long k = 0; k <= 4; ++k)
    REQUIRE(t.coeff(std::vector<long>{k}).is_zero() == (k > 2));
}

TEST_CASE("operations across different contexts are rejected") {
  auto c1 = NovCtx::build(1, 3, {CurveClass{{1}, 1, {}}});
  auto c2 = NovCtx::build(1, 4, {CurveClass{{1}, 1, {}}});
  NovikovSeries a = NovikovSeries::one(c1, 1);
  NovikovSeries b = NovikovSeries::one(c2, 1);
  REQUIRE_THROWS_AS(a + b, std::invalid_argument);
  REQUIRE_THROWS_AS(a * b, std::invalid_argument);
}
