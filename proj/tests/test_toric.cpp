#include <catch2/catch_amalgamated.hpp>

#include "qwc/orbits.hpp"

using namespace qwc;

TEST_CASE("projective line: fixed points, weights, the one orbit") {
  auto P = GitPresentation::preset("p1");
  auto fps = fixed_points(P);
  REQUIRE(fps.pts.size() == 2);
  REQUIRE(fps.pts[0].comp == std::vector<int>{0});
  REQUIRE(fps.pts[0].sigma == std::vector<int>{1});
  auto l0 = P.lambda(0), l1 = P.lambda(1);
  REQUIRE(fps.pts[0].w[1] == l1 - l0);
  REQUIRE(fps.pts[1].w[0] == l0 - l1);
  REQUIRE(fps.pts[0].w[0].is_zero());
  REQUIRE(fps.pts[0].euler(P.nvars()) == l1 - l0);

  auto orbs = closed_orbits(P, fps);
  REQUIRE(orbs.size() == 1);
  REQUIRE(orbs[0].dray == std::vector<long>{1, 1});
  REQUIRE(orbs[0].b == std::vector<long>{1});
  REQUIRE(orbs[0].d == 1);
  REQUIRE(orbs[0].omega_at(fps, 0, true) == l1 - l0);
  REQUIRE(orbs[0].omega_at(fps, 1, true) == l0 - l1);
}

TEST_CASE("projective plane: three fixed points pairwise joined by lines") {
  auto P = GitPresentation::preset("p2");
  auto fps = fixed_points(P);
  REQUIRE(fps.pts.size() == 3);
  REQUIRE(fps.pts[0].sigma == std::vector<int>{1, 2});
  auto l0 = P.lambda(0), l1 = P.lambda(1), l2 = P.lambda(2);
  REQUIRE(fps.pts[0].euler(P.nvars()) == (l1 - l0) * (l2 - l0));

  auto orbs = closed_orbits(P, fps);
  REQUIRE(orbs.size() == 3);
  for (const auto& e : orbs) {
    REQUIRE(e.b == std::vector<long>{1});
    REQUIRE(e.dray == std::vector<long>{1, 1, 1});
  }
  auto cls = classify(P, fps, orbs);
  REQUIRE(cls.dim == 2);
  REQUIRE(cls.n_generators == 1);
  REQUIRE(cls.fano);
  REQUIRE(cls.semi_positive);
  REQUIRE(cls.orbit_classes_span);
}

TEST_CASE("hirzebruch surface with a -2 curve") {
  auto P = GitPresentation::preset("f2");
  auto fps = fixed_points(P);
  REQUIRE(fps.pts.size() == 4);
  REQUIRE(fps.pts[0].sigma == std::vector<int>{1, 3});
  REQUIRE(fps.pts[0].comp == std::vector<int>{0, 2});
  /* basis {m0, m2} is the identity, so the lift of ray 3 uses its raw column */
  auto l0 = P.lambda(0), l2 = P.lambda(2), l3 = P.lambda(3);
  REQUIRE(fps.pts[0].w[3] == l3 + l0 * Rat(2) - l2);

  auto orbs = closed_orbits(P, fps);
  REQUIRE(orbs.size() == 4);
  std::multiset<std::vector<long>> classes;
  for (const auto& e : orbs) classes.insert(e.b);
  REQUIRE(classes.count({0, 1}) == 2); /* two fibers */
  REQUIRE(classes.count({1, 0}) == 1); /* the -2 section */
  REQUIRE(classes.count({1, 2}) == 1); /* the +2 section */

  for (const auto& e : orbs)
    if (e.b == std::vector<long>{1, 0})
      REQUIRE(e.dray == std::vector<long>{1, 1, 0, -2});

  auto cls = classify(P, fps, orbs);
  REQUIRE(cls.semi_positive);
  REQUIRE_FALSE(cls.fano); /* the -2 curve has anticanonical degree 0 */
  REQUIRE(cls.orbit_classes_span);

  auto ctx = effective_classes(P, orbs, 2);
  REQUIRE(ctx->classes.size() == 6); /* 0; f, s; 2f, s+f, 2s */
}

TEST_CASE("local plane: three fiber-carrying fixed points, degree-zero canonical") {
  auto P = GitPresentation::preset("local-p2");
  auto fps = fixed_points(P);
  REQUIRE(fps.pts.size() == 3);
  for (const auto& fp : fps.pts) {
    REQUIRE(fp.sigma.size() == 3);
    REQUIRE(std::binary_search(fp.sigma.begin(), fp.sigma.end(), 3));
  }
  auto orbs = closed_orbits(P, fps);
  REQUIRE(orbs.size() == 3);
  for (const auto& e : orbs)
    REQUIRE(e.dray == std::vector<long>{1, 1, 1, -3});
  auto cls = classify(P, fps, orbs);
  REQUIRE(cls.semi_positive);
  REQUIRE_FALSE(cls.fano);
}

TEST_CASE("point target: one fixed point, explicit grading") {
  auto P = GitPresentation::preset("point");
  auto fps = fixed_points(P);
  REQUIRE(fps.pts.size() == 1);
  REQUIRE(fps.pts[0].sigma.empty());
  REQUIRE(fps.pts[0].euler(P.nvars()).is_constant());
  auto orbs = closed_orbits(P, fps);
  REQUIRE(orbs.empty());
  auto gens = effective_generators(P, orbs);
  REQUIRE(gens.size() == 1);
  REQUIRE(gens[0].d == 1);
  REQUIRE(gens[0].dray == std::vector<long>{1});
  auto cls = classify(P, fps, orbs);
  REQUIRE_FALSE(cls.orbit_classes_span);

  GitPresentation bare = P;
  bare.effective_generators.clear();
  REQUIRE_THROWS_AS(effective_generators(bare, orbs), std::invalid_argument);
}

TEST_CASE("degenerate geometries are rejected as invalid input") {
  /* Orbifold point, wall character, empty semistable locus: each violates a
     presentation invariant, so the rejection is invalid-input, not a
     supported-but-declined computation. */
  GitPresentation orb;
  orb.name = "weighted";
  orb.r = 1;
  orb.weights = {{1, 1, 2}};
  orb.theta = {1};
  REQUIRE_THROWS_AS(fixed_points(orb), std::invalid_argument);

  GitPresentation wall;
  wall.name = "wall";
  wall.r = 2;
  wall.weights = {{1, 0}, {0, 1}};
  wall.theta = {1, 0};
  REQUIRE_THROWS_AS(fixed_points(wall), std::invalid_argument);

  GitPresentation empty;
  empty.name = "empty";
  empty.r = 1;
  empty.weights = {{1, 1}};
  empty.theta = {-1};
  REQUIRE_THROWS_AS(fixed_points(empty), std::invalid_argument);

  GitPresentation flat;
  flat.name = "rank-deficient";
  flat.r = 2;
  flat.weights = {{1, 1, 1}, {2, 2, 2}};
  flat.theta = {1, 1};
  REQUIRE_THROWS_WITH(flat.validate(),
                      Catch::Matchers::ContainsSubstring("rank-deficient"));
}

TEST_CASE("malformed presentations raise actionable errors") {
  GitPresentation bad;
  bad.r = 1;
  bad.weights = {{1, 1}};
  bad.theta = {1, 2};
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);

  REQUIRE_THROWS_AS(GitPresentation::preset("p3"), std::invalid_argument);
  REQUIRE_THROWS_AS(GitPresentation::from_json_text("{oops"), std::invalid_argument);
  REQUIRE_THROWS_AS(GitPresentation::from_json_text("{\"torus_rank\": 1}"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      GitPresentation::from_json_text(
          "{\"torus_rank\": 1, \"weights\": [[1,1]], \"theta\": [1], "
          "\"lambda_shift\": [\"1/2\"]}"),
      std::invalid_argument); /* shift length must match coordinates */

  auto P = GitPresentation::from_json_text(
      "{\"name\": \"line\", \"torus_rank\": 1, \"weights\": [[1,1]], "
      "\"theta\": [1], \"lambda_shift\": [\"1/2\", -1]}");
  REQUIRE(P.rays() == 2);
  REQUIRE(P.lambda_shift[0] == rat(1, 2));
  REQUIRE(P.lambda_shift[1] == Rat(-1));
}

TEST_CASE("gauge shift moves weight lifts but not orbit combinatorics") {
  auto P = GitPresentation::preset("p1");
  P.lambda_shift = {rat(1, 2), Rat(-1)};
  auto fps = fixed_points(P);
  auto l0 = P.lambda(0), l1 = P.lambda(1);
  MultiPoly c = MultiPoly::constant(P.nvars(), rat(-3, 2));
  REQUIRE(fps.pts[0].w[1] == l1 - l0 + c);
  REQUIRE(fps.pts[0].w_geom[1] == l1 - l0);
  auto orbs = closed_orbits(P, fps);
  REQUIRE(orbs.size() == 1);
  REQUIRE(orbs[0].dray == std::vector<long>{1, 1});
}

TEST_CASE("document schema accepts r with optional n and ray labels") {
  auto P = GitPresentation::from_json_text(
      R"({"name":"pl","n":1,"r":1,"weights":[[1,1]],"theta":[1],
          "labels":["u","v"]})");
  REQUIRE(P.r == 1);
  REQUIRE(P.dim() == 1);
  REQUIRE(P.labels == std::vector<std::string>{"u", "v"});

  /* torus_rank stays accepted as an alias for r */
  auto Q = GitPresentation::from_json_text(
      R"({"torus_rank":1,"weights":[[1,1]],"theta":[1]})");
  REQUIRE(Q.r == 1);

  REQUIRE_THROWS_WITH(
      GitPresentation::from_json_text(
          R"({"n":3,"r":1,"weights":[[1,1]],"theta":[1]})"),
      Catch::Matchers::ContainsSubstring("declared dimension"));
  REQUIRE_THROWS_WITH(
      GitPresentation::from_json_text(
          R"({"r":1,"weights":[[1,1]],"theta":[1],"labels":["u"]})"),
      Catch::Matchers::ContainsSubstring("labels"));
  REQUIRE_THROWS_WITH(
      GitPresentation::from_json_text(R"({"weights":[[1,1]],"theta":[1]})"),
      Catch::Matchers::ContainsSubstring("'r'"));
}
